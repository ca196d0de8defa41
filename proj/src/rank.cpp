#include "cohrank/rank.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace cohrank {

void Tolerances::validate() const {
    if (!(merge_tol > 0.0) || !(drop_tol > 0.0) || !(truncation_tol > 0.0)) {
        throw ParseError("tolerances must be positive");
    }
    if (!(rank_rel_tol > 0.0) || rank_rel_tol >= 1.0) {
        throw ParseError("rank tolerance must lie in (0, 1)");
    }
}

VandermondeCertificate vandermonde_certificate(std::vector<Complex> points,
                                               double merge_tol) {
    std::sort(points.begin(), points.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    const int r = static_cast<int>(points.size());
    VandermondeCertificate cert;
    cert.value = 1.0;
    cert.log_modulus = 0.0;
    cert.log_threshold = 0.0;
    if (r < 2) {
        cert.passed = r == 1;
        if (r == 1) cert.direct_determinant = 1.0;
        return cert;
    }

    const double pairs = 0.5 * r * (r - 1);
    cert.log_threshold = pairs * std::log(merge_tol);
    for (int i = 0; i < r; ++i) {
        for (int j = i + 1; j < r; ++j) {
            const Complex d = points[static_cast<std::size_t>(i)] -
                              points[static_cast<std::size_t>(j)];
            cert.value *= d;
            cert.log_modulus += std::log(std::abs(d));
        }
    }
    cert.passed = cert.log_modulus > cert.log_threshold;

    if (r <= 8) {
        // Cross-check against the actual determinant of V_jn = alpha_j^n,
        // which carries an extra (-1)^C(r,2) relative to the product above.
        Eigen::MatrixXcd v(r, r);
        for (int j = 0; j < r; ++j) {
            Complex p = 1.0;
            for (int n = 0; n < r; ++n) {
                v(j, n) = p;
                p *= points[static_cast<std::size_t>(j)];
            }
        }
        cert.direct_determinant = v.determinant();
    }
    return cert;
}

std::string bipartition_label(const Bipartition& side_a, int modes) {
    std::vector<bool> in_a(static_cast<std::size_t>(modes), false);
    for (int m : side_a) in_a[static_cast<std::size_t>(m)] = true;
    const char* sep = modes > 10 ? "," : "";
    std::string label;
    bool first = true;
    for (int m : side_a) {
        if (!first) label += sep;
        label += std::to_string(m);
        first = false;
    }
    label += '|';
    first = true;
    for (int m = 0; m < modes; ++m) {
        if (in_a[static_cast<std::size_t>(m)]) continue;
        if (!first) label += sep;
        label += std::to_string(m);
        first = false;
    }
    return label;
}

std::vector<Bipartition> enumerate_bipartitions(int modes) {
    if (modes < 2) {
        throw ShapeMismatchError("bipartitions need at least two modes");
    }
    std::vector<Bipartition> out;
    if (modes <= 10) {
        // All proper cuts, one per complement pair, mode 0 kept on side A.
        const unsigned total = 1u << modes;
        for (unsigned mask = 1; mask < total - 1; ++mask) {
            if (!(mask & 1u)) continue;
            Bipartition side;
            for (int m = 0; m < modes; ++m) {
                if (mask & (1u << m)) side.push_back(m);
            }
            if (static_cast<int>(side.size()) == modes) continue;
            out.push_back(std::move(side));
        }
    } else {
        for (int m = 0; m < modes; ++m) out.push_back({m});
    }
    return out;
}

int nonclassicality_rank(const SuperpositionState& s, const Tolerances& tol) {
    tol.validate();
    return canonicalize(s, tol.merge_tol, tol.drop_tol).size();
}

std::vector<double> gram_eigenvalues(const SuperpositionState& s,
                                     const Tolerances& tol) {
    tol.validate();
    const SuperpositionState canonical =
        canonicalize(s, tol.merge_tol, tol.drop_tol);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        gram_matrix(canonical), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error("Gram eigendecomposition failed to converge");
    }
    std::vector<double> eigs(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + canonical.size());
    std::sort(eigs.rbegin(), eigs.rend());
    return eigs;
}

int gram_rank(const SuperpositionState& s, const Tolerances& tol) {
    const std::vector<double> eigs = gram_eigenvalues(s, tol);
    const double top = eigs.front();
    if (!(top > 0.0)) return 0;
    int rank = 0;
    for (double e : eigs) {
        if (e > tol.rank_rel_tol * top) ++rank;
    }
    return rank;
}

namespace {

void validate_bipartition(const Bipartition& side_a, int modes) {
    if (side_a.empty() || static_cast<int>(side_a.size()) >= modes) {
        throw ShapeMismatchError("bipartition side must be proper and nonempty");
    }
    int prev = -1;
    for (int m : side_a) {
        if (m <= prev || m >= modes) {
            throw ShapeMismatchError(
                "bipartition side must be sorted, unique, in range");
        }
        prev = m;
    }
}

} // namespace

std::vector<double> schmidt_spectrum(const FockArray& f,
                                     const Bipartition& side_a,
                                     const Tolerances& tol) {
    tol.validate();
    validate_bipartition(side_a, f.modes());
    if (f.tail_bound() > tol.truncation_tol) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "truncation inadequate: tail bound %.3e exceeds %.3e",
                      f.tail_bound(), tol.truncation_tol);
        throw TruncationError(buf);
    }

    const int modes = f.modes();
    std::vector<bool> in_a(static_cast<std::size_t>(modes), false);
    for (int m : side_a) in_a[static_cast<std::size_t>(m)] = true;

    std::size_t rows = 1;
    std::size_t cols = 1;
    for (int m = 0; m < modes; ++m) {
        const std::size_t k =
            static_cast<std::size_t>(f.truncation()[static_cast<std::size_t>(m)]);
        (in_a[static_cast<std::size_t>(m)] ? rows : cols) *= k;
    }

    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(
        static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    std::vector<std::size_t> digit(static_cast<std::size_t>(modes));
    for (std::size_t flat = 0; flat < f.size(); ++flat) {
        std::size_t rest = flat;
        for (int m = modes - 1; m >= 0; --m) {
            const std::size_t k = static_cast<std::size_t>(
                f.truncation()[static_cast<std::size_t>(m)]);
            digit[static_cast<std::size_t>(m)] = rest % k;
            rest /= k;
        }
        std::size_t row = 0;
        std::size_t col = 0;
        for (int m = 0; m < modes; ++m) {
            const std::size_t k = static_cast<std::size_t>(
                f.truncation()[static_cast<std::size_t>(m)]);
            if (in_a[static_cast<std::size_t>(m)]) {
                row = row * k + digit[static_cast<std::size_t>(m)];
            } else {
                col = col * k + digit[static_cast<std::size_t>(m)];
            }
        }
        mat(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
            f[flat];
    }

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(mat);
    std::vector<double> sigma(svd.singularValues().data(),
                              svd.singularValues().data() +
                                  svd.singularValues().size());
    double weight = 0.0;
    for (double s : sigma) weight += s * s;
    if (!(weight > 0.0)) {
        throw DegenerateStateError("Fock array is numerically zero");
    }
    const double scale = 1.0 / std::sqrt(weight);
    for (double& s : sigma) s *= scale;
    return sigma;
}

int rank_of_spectrum(const std::vector<double>& sigma, const Tolerances& tol) {
    if (sigma.empty() || !(sigma.front() > 0.0)) return 0;
    int rank = 0;
    for (double s : sigma) {
        if (s > tol.rank_rel_tol * sigma.front()) ++rank;
    }
    return rank;
}

int effective_rank_of_spectrum(const std::vector<double>& sigma,
                               double tail_bound, const Tolerances& tol) {
    if (sigma.empty() || !(sigma.front() > 0.0)) return 0;
    int rank = 0;
    for (double s : sigma) {
        if (s > tol.rank_rel_tol * sigma.front() && s * s > tail_bound) ++rank;
    }
    return rank;
}

int schmidt_rank(const FockArray& f, const Bipartition& side_a,
                 const Tolerances& tol) {
    return rank_of_spectrum(schmidt_spectrum(f, side_a, tol), tol);
}

std::vector<std::string> conditioning_warnings(const SuperpositionState& s) {
    std::vector<std::string> warnings;
    const double d = min_pairwise_distance(s);
    if (d < 1e-4) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "ill-conditioned: minimum point separation %.3e is below "
                      "1e-4; rank decisions may be unstable",
                      d);
        warnings.emplace_back(buf);
    }
    return warnings;
}

RankReport multipartite_report(const SuperpositionState& s,
                               const Tolerances& tol,
                               const std::optional<std::vector<int>>& truncation) {
    tol.validate();
    if (s.modes() < 2) {
        throw ShapeMismatchError("multipartite report needs at least two modes");
    }
    const SuperpositionState canonical =
        normalized(canonicalize(s, tol.merge_tol, tol.drop_tol));

    RankReport report;
    report.tolerances = tol;
    report.nonclassicality = canonical.size();
    report.gram_eigs = gram_eigenvalues(canonical, tol);
    {
        const double top = report.gram_eigs.front();
        report.gram = 0;
        for (double e : report.gram_eigs) {
            if (top > 0.0 && e > tol.rank_rel_tol * top) ++report.gram;
        }
    }

    report.truncation = truncation ? *truncation : default_truncation(canonical);
    const FockArray f = to_fock(canonical, report.truncation);
    report.tail_bound = f.tail_bound();

    report.ranks_all_equal = true;
    for (const Bipartition& side : enumerate_bipartitions(canonical.modes())) {
        const std::string label = bipartition_label(side, canonical.modes());
        std::vector<double> sigma = schmidt_spectrum(f, side, tol);
        const int rank = rank_of_spectrum(sigma, tol);
        report.schmidt_spectra.emplace(label, std::move(sigma));
        report.schmidt_ranks.emplace(label, rank);
        if (rank != report.nonclassicality) report.ranks_all_equal = false;
    }

    for (int m = 0; m < canonical.modes(); ++m) {
        std::vector<Complex> column;
        column.reserve(static_cast<std::size_t>(canonical.size()));
        for (const Term& t : canonical.terms()) {
            column.push_back(t.point[static_cast<std::size_t>(m)]);
        }
        report.per_mode_vandermonde.push_back(
            vandermonde_certificate(std::move(column), tol.merge_tol));
    }

    report.warnings = conditioning_warnings(canonical);
    return report;
}

BoundCheck bound_check(const SuperpositionState& s, const Tolerances& tol) {
    tol.validate();
    if (s.modes() != 2) {
        throw ShapeMismatchError("bound check is defined for two-mode states");
    }
    const SuperpositionState canonical =
        normalized(canonicalize(s, tol.merge_tol, tol.drop_tol));
    BoundCheck check;
    check.nonclassicality = canonical.size();
    const FockArray f = to_fock(canonical);
    check.schmidt = schmidt_rank(f, {0}, tol);
    check.holds = check.nonclassicality >= check.schmidt;
    return check;
}

} // namespace cohrank
