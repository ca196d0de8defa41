#include "cohrank/splitter.hpp"

#include <cmath>
#include <numbers>

namespace cohrank {

SplitterUnitary::SplitterUnitary(Eigen::MatrixXcd entries, double defect)
    : entries_(std::move(entries)), defect_(defect) {}

SplitterUnitary SplitterUnitary::from_matrix(const Eigen::MatrixXcd& entries,
                                             double tol) {
    if (entries.rows() < 1 || entries.rows() != entries.cols()) {
        throw ShapeMismatchError("splitter matrix must be square and nonempty");
    }
    if (!entries.allFinite()) {
        throw ConditioningError("splitter matrix has non-finite entries");
    }
    const Eigen::MatrixXcd residual =
        entries.adjoint() * entries -
        Eigen::MatrixXcd::Identity(entries.rows(), entries.cols());
    const double defect = residual.cwiseAbs().maxCoeff();
    if (defect > tol) {
        throw NonUnitaryError("matrix is not unitary: max |T^H T - I| = " +
                              std::to_string(defect));
    }
    return SplitterUnitary(entries, defect);
}

SplitterUnitary balanced_bs() {
    const double s = 1.0 / std::numbers::sqrt2;
    Eigen::MatrixXcd t(2, 2);
    t << s, -s,
         s,  s;
    return SplitterUnitary::from_matrix(t);
}

SplitterUnitary dft_splitter(int n) {
    if (n < 2) {
        throw ShapeMismatchError("DFT splitter needs n >= 2 ports");
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::MatrixXcd t(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const double phase =
                2.0 * std::numbers::pi * static_cast<double>(j) *
                static_cast<double>(k) / static_cast<double>(n);
            t(j, k) = scale * Complex(std::cos(phase), std::sin(phase));
        }
    }
    // Rounding in cos/sin leaves a defect ~n * eps; validate against a
    // slightly relaxed tolerance and keep the measured value.
    return SplitterUnitary::from_matrix(t, 1e-12 * std::max(1, n));
}

SuperpositionState apply_splitter(const SplitterUnitary& t,
                                  const SuperpositionState& s,
                                  double merge_tol, double drop_tol) {
    if (s.modes() != t.size()) {
        throw ShapeMismatchError(
            "state has " + std::to_string(s.modes()) + " modes, splitter has " +
            std::to_string(t.size()) + " ports");
    }
    std::vector<Term> terms = s.terms();
    Eigen::VectorXcd v(t.size());
    for (Term& term : terms) {
        for (int m = 0; m < t.size(); ++m) {
            v(m) = term.point[static_cast<std::size_t>(m)];
        }
        const Eigen::VectorXcd w = t.entries() * v;
        for (int m = 0; m < t.size(); ++m) {
            term.point[static_cast<std::size_t>(m)] = w(m);
        }
    }
    return canonicalize(SuperpositionState(s.modes(), std::move(terms)),
                        merge_tol, drop_tol);
}

SuperpositionState extend_with_vacuum(const SuperpositionState& s,
                                      int total_modes) {
    if (total_modes < s.modes()) {
        throw ShapeMismatchError("cannot extend a state to fewer modes");
    }
    if (total_modes == s.modes()) return s;
    std::vector<Term> terms = s.terms();
    for (Term& t : terms) {
        t.point.resize(static_cast<std::size_t>(total_modes), Complex(0.0, 0.0));
    }
    return SuperpositionState(total_modes, std::move(terms));
}

FockArray split_single_mode_fock(const FockArray& f) {
    if (f.modes() != 1) {
        throw ShapeMismatchError("Fock-side split expects a single-mode array");
    }
    const int k = f.truncation()[0];
    FockArray out({k, k});
    // |n, 0> -> sum_j sqrt(C(n,j)) 2^{-n/2} |j, n-j|; the input phase of
    // |n> multiplies the whole antidiagonal n = j + j'.
    const double ln2 = std::numbers::ln2;
    for (int j = 0; j < k; ++j) {
        for (int jp = 0; j + jp < k; ++jp) {
            const int n = j + jp;
            const Complex cn = f[static_cast<std::size_t>(n)];
            if (cn == Complex(0.0, 0.0)) continue;
            const double log_coeff =
                0.5 * (std::lgamma(n + 1.0) - std::lgamma(j + 1.0) -
                       std::lgamma(jp + 1.0)) -
                0.5 * n * ln2;
            out[static_cast<std::size_t>(j) * static_cast<std::size_t>(k) +
                static_cast<std::size_t>(jp)] = cn * std::exp(log_coeff);
        }
    }
    // The truncated square misses the antidiagonals n >= k, whose total
    // weight is exactly the input tail: the split is norm-preserving
    // antidiagonal by antidiagonal.
    out.set_tail_bound(f.tail_bound());
    return out;
}

} // namespace cohrank
