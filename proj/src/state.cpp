#include "cohrank/state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cohrank {

namespace {

bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

} // namespace

SuperpositionState::SuperpositionState(int modes, std::vector<Term> terms)
    : modes_(modes), terms_(std::move(terms)) {
    if (modes_ < 1) {
        throw ShapeMismatchError("state needs at least one mode, got " +
                                 std::to_string(modes_));
    }
    if (terms_.empty()) {
        throw EmptyStateError("state needs at least one term");
    }
    for (const Term& t : terms_) {
        if (static_cast<int>(t.point.size()) != modes_) {
            throw ShapeMismatchError(
                "term has " + std::to_string(t.point.size()) +
                " amplitudes in a " + std::to_string(modes_) + "-mode state");
        }
        if (!is_finite(t.kappa)) {
            throw ConditioningError("non-finite coefficient in state");
        }
        for (Complex a : t.point) {
            if (!is_finite(a)) {
                throw ConditioningError("non-finite amplitude in state");
            }
        }
    }
}

PureEnsemble::PureEnsemble(std::vector<Member> members)
    : modes_(0), members_(std::move(members)) {
    if (members_.empty()) {
        throw EmptyStateError("ensemble needs at least one member");
    }
    modes_ = members_.front().state.modes();
    double total = 0.0;
    for (const Member& m : members_) {
        if (m.state.modes() != modes_) {
            throw ShapeMismatchError("ensemble members must share the mode count");
        }
        if (!(m.weight > 0.0) || m.weight > 1.0) {
            throw ParseError("ensemble weights must lie in (0, 1]");
        }
        total += m.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw ParseError("ensemble weights must sum to 1 (got " +
                         std::to_string(total) + ")");
    }
}

Complex coherent_overlap(Complex a, Complex b) {
    const double ea = a.real() * a.real() + a.imag() * a.imag();
    const double eb = b.real() * b.real() + b.imag() * b.imag();
    return std::exp(-0.5 * ea - 0.5 * eb + std::conj(a) * b);
}

Complex point_overlap(const CoherentPoint& a, const CoherentPoint& b) {
    if (a.size() != b.size()) {
        throw ShapeMismatchError("overlap of points with different mode counts");
    }
    // One exp over the accumulated exponent keeps the product stable for
    // many modes.
    Complex exponent = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) {
        const double ea = std::norm(a[m]);
        const double eb = std::norm(b[m]);
        exponent += -0.5 * ea - 0.5 * eb + std::conj(a[m]) * b[m];
    }
    return std::exp(exponent);
}

double point_distance(const CoherentPoint& a, const CoherentPoint& b) {
    if (a.size() != b.size()) {
        throw ShapeMismatchError("distance of points with different mode counts");
    }
    double d = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) {
        d = std::max(d, std::abs(a[m] - b[m]));
    }
    return d;
}

bool point_less(const CoherentPoint& a, const CoherentPoint& b) {
    for (std::size_t m = 0; m < a.size() && m < b.size(); ++m) {
        if (a[m].real() != b[m].real()) return a[m].real() < b[m].real();
        if (a[m].imag() != b[m].imag()) return a[m].imag() < b[m].imag();
    }
    return a.size() < b.size();
}

Eigen::MatrixXcd gram_matrix(const SuperpositionState& s) {
    const int r = s.size();
    Eigen::MatrixXcd g(r, r);
    for (int i = 0; i < r; ++i) {
        g(i, i) = 1.0;
        for (int j = i + 1; j < r; ++j) {
            const Complex v =
                point_overlap(s.terms()[i].point, s.terms()[j].point);
            g(i, j) = v;
            g(j, i) = std::conj(v);
        }
    }
    return g;
}

double state_norm(const SuperpositionState& s) {
    const int r = s.size();
    Eigen::VectorXcd kappa(r);
    for (int i = 0; i < r; ++i) kappa(i) = s.terms()[i].kappa;
    const Eigen::MatrixXcd g = gram_matrix(s);
    const double norm_sq = (kappa.adjoint() * g * kappa)(0, 0).real();
    const double mass = kappa.squaredNorm();
    // Below ~1e-16 relative the value is rounding noise, not a norm.
    if (norm_sq <= 1e-16 * mass) {
        throw DegenerateStateError(
            "state norm vanishes at rounding level (norm^2 = " +
            std::to_string(norm_sq) + ")");
    }
    return std::sqrt(norm_sq);
}

SuperpositionState normalized(const SuperpositionState& s) {
    const double n = state_norm(s);
    std::vector<Term> terms = s.terms();
    for (Term& t : terms) t.kappa /= n;
    return SuperpositionState(s.modes(), std::move(terms));
}

SuperpositionState canonicalize(const SuperpositionState& s, double merge_tol,
                                double drop_tol) {
    std::vector<Term> sorted = s.terms();
    std::sort(sorted.begin(), sorted.end(),
              [](const Term& a, const Term& b) {
                  return point_less(a.point, b.point);
              });

    // Greedy clustering against the first-seen representative. Sorting
    // first makes the representative choice order-independent.
    std::vector<Term> merged;
    for (const Term& t : sorted) {
        bool absorbed = false;
        for (Term& rep : merged) {
            if (point_distance(rep.point, t.point) <= merge_tol) {
                rep.kappa += t.kappa;
                absorbed = true;
                break;
            }
        }
        if (!absorbed) merged.push_back(t);
    }

    std::vector<Term> kept;
    for (const Term& t : merged) {
        if (std::abs(t.kappa) > drop_tol) kept.push_back(t);
    }
    if (kept.empty()) {
        throw EmptyStateError(
            "all terms merged or dropped during canonicalization");
    }
    return SuperpositionState(s.modes(), std::move(kept));
}

double min_pairwise_distance(const SuperpositionState& s) {
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < s.size(); ++i) {
        for (int j = i + 1; j < s.size(); ++j) {
            d = std::min(d, point_distance(s.terms()[i].point,
                                           s.terms()[j].point));
        }
    }
    return d;
}

SuperpositionState tensor_product(const SuperpositionState& a,
                                  const SuperpositionState& b) {
    std::vector<Term> terms;
    terms.reserve(static_cast<std::size_t>(a.size()) * b.size());
    for (const Term& ta : a.terms()) {
        for (const Term& tb : b.terms()) {
            Term t;
            t.kappa = ta.kappa * tb.kappa;
            t.point = ta.point;
            t.point.insert(t.point.end(), tb.point.begin(), tb.point.end());
            terms.push_back(std::move(t));
        }
    }
    return SuperpositionState(a.modes() + b.modes(), std::move(terms));
}

} // namespace cohrank
