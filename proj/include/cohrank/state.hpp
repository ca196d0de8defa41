#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cohrank/errors.hpp"

namespace cohrank {

using Complex = std::complex<double>;

// A point in phase space: one coherent amplitude per mode.
using CoherentPoint = std::vector<Complex>;

inline constexpr double kDefaultMergeTol = 1e-10;
inline constexpr double kDefaultDropTol = 1e-12;

// One term kappa * |alpha_1> x ... x |alpha_M> of a finite superposition.
struct Term {
    Complex kappa;
    CoherentPoint point;
};

// Finite superposition of multimode coherent states. The representation is
// not forced canonical on construction; canonicalize() produces the sorted,
// merged, drop-filtered form the quantifiers expect.
class SuperpositionState {
public:
    SuperpositionState(int modes, std::vector<Term> terms);

    int modes() const { return modes_; }
    const std::vector<Term>& terms() const { return terms_; }
    int size() const { return static_cast<int>(terms_.size()); }

private:
    int modes_;
    std::vector<Term> terms_;
};

// Convex mixture of superposition states with matching mode counts.
class PureEnsemble {
public:
    struct Member {
        double weight;
        SuperpositionState state;
    };

    explicit PureEnsemble(std::vector<Member> members);

    int modes() const { return modes_; }
    const std::vector<Member>& members() const { return members_; }

private:
    int modes_;
    std::vector<Member> members_;
};

// <a|b> for single-mode coherent states,
// exp(-|a|^2/2 - |b|^2/2 + conj(a) * b).
Complex coherent_overlap(Complex a, Complex b);

// Product of per-mode overlaps for multimode points.
Complex point_overlap(const CoherentPoint& a, const CoherentPoint& b);

// Distance between points in the max-over-modes metric used for merging.
double point_distance(const CoherentPoint& a, const CoherentPoint& b);

// Strict lexicographic order on (re, im) per mode; the canonical term order.
bool point_less(const CoherentPoint& a, const CoherentPoint& b);

// Hermitian positive-definite matrix G_ij = <alpha_i|alpha_j> over the terms
// of s (distinct points assumed; duplicates make it singular, not invalid).
Eigen::MatrixXcd gram_matrix(const SuperpositionState& s);

// sqrt(kappa^dag G kappa). Throws DegenerateStateError when the value is
// indistinguishable from rounding noise relative to the coefficient mass.
double state_norm(const SuperpositionState& s);

// Same state with coefficients divided by the norm.
SuperpositionState normalized(const SuperpositionState& s);

// Sort terms, merge points closer than merge_tol (max-norm over modes),
// drop merged coefficients with |kappa| <= drop_tol. Throws EmptyStateError
// if nothing survives.
SuperpositionState canonicalize(const SuperpositionState& s,
                                double merge_tol = kDefaultMergeTol,
                                double drop_tol = kDefaultDropTol);

// Smallest pairwise point distance (max-norm); +inf for a single term.
double min_pairwise_distance(const SuperpositionState& s);

// Kronecker product: (M_a + M_b)-mode state with size_a * size_b terms.
SuperpositionState tensor_product(const SuperpositionState& a,
                                  const SuperpositionState& b);

} // namespace cohrank
