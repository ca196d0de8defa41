#pragma once

#include <cstdint>

#include "cohrank/fock.hpp"
#include "cohrank/state.hpp"

namespace cohrank {

// Squeezing in the (mu, nu) parametrization, mu^2 - |nu|^2 = 1.
struct SqueezedVacuumParams {
    double mu;
    Complex nu;

    SqueezedVacuumParams(double mu, Complex nu);   // validates the constraint
    static SqueezedVacuumParams from_mu(double mu, double phase = 0.0);
};

// Normalized even (sign = +1) or odd (sign = -1) cat state at amplitude
// alpha. Odd cats degenerate as alpha -> 0; below merge_tol they are refused.
SuperpositionState cat_state(Complex alpha, int sign,
                             double merge_tol = kDefaultMergeTol);

// Difference-quotient approximant of |n> on the points {0, h, ..., nh}:
// kappa_j = (-1)^{n-j} C(n,j) e^{(jh)^2/2} / (sqrt(n!) h^n). Refuses
// parameter pairs whose cancellation exceeds double precision (coefficient
// mass times machine epsilon above rank_rel_tol).
SuperpositionState fock_difference_quotient(int n, double h,
                                            double rank_rel_tol = 1e-8);

// |n> as a Fock array (single mode, cutoff must exceed n).
FockArray fock_exact(int n, int truncation);

// Exact balanced-splitter image of |n,0>:
// sum_j sqrt(C(n,j)) 2^{-n/2} |j, n-j>.
FockArray fock_split_reference(int n, int truncation);

// Squeezed vacuum coefficients via the even recurrence
// c_0 = mu^{-1/2}, c_{2m} = c_{2m-2} * (-nu/(2mu)) * sqrt((2m)(2m-1)) / m,
// with a geometric tail bound recorded on the array. The bound must stay
// below truncation_tol unless the caller disables the gate.
FockArray squeezed_vacuum_fock(const SqueezedVacuumParams& p, int truncation,
                               double truncation_tol = kDefaultTruncationTol);

// Two odd-pair copies interfered on a balanced splitter: nonclassicality
// rank 4 input whose output Schmidt rank is only 2.
struct TwoCopyResult {
    SuperpositionState input;
    SuperpositionState output;
};

TwoCopyResult two_copy_experiment(Complex alpha);

// Sampling window for random superpositions.
struct RandomStateBounds {
    double radius = 2.0;    // points uniform in this disk, per mode
    double min_sep = 0.1;   // pairwise max-norm separation floor
};

// r-term random state with seed-stable, platform-stable draws. Coefficient
// moduli live in [0.1, 1] so no sampled term can fall under the drop
// tolerance.
SuperpositionState random_state(int r, std::uint64_t seed,
                                const RandomStateBounds& bounds = {},
                                int modes = 1);

} // namespace cohrank
