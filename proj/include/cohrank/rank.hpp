#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cohrank/fock.hpp"
#include "cohrank/splitter.hpp"
#include "cohrank/state.hpp"

namespace cohrank {

// Every threshold a rank decision depends on, in one place.
struct Tolerances {
    double merge_tol = kDefaultMergeTol;
    double drop_tol = kDefaultDropTol;
    double rank_rel_tol = 1e-8;       // sigma_k counts if sigma_k > tol * sigma_1
    double truncation_tol = kDefaultTruncationTol;

    void validate() const;            // throws ParseError on nonsense values
};

// Closed-form Vandermonde product over a point set, with the log-domain
// pass decision and (for small r) a direct-determinant cross-check.
struct VandermondeCertificate {
    Complex value = 0.0;              // prod_{i<j} (alpha_i - alpha_j), sorted order
    double log_modulus = 0.0;         // sum of log|alpha_i - alpha_j|; -inf if repeated
    double log_threshold = 0.0;       // C(r,2) * log(merge_tol)
    bool passed = false;
    std::optional<Complex> direct_determinant;  // PartialPivLU value, r <= 8
};

VandermondeCertificate vandermonde_certificate(std::vector<Complex> points,
                                               double merge_tol = kDefaultMergeTol);

// Side A of a bipartition: sorted, duplicate-free mode indices, proper and
// nonempty. Canonical enumeration keeps mode 0 on side A.
using Bipartition = std::vector<int>;

std::string bipartition_label(const Bipartition& side_a, int modes);
std::vector<Bipartition> enumerate_bipartitions(int modes);

// Number of coherent terms after canonicalization: the nonclassicality rank
// of the superposition.
int nonclassicality_rank(const SuperpositionState& s, const Tolerances& tol);

// Eigenvalues of the Gram matrix of the canonicalized state, descending.
std::vector<double> gram_eigenvalues(const SuperpositionState& s,
                                     const Tolerances& tol);

// Count of Gram eigenvalues above rank_rel_tol relative to the largest.
int gram_rank(const SuperpositionState& s, const Tolerances& tol);

// Normalized singular values (descending, sum of squares 1) of the array
// reshaped across the given bipartition. Throws TruncationError when the
// recorded tail bound exceeds truncation_tol.
std::vector<double> schmidt_spectrum(const FockArray& f,
                                     const Bipartition& side_a,
                                     const Tolerances& tol);

// Plain relative-threshold rank of a normalized spectrum.
int rank_of_spectrum(const std::vector<double>& sigma, const Tolerances& tol);

// Count only singular values whose weight also exceeds the truncation tail
// bound, so sub-adequate cutoffs cannot inflate the rank. Used by sweeps.
int effective_rank_of_spectrum(const std::vector<double>& sigma,
                               double tail_bound, const Tolerances& tol);

int schmidt_rank(const FockArray& f, const Bipartition& side_a,
                 const Tolerances& tol);

// Human-readable conditioning flags (near-coincident points and friends).
std::vector<std::string> conditioning_warnings(const SuperpositionState& s);

// Everything the analyze/split reports need about one multimode state.
struct RankReport {
    int nonclassicality = 0;
    int gram = 0;
    std::vector<double> gram_eigs;
    std::map<std::string, std::vector<double>> schmidt_spectra;
    std::map<std::string, int> schmidt_ranks;
    std::vector<VandermondeCertificate> per_mode_vandermonde;
    std::vector<int> truncation;
    double tail_bound = 0.0;
    bool ranks_all_equal = false;     // every bipartition rank == nonclassicality
    std::vector<std::string> warnings;
    Tolerances tolerances;
};

// Full workup of a canonical multimode state (modes >= 2): Gram spectrum,
// Schmidt data for every canonical bipartition, per-mode certificates.
// The truncation override replaces the per-mode cutoff policy when present.
RankReport multipartite_report(
    const SuperpositionState& s, const Tolerances& tol,
    const std::optional<std::vector<int>>& truncation = std::nullopt);

// The ordering R >= Schmidt rank for two-mode states.
struct BoundCheck {
    int nonclassicality = 0;
    int schmidt = 0;
    bool holds = false;
};

BoundCheck bound_check(const SuperpositionState& s, const Tolerances& tol);

} // namespace cohrank
