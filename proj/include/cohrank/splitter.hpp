#pragma once

#include <Eigen/Dense>

#include "cohrank/fock.hpp"
#include "cohrank/state.hpp"

namespace cohrank {

inline constexpr double kUnitarityTol = 1e-12;

// A passive linear-optical network: an n x n unitary acting on the vector
// of coherent amplitudes. Construction always verifies unitarity.
class SplitterUnitary {
public:
    static SplitterUnitary from_matrix(const Eigen::MatrixXcd& entries,
                                       double tol = kUnitarityTol);

    int size() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const { return entries_; }

    // max |T^dag T - I| entrywise, recorded at construction.
    double unitarity_defect() const { return defect_; }

private:
    SplitterUnitary(Eigen::MatrixXcd entries, double defect);

    Eigen::MatrixXcd entries_;
    double defect_;
};

// Balanced 50:50 beam splitter,
//   T = [[1/sqrt2, -1/sqrt2], [1/sqrt2, 1/sqrt2]],
// mapping (alpha, beta) to ((alpha - beta)/sqrt2, (alpha + beta)/sqrt2).
SplitterUnitary balanced_bs();

// n-port discrete Fourier splitter, T_jk = omega^{jk}/sqrt(n) with
// omega = exp(2 pi i / n), indices zero-based.
SplitterUnitary dft_splitter(int n);

// Point action: every term's amplitude vector is multiplied by T. Term
// count and coefficients are unchanged; the result is re-canonicalized
// (a unitary cannot merge distinct points, but it can produce -0.0
// coordinates that would break the sorted order otherwise).
SuperpositionState apply_splitter(const SplitterUnitary& t,
                                  const SuperpositionState& s,
                                  double merge_tol = kDefaultMergeTol,
                                  double drop_tol = kDefaultDropTol);

// Append vacuum modes on the right until the state has total_modes modes.
SuperpositionState extend_with_vacuum(const SuperpositionState& s,
                                      int total_modes);

// Balanced-splitter image of a single-mode Fock array with the second input
// port in vacuum: |n,0> maps to sum_j sqrt(C(n,j)) 2^{-n/2} |j, n-j> up to
// the input's phase convention. Works directly on coefficients, so it also
// covers states with no finite coherent expansion (squeezed vacuum).
FockArray split_single_mode_fock(const FockArray& f);

} // namespace cohrank
