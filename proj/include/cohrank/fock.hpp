#pragma once

#include <cstddef>
#include <vector>

#include "cohrank/state.hpp"

namespace cohrank {

inline constexpr double kDefaultTruncationTol = 1e-9;

// Dense multimode Fock-basis coefficient array, row-major with mode 0
// slowest. Carries the rigorous bound on the weight lost to truncation so
// downstream rank decisions can be checked against it.
class FockArray {
public:
    explicit FockArray(std::vector<int> truncation);

    int modes() const { return static_cast<int>(truncation_.size()); }
    const std::vector<int>& truncation() const { return truncation_; }
    std::size_t size() const { return data_.size(); }

    Complex& operator[](std::size_t flat) { return data_[flat]; }
    const Complex& operator[](std::size_t flat) const { return data_[flat]; }
    const std::vector<Complex>& coefficients() const { return data_; }

    // Flat offset of a multi-index; bounds-checked.
    std::size_t flat_index(const std::vector<int>& occupation) const;
    Complex at(const std::vector<int>& occupation) const;

    double tail_bound() const { return tail_bound_; }
    void set_tail_bound(double b) { tail_bound_ = b; }

private:
    std::vector<int> truncation_;
    std::vector<Complex> data_;
    double tail_bound_ = 0.0;
};

// Upper tail sum_{n >= nmin} e^{-lambda} lambda^n / n!.
double poisson_upper_tail(double lambda, int nmin);

// Per-mode cutoff policy: ceil(A^2 + 6A + 12) with A the largest coherent
// amplitude modulus appearing in that mode (six Poisson sigmas past the
// mean keeps the tail below ~1e-9 for A <= 3).
std::vector<int> default_truncation(const SuperpositionState& s);

// <n|alpha> for n = 0..nmax-1 via the stable recurrence
// c_0 = e^{-|alpha|^2/2}, c_{n+1} = c_n * alpha / sqrt(n+1).
std::vector<Complex> coherent_fock_coefficients(Complex alpha, int nmax);

// Expand a superposition into the truncated Fock basis. The recorded tail
// bound is (sum_i |kappa_i| sqrt(tail_i))^2 with tail_i the summed Poisson
// tails of term i over all modes.
FockArray to_fock(const SuperpositionState& s,
                  const std::vector<int>& truncation);
FockArray to_fock(const SuperpositionState& s);

// <a|b> on identically shaped arrays; reshaping is the caller's problem.
Complex fock_inner(const FockArray& a, const FockArray& b);

// sqrt(<f|f>).
double fock_norm(const FockArray& f);

} // namespace cohrank
