#include "cohrank/fock.hpp"

#include <cmath>
#include <numeric>

namespace cohrank {

FockArray::FockArray(std::vector<int> truncation)
    : truncation_(std::move(truncation)) {
    if (truncation_.empty()) {
        throw ShapeMismatchError("Fock array needs at least one mode");
    }
    std::size_t total = 1;
    for (int k : truncation_) {
        if (k < 1) {
            throw ShapeMismatchError("Fock truncation must be >= 1 per mode");
        }
        if (total > (std::size_t(1) << 28) / static_cast<std::size_t>(k)) {
            throw TruncationError("Fock array would exceed 2^28 entries");
        }
        total *= static_cast<std::size_t>(k);
    }
    data_.assign(total, Complex(0.0, 0.0));
}

std::size_t FockArray::flat_index(const std::vector<int>& occupation) const {
    if (occupation.size() != truncation_.size()) {
        throw ShapeMismatchError("occupation index has wrong mode count");
    }
    std::size_t flat = 0;
    for (std::size_t m = 0; m < truncation_.size(); ++m) {
        if (occupation[m] < 0 || occupation[m] >= truncation_[m]) {
            throw ShapeMismatchError("occupation index out of range");
        }
        flat = flat * static_cast<std::size_t>(truncation_[m]) +
               static_cast<std::size_t>(occupation[m]);
    }
    return flat;
}

Complex FockArray::at(const std::vector<int>& occupation) const {
    return data_[flat_index(occupation)];
}

double poisson_upper_tail(double lambda, int nmin) {
    if (lambda < 0.0) {
        throw ParseError("Poisson tail needs lambda >= 0");
    }
    if (nmin <= 0) return 1.0;
    if (lambda == 0.0) return 0.0;
    // First term in log space, then the forward recurrence
    // t_{k+1} = t_k * lambda / (k + 1).
    double term = std::exp(-lambda + nmin * std::log(lambda) -
                           std::lgamma(static_cast<double>(nmin) + 1.0));
    double sum = 0.0;
    for (int k = nmin; k < nmin + 100000; ++k) {
        sum += term;
        term *= lambda / (k + 1);
        if (term < sum * 1e-18 + 1e-300) break;
    }
    return std::min(sum, 1.0);
}

std::vector<int> default_truncation(const SuperpositionState& s) {
    std::vector<int> cut(static_cast<std::size_t>(s.modes()), 1);
    for (int m = 0; m < s.modes(); ++m) {
        double a_max = 0.0;
        for (const Term& t : s.terms()) {
            a_max = std::max(a_max, std::abs(t.point[static_cast<std::size_t>(m)]));
        }
        cut[static_cast<std::size_t>(m)] = static_cast<int>(
            std::ceil(a_max * a_max + 6.0 * a_max + 12.0));
    }
    return cut;
}

std::vector<Complex> coherent_fock_coefficients(Complex alpha, int nmax) {
    if (nmax < 1) {
        throw ShapeMismatchError("coherent expansion needs nmax >= 1");
    }
    const double lambda = std::norm(alpha);
    // exp(-lambda/2) underflows around lambda ~ 1400 and every later
    // recurrence step would silently stay zero.
    if (lambda > 1400.0) {
        throw ConditioningError(
            "coherent amplitude too large for double-precision expansion "
            "(|alpha|^2 = " + std::to_string(lambda) + ")");
    }
    std::vector<Complex> c(static_cast<std::size_t>(nmax));
    c[0] = std::exp(-0.5 * lambda);
    for (int n = 1; n < nmax; ++n) {
        c[static_cast<std::size_t>(n)] =
            c[static_cast<std::size_t>(n - 1)] * alpha /
            std::sqrt(static_cast<double>(n));
    }
    return c;
}

FockArray to_fock(const SuperpositionState& s,
                  const std::vector<int>& truncation) {
    if (static_cast<int>(truncation.size()) != s.modes()) {
        throw ShapeMismatchError("truncation vector has wrong mode count");
    }
    FockArray out(truncation);

    double tail_mass = 0.0;
    std::vector<Complex> buffer;
    std::vector<Complex> next;
    for (const Term& t : s.terms()) {
        // Outer product over modes, folded one mode at a time.
        buffer.assign(1, t.kappa);
        double term_tail = 0.0;
        for (int m = 0; m < s.modes(); ++m) {
            const int k = truncation[static_cast<std::size_t>(m)];
            const Complex alpha = t.point[static_cast<std::size_t>(m)];
            const std::vector<Complex> c = coherent_fock_coefficients(alpha, k);
            term_tail += poisson_upper_tail(std::norm(alpha), k);
            next.assign(buffer.size() * static_cast<std::size_t>(k), 0.0);
            for (std::size_t i = 0; i < buffer.size(); ++i) {
                for (int n = 0; n < k; ++n) {
                    next[i * static_cast<std::size_t>(k) +
                         static_cast<std::size_t>(n)] =
                        buffer[i] * c[static_cast<std::size_t>(n)];
                }
            }
            buffer.swap(next);
        }
        for (std::size_t i = 0; i < buffer.size(); ++i) out[i] += buffer[i];
        tail_mass += std::abs(t.kappa) * std::sqrt(term_tail);
    }
    out.set_tail_bound(tail_mass * tail_mass);
    return out;
}

FockArray to_fock(const SuperpositionState& s) {
    return to_fock(s, default_truncation(s));
}

Complex fock_inner(const FockArray& a, const FockArray& b) {
    if (a.truncation() != b.truncation()) {
        throw ShapeMismatchError("Fock inner product needs identical shapes");
    }
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

double fock_norm(const FockArray& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += std::norm(f[i]);
    return std::sqrt(acc);
}

} // namespace cohrank
