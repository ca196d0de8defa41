#include "cohrank/named_states.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "cohrank/splitter.hpp"

namespace cohrank {

SqueezedVacuumParams::SqueezedVacuumParams(double mu_in, Complex nu_in)
    : mu(mu_in), nu(nu_in) {
    if (!(mu >= 1.0)) {
        throw ParseError("squeezing parameter mu must be >= 1");
    }
    if (std::abs(mu * mu - std::norm(nu) - 1.0) > 1e-12 * mu * mu) {
        throw ParseError("squeezing parameters must satisfy mu^2 - |nu|^2 = 1");
    }
}

SqueezedVacuumParams SqueezedVacuumParams::from_mu(double mu, double phase) {
    if (!(mu >= 1.0)) {
        throw ParseError("squeezing parameter mu must be >= 1");
    }
    const double mod = std::sqrt(std::max(mu * mu - 1.0, 0.0));
    return SqueezedVacuumParams(
        mu, Complex(mod * std::cos(phase), mod * std::sin(phase)));
}

SuperpositionState cat_state(Complex alpha, int sign, double merge_tol) {
    if (sign != 1 && sign != -1) {
        throw ParseError("cat sign must be +1 or -1");
    }
    if (sign == -1 && std::abs(alpha) <= merge_tol) {
        throw DegenerateStateError(
            "odd cat degenerates as alpha -> 0; refuse |alpha| <= merge_tol");
    }
    const double overlap = std::exp(-2.0 * std::norm(alpha));
    const double n = 1.0 / std::sqrt(2.0 * (1.0 + sign * overlap));
    std::vector<Term> terms = {
        {Complex(n, 0.0), {alpha}},
        {Complex(sign * n, 0.0), {-alpha}},
    };
    // An even cat below the merge radius is simply vacuum; canonicalization
    // takes care of it.
    return canonicalize(SuperpositionState(1, std::move(terms)), merge_tol);
}

SuperpositionState fock_difference_quotient(int n, double h,
                                            double rank_rel_tol) {
    if (n < 0) {
        throw ParseError("Fock index must be >= 0");
    }
    if (!(h > 0.0)) {
        throw ParseError("difference-quotient step must be positive");
    }
    if (n == 0) {
        return SuperpositionState(1, {{Complex(1.0, 0.0), {Complex(0.0, 0.0)}}});
    }

    // log |kappa_j| = log C(n,j) + (jh)^2/2 - log(sqrt(n!)) - n log h
    const double log_base =
        -0.5 * std::lgamma(static_cast<double>(n) + 1.0) -
        n * std::log(h);
    std::vector<Term> terms;
    terms.reserve(static_cast<std::size_t>(n) + 1);
    double mass = 0.0;
    for (int j = 0; j <= n; ++j) {
        const double log_binom =
            std::lgamma(static_cast<double>(n) + 1.0) -
            std::lgamma(static_cast<double>(j) + 1.0) -
            std::lgamma(static_cast<double>(n - j) + 1.0);
        const double point = j * h;
        const double log_mag = log_binom + 0.5 * point * point + log_base;
        if (log_mag > 700.0) {
            throw ConditioningError(
                "difference-quotient coefficients overflow double range");
        }
        const double sign = ((n - j) % 2 == 0) ? 1.0 : -1.0;
        const double kappa = sign * std::exp(log_mag);
        mass += std::abs(kappa);
        terms.push_back({Complex(kappa, 0.0), {Complex(point, 0.0)}});
    }
    // The target has norm ~1, so cancellation noise of order mass * eps
    // must stay below the rank-decision threshold.
    constexpr double eps = 2.220446049250313e-16;
    if (mass * eps > rank_rel_tol) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "difference quotient too ill-conditioned: coefficient "
                      "mass %.3e leaves noise above %.1e",
                      mass, rank_rel_tol);
        throw ConditioningError(buf);
    }
    return SuperpositionState(1, std::move(terms));
}

FockArray fock_exact(int n, int truncation) {
    if (n < 0) {
        throw ParseError("Fock index must be >= 0");
    }
    if (truncation <= n) {
        throw TruncationError("truncation must exceed the Fock index");
    }
    FockArray f({truncation});
    f[static_cast<std::size_t>(n)] = 1.0;
    return f;
}

FockArray fock_split_reference(int n, int truncation) {
    if (n < 0) {
        throw ParseError("Fock index must be >= 0");
    }
    if (truncation <= n) {
        throw TruncationError("truncation must exceed the Fock index");
    }
    FockArray out({truncation, truncation});
    for (int j = 0; j <= n; ++j) {
        const double log_coeff =
            0.5 * (std::lgamma(n + 1.0) - std::lgamma(j + 1.0) -
                   std::lgamma(n - j + 1.0)) -
            0.5 * n * std::numbers::ln2;
        out[static_cast<std::size_t>(j) * static_cast<std::size_t>(truncation) +
            static_cast<std::size_t>(n - j)] = std::exp(log_coeff);
    }
    return out;
}

FockArray squeezed_vacuum_fock(const SqueezedVacuumParams& p, int truncation,
                               double truncation_tol) {
    if (truncation < 2) {
        throw ShapeMismatchError(
            "squeezed vacuum needs an even-capable truncation >= 2");
    }
    FockArray f({truncation});
    Complex c = 1.0 / std::sqrt(p.mu);
    f[0] = c;
    int last_even = 0;
    for (int m = 1; 2 * m < truncation; ++m) {
        c *= (-p.nu / (2.0 * p.mu)) *
             std::sqrt(static_cast<double>(2 * m) *
                       static_cast<double>(2 * m - 1)) /
             static_cast<double>(m);
        f[static_cast<std::size_t>(2 * m)] = c;
        last_even = 2 * m;
    }
    // |c_{2m}|^2 / |c_{2m-2}|^2 = q (2m-1)/(2m) < q with q = |nu/mu|^2,
    // so the dropped weight is geometrically dominated.
    const double q = std::norm(p.nu) / (p.mu * p.mu);
    double tail = 0.0;
    if (q > 0.0) {
        tail = std::norm(f[static_cast<std::size_t>(last_even)]) * q / (1.0 - q);
    }
    f.set_tail_bound(tail);
    if (tail > truncation_tol) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "truncation %d inadequate for squeezed vacuum: tail "
                      "bound %.3e exceeds %.3e",
                      truncation, tail, truncation_tol);
        throw TruncationError(buf);
    }
    return f;
}

TwoCopyResult two_copy_experiment(Complex alpha) {
    if (std::abs(alpha) <= kDefaultMergeTol) {
        throw DegenerateStateError("two-copy experiment needs |alpha| > 0");
    }
    const SuperpositionState pair(
        1, {{Complex(1.0, 0.0), {alpha}}, {Complex(-1.0, 0.0), {-alpha}}});
    TwoCopyResult result{tensor_product(pair, pair),
                         tensor_product(pair, pair)};
    result.output = apply_splitter(balanced_bs(), result.input);
    return result;
}

namespace {

double next_double(std::mt19937_64& gen) {
    // 53-bit mantissa draw; uniform_real_distribution is not bit-stable
    // across standard libraries.
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

Complex draw_disk(std::mt19937_64& gen, double radius) {
    const double rho = radius * std::sqrt(next_double(gen));
    const double theta = 2.0 * std::numbers::pi * next_double(gen);
    return Complex(rho * std::cos(theta), rho * std::sin(theta));
}

} // namespace

SuperpositionState random_state(int r, std::uint64_t seed,
                                const RandomStateBounds& bounds, int modes) {
    if (r < 1) {
        throw ParseError("random state needs r >= 1 terms");
    }
    if (modes < 1) {
        throw ShapeMismatchError("random state needs modes >= 1");
    }
    if (!(bounds.radius > 0.0) || bounds.min_sep < 0.0) {
        throw ParseError("random state bounds must be positive");
    }

    std::mt19937_64 gen(seed);
    std::vector<Term> terms;
    terms.reserve(static_cast<std::size_t>(r));
    const long attempts_cap = 10000L * r;
    long attempts = 0;
    while (static_cast<int>(terms.size()) < r) {
        Term t;
        // Moduli in [0.1, 1] keep every term clear of the drop tolerance.
        const double mod = std::sqrt(0.01 + 0.99 * next_double(gen));
        const double phase = 2.0 * std::numbers::pi * next_double(gen);
        t.kappa = Complex(mod * std::cos(phase), mod * std::sin(phase));
        t.point.reserve(static_cast<std::size_t>(modes));
        for (int m = 0; m < modes; ++m) {
            t.point.push_back(draw_disk(gen, bounds.radius));
        }
        bool ok = true;
        for (const Term& other : terms) {
            if (point_distance(other.point, t.point) < bounds.min_sep) {
                ok = false;
                break;
            }
        }
        if (ok) {
            terms.push_back(std::move(t));
        } else if (++attempts > attempts_cap) {
            throw SamplingError(
                "could not place " + std::to_string(r) + " points with "
                "separation " + std::to_string(bounds.min_sep) +
                " in radius " + std::to_string(bounds.radius));
        }
    }
    return SuperpositionState(modes, std::move(terms));
}

} // namespace cohrank
