#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "cohrank/named_states.hpp"
#include "cohrank/rank.hpp"
#include "cohrank/splitter.hpp"
#include "oracles.hpp"

using cohrank::Complex;
using cohrank::FockArray;
using cohrank::SuperpositionState;
using cohrank::Tolerances;

namespace {

// |<n|psi>| for a normalized single-mode state, via the Fock expansion.
// Renormalizing by the truncated vector keeps ill-scaled superposition
// weights from leaking cancellation noise through the state norm.
double fock_fidelity(const SuperpositionState& s, int n, int cutoff) {
    const FockArray f =
        cohrank::to_fock(cohrank::normalized(s), {cutoff});
    return std::abs(cohrank::fock_inner(cohrank::fock_exact(n, cutoff), f)) /
           cohrank::fock_norm(f);
}

// The same fidelity from the test-side series oracle, no library Fock code.
double oracle_fidelity(const SuperpositionState& s, int n, int cutoff) {
    std::vector<Complex> psi(static_cast<std::size_t>(cutoff), 0.0);
    for (const cohrank::Term& t : s.terms()) {
        const std::vector<Complex> c =
            oracle::coherent_vector(t.point[0], cutoff);
        for (int k = 0; k < cutoff; ++k) {
            psi[static_cast<std::size_t>(k)] +=
                t.kappa * c[static_cast<std::size_t>(k)];
        }
    }
    double norm_sq = 0.0;
    for (const Complex& v : psi) norm_sq += std::norm(v);
    return std::abs(psi[static_cast<std::size_t>(n)]) / std::sqrt(norm_sq);
}

} // namespace

TEST_CASE("cat states") {
    const SuperpositionState odd = cohrank::cat_state(Complex(1.0, 0.0), -1);
    CHECK(odd.size() == 2);
    CHECK(cohrank::state_norm(odd) == doctest::Approx(1.0).epsilon(1e-12));

    // Even cats approach vacuum as alpha -> 0.
    CHECK(fock_fidelity(cohrank::cat_state(Complex(0.05, 0.0), 1), 0, 13) >=
          0.999);
    const SuperpositionState tiny_even =
        cohrank::cat_state(Complex(1e-12, 0.0), 1);
    CHECK(tiny_even.size() == 1);
    CHECK(fock_fidelity(tiny_even, 0, 13) >= 1.0 - 1e-12);

    // Odd cats approach |1> instead.
    CHECK(fock_fidelity(cohrank::cat_state(Complex(0.01, 0.0), -1), 1, 13) >=
          0.999);

    CHECK_THROWS_AS(cohrank::cat_state(Complex(1e-12, 0.0), -1),
                    cohrank::DegenerateStateError);
    CHECK_THROWS_AS(cohrank::cat_state(Complex(1.0, 0.0), 0),
                    cohrank::ParseError);
}

TEST_CASE("difference quotient basics") {
    const SuperpositionState vac = cohrank::fock_difference_quotient(0, 0.3);
    CHECK(vac.size() == 1);
    CHECK(vac.terms()[0].kappa == Complex(1.0, 0.0));
    CHECK(vac.terms()[0].point[0] == Complex(0.0, 0.0));

    const SuperpositionState one = cohrank::fock_difference_quotient(1, 0.01);
    CHECK(one.size() == 2);
    CHECK(fock_fidelity(one, 1, 12) >= 1.0 - 1e-4);

    const SuperpositionState three = cohrank::fock_difference_quotient(3, 0.05);
    CHECK(three.size() == 4);
    const Tolerances tol;
    CHECK(cohrank::nonclassicality_rank(three, tol) == 4);

    CHECK_THROWS_AS(cohrank::fock_difference_quotient(1, 0.0),
                    cohrank::ParseError);
    CHECK_THROWS_AS(cohrank::fock_difference_quotient(-1, 0.1),
                    cohrank::ParseError);
}

TEST_CASE("difference quotient fidelity matches the series oracle") {
    const SuperpositionState three = cohrank::fock_difference_quotient(3, 0.05);
    const double lib = fock_fidelity(three, 3, 16);
    const double ind = oracle_fidelity(three, 3, 16);
    CHECK(std::abs(lib - ind) < 1e-12);
    // Regression pin for the value both routes agree on.
    CHECK(lib == doctest::Approx(0.98884140379113).epsilon(1e-10));
}

TEST_CASE("difference quotient refuses hopeless cancellation") {
    CHECK_THROWS_AS(cohrank::fock_difference_quotient(6, 0.05),
                    cohrank::ConditioningError);
    CHECK_THROWS_AS(cohrank::fock_difference_quotient(9, 0.05),
                    cohrank::ConditioningError);
    // The sanctioned working point stays admissible.
    CHECK_NOTHROW(cohrank::fock_difference_quotient(5, 0.05));
}

TEST_CASE("difference quotient converges at second order") {
    for (int n : {1, 3}) {
        const double defect_h =
            1.0 - fock_fidelity(cohrank::fock_difference_quotient(n, 0.05), n, 16);
        const double defect_2h =
            1.0 - fock_fidelity(cohrank::fock_difference_quotient(n, 0.10), n, 16);
        const double ratio = defect_2h / defect_h;
        CAPTURE(n);
        CHECK(ratio > 3.2);
        CHECK(ratio < 4.8);
    }
}

TEST_CASE("fock_exact is an orthonormal family") {
    for (int n = 0; n < 5; ++n) {
        for (int m = 0; m < 5; ++m) {
            const Complex ip = cohrank::fock_inner(cohrank::fock_exact(n, 6),
                                                   cohrank::fock_exact(m, 6));
            CHECK(ip == Complex(n == m ? 1.0 : 0.0, 0.0));
        }
    }
    CHECK_THROWS_AS(cohrank::fock_exact(3, 3), cohrank::TruncationError);
    CHECK_THROWS_AS(cohrank::fock_exact(-1, 5), cohrank::ParseError);
}

TEST_CASE("fock_split_reference matches the binomial amplitudes") {
    const FockArray n0 = cohrank::fock_split_reference(0, 4);
    CHECK(n0.at({0, 0}) == Complex(1.0, 0.0));
    CHECK(cohrank::fock_norm(n0) == doctest::Approx(1.0).epsilon(1e-15));

    const FockArray bell = cohrank::fock_split_reference(1, 4);
    CHECK(std::abs(bell.at({0, 1}) - Complex(1.0 / std::numbers::sqrt2, 0.0)) <
          1e-15);
    CHECK(std::abs(bell.at({1, 0}) - Complex(1.0 / std::numbers::sqrt2, 0.0)) <
          1e-15);
    CHECK(bell.at({0, 0}) == Complex(0.0, 0.0));

    const FockArray n2 = cohrank::fock_split_reference(2, 4);
    CHECK(std::abs(n2.at({0, 2}) - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(n2.at({1, 1}) - Complex(1.0 / std::numbers::sqrt2, 0.0)) <
          1e-15);
    CHECK(std::abs(n2.at({2, 0}) - Complex(0.5, 0.0)) < 1e-15);

    CHECK_THROWS_AS(cohrank::fock_split_reference(4, 4),
                    cohrank::TruncationError);
}

TEST_CASE("split of a Fock approximant lands near the binomial reference") {
    const int cutoff = 12;
    for (const auto& [n, h] : std::vector<std::pair<int, double>>{
             {1, 0.02}, {2, 0.05}}) {
        const SuperpositionState dq = cohrank::normalized(
            cohrank::fock_difference_quotient(n, h));
        const double defect = 1.0 - fock_fidelity(dq, n, cutoff);

        const SuperpositionState out = cohrank::apply_splitter(
            cohrank::balanced_bs(), cohrank::extend_with_vacuum(dq, 2));
        const FockArray f = cohrank::to_fock(out, {cutoff, cutoff});
        const FockArray ref = cohrank::fock_split_reference(n, cutoff);
        const double fidelity =
            std::abs(cohrank::fock_inner(ref, f)) / cohrank::fock_norm(f);
        CAPTURE(n);
        CHECK(fidelity >= 1.0 - 10.0 * defect);
    }
}

TEST_CASE("squeezed vacuum parameters validate the hyperbolic constraint") {
    CHECK_THROWS_AS(cohrank::SqueezedVacuumParams::from_mu(0.9),
                    cohrank::ParseError);
    CHECK_THROWS_AS(cohrank::SqueezedVacuumParams(1.2, Complex(0.9, 0.0)),
                    cohrank::ParseError);
    const auto p = cohrank::SqueezedVacuumParams::from_mu(std::cosh(0.5));
    CHECK(std::abs(p.nu - Complex(std::sinh(0.5), 0.0)) < 1e-12);
    const auto rotated =
        cohrank::SqueezedVacuumParams::from_mu(std::cosh(0.5),
                                               std::numbers::pi / 3.0);
    CHECK(std::abs(std::abs(rotated.nu) - std::sinh(0.5)) < 1e-12);
}

TEST_CASE("squeezed vacuum coefficients") {
    const auto none = cohrank::SqueezedVacuumParams::from_mu(1.0);
    const FockArray vac = cohrank::squeezed_vacuum_fock(none, 8);
    CHECK(vac[0] == Complex(1.0, 0.0));
    for (std::size_t i = 1; i < vac.size(); ++i) {
        CHECK(vac[i] == Complex(0.0, 0.0));
    }
    CHECK(vac.tail_bound() == 0.0);

    const auto p = cohrank::SqueezedVacuumParams::from_mu(std::cosh(0.5));
    const FockArray f = cohrank::squeezed_vacuum_fock(p, 60);
    CHECK(f[0] == Complex(1.0 / std::sqrt(p.mu), 0.0));
    for (std::size_t i = 1; i < f.size(); i += 2) {
        CHECK(f[i] == Complex(0.0, 0.0));
    }

    // Independent route: exponentiate the truncated a^dag^2 matrix.
    const std::vector<Complex> expm =
        oracle::squeezed_vacuum_expm(p.mu, p.nu, 60);
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(std::abs(f[i] - expm[i]) <= 1e-10);
    }

    const double n = cohrank::fock_norm(f);
    CHECK(std::abs(1.0 - n * n) < 1e-12);
}

TEST_CASE("squeezed vacuum tail bound is honest") {
    const auto p = cohrank::SqueezedVacuumParams::from_mu(std::cosh(0.5));
    CHECK_THROWS_AS(cohrank::squeezed_vacuum_fock(p, 10),
                    cohrank::TruncationError);
    CHECK_THROWS_AS(cohrank::squeezed_vacuum_fock(p, 1),
                    cohrank::ShapeMismatchError);

    const double inf = std::numeric_limits<double>::infinity();
    const FockArray coarse = cohrank::squeezed_vacuum_fock(p, 20, inf);
    const double n = cohrank::fock_norm(coarse);
    const double missing = 1.0 - n * n;
    CHECK(missing > 0.0);
    CHECK(missing <= coarse.tail_bound());
    CHECK(coarse.tail_bound() < 1e-6);
}

TEST_CASE("two-copy experiment produces the scaled four-point output") {
    const Complex alpha(1.0, 0.0);
    const auto result = cohrank::two_copy_experiment(alpha);
    CHECK(result.input.size() == 4);
    REQUIRE(result.output.size() == 4);

    const double s2 = std::numbers::sqrt2;
    for (const cohrank::Term& t : result.output.terms()) {
        const double m0 = std::abs(t.point[0]);
        const double m1 = std::abs(t.point[1]);
        // One port carries sqrt(2)|alpha|, the other is dark.
        CHECK(std::abs(std::max(m0, m1) - s2) < 1e-12);
        CHECK(std::min(m0, m1) < 1e-12);
    }

    const Tolerances tol;
    CHECK(cohrank::nonclassicality_rank(result.output, tol) == 4);
    CHECK(cohrank::schmidt_rank(
              cohrank::to_fock(cohrank::normalized(result.output)), {0},
              tol) == 2);

    CHECK_THROWS_AS(cohrank::two_copy_experiment(Complex(0.0, 0.0)),
                    cohrank::DegenerateStateError);
}

TEST_CASE("random states are deterministic and well separated") {
    const SuperpositionState a = cohrank::random_state(5, 77);
    const SuperpositionState b = cohrank::random_state(5, 77);
    REQUIRE(a.size() == b.size());
    for (int i = 0; i < a.size(); ++i) {
        CHECK(a.terms()[static_cast<std::size_t>(i)].kappa ==
              b.terms()[static_cast<std::size_t>(i)].kappa);
        CHECK(a.terms()[static_cast<std::size_t>(i)].point ==
              b.terms()[static_cast<std::size_t>(i)].point);
    }

    CHECK(cohrank::random_state(1, 3).size() == 1);

    const Tolerances tol;
    CHECK(cohrank::gram_rank(cohrank::random_state(6, 5), tol) == 6);

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const SuperpositionState s = cohrank::random_state(5, seed);
        CHECK(cohrank::min_pairwise_distance(s) >= 0.1);
        for (const cohrank::Term& t : s.terms()) {
            const double mod = std::abs(t.kappa);
            CHECK(mod >= 0.1);
            CHECK(mod <= 1.0 + 1e-15);
            CHECK(std::abs(t.point[0]) <= 2.0 + 1e-15);
        }
    }

    cohrank::RandomStateBounds cramped;
    cramped.radius = 0.1;
    cramped.min_sep = 1.0;
    CHECK_THROWS_AS(cohrank::random_state(3, 1, cramped),
                    cohrank::SamplingError);
    CHECK_THROWS_AS(cohrank::random_state(0, 1), cohrank::ParseError);

    const SuperpositionState multi = cohrank::random_state(3, 9, {}, 2);
    CHECK(multi.modes() == 2);
    CHECK(multi.size() == 3);
}
