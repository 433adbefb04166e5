#include <cmath>

#include "doctest.h"
#include "freechaos/cumulants.hpp"
#include "freechaos/laws.hpp"
#include "freechaos/quadrature.hpp"

using namespace freechaos;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("semicircle density values") {
    CHECK(density(Law::semicircle(1.0), 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-14));
    for (double t : {0.5, 1.0, 2.0}) {
        const double edge = 2.0 * std::sqrt(t);
        CHECK(density(Law::semicircle(t), edge) == 0.0);
        CHECK(density(Law::semicircle(t), -edge) == 0.0);
        CHECK(density(Law::semicircle(t), edge + 0.1) == 0.0);
    }
}

TEST_CASE("Marchenko-Pastur density at the hard edge") {
    // at rate 1 the density blows up like x^{-1/2} near zero but stays integrable
    const Law mp = Law::free_poisson(1.0);
    for (double x : {1e-6, 1e-8}) {
        const double expected = std::sqrt(4.0 - x) / (2.0 * kPi * std::sqrt(x));
        CHECK(density(mp, x) == doctest::Approx(expected).epsilon(1e-6));
    }
    CHECK(density(mp, std::sqrt(1e-6)) * std::sqrt(std::sqrt(1e-6)) ==
          doctest::Approx(1.0 / kPi).epsilon(1e-3));
    CHECK(density(mp, -0.1) == 0.0);
    CHECK(density(mp, 4.5) == 0.0);
}

TEST_CASE("law structure") {
    const Law atom = Law::free_poisson(0.5);
    CHECK(atom.atom_mass() == doctest::Approx(0.5));
    CHECK(atom.atom_position() == 0.0);
    const Law no_atom = Law::free_poisson(2.0);
    CHECK(no_atom.atom_mass() == 0.0);
    const Law centered = Law::centered_free_poisson(0.5);
    CHECK(centered.atom_position() == doctest::Approx(-0.5));
    const auto [lo, hi] = centered.support();
    const double s = std::sqrt(0.5);
    CHECK(lo == doctest::Approx((1 - s) * (1 - s) - 0.5));
    CHECK(hi == doctest::Approx((1 + s) * (1 + s) - 0.5));
    CHECK_THROWS_AS(Law::semicircle(0.0), DomainError);
    CHECK_THROWS_AS(Law::free_poisson(-1.0), DomainError);
}

TEST_CASE("semicircle quadrature moments match Catalan powers") {
    for (double t : {0.5, 1.0, 2.0}) {
        const Law law = Law::semicircle(t);
        CHECK(quadrature_moment(law, 0) == doctest::Approx(1.0).epsilon(1e-10));
        double tp = 1.0;
        for (int m = 1; m <= 5; ++m) {
            tp *= t;
            const double expected = to_double(catalan(static_cast<unsigned>(m))) * tp;
            CHECK(std::abs(quadrature_moment(law, 2 * m) - expected) < 1e-8);
        }
        for (int m : {1, 3, 5, 7, 9}) CHECK(std::abs(quadrature_moment(law, m)) < 1e-10);
        CHECK(quadrature_moment(law, 4) == doctest::Approx(2.0 * t * t).epsilon(1e-10));
    }
}

TEST_CASE("centered free Poisson quadrature moments") {
    CHECK(std::abs(quadrature_moment(Law::centered_free_poisson(3.0), 1)) < 1e-8);
    CHECK(quadrature_moment(Law::centered_free_poisson(3.0), 4) ==
          doctest::Approx(21.0).epsilon(1e-8));  // lambda + 2 lambda^2

    // both the atomic (lambda <= 1) and non-atomic regimes
    for (double lam : {0.5, 1.0, 2.0}) {
        const Law law = Law::centered_free_poisson(lam);
        CHECK(std::abs(quadrature_moment(law, 0) - 1.0) < 1e-10);
        for (int m = 1; m <= 6; ++m) {
            const double expected = centered_poisson_moment(lam, m);
            CHECK(std::abs(quadrature_moment(law, m) - expected) < 1e-6);
        }
    }

    // total mass of the uncentered law splits between atom and bulk
    const Law half = Law::free_poisson(0.5);
    CHECK(std::abs(quadrature_moment(half, 0) - 1.0) < 1e-10);
}

TEST_CASE("quadrature preconditions and failure reporting") {
    CHECK_THROWS_AS(quadrature_moment(Law::semicircle(1.0), 11), BoundsError);
    CHECK_THROWS_AS(quadrature_moment(Law::semicircle(1.0), 4, 1e-13), DomainError);

    // an integrable singularity starves a depth-limited refinement
    auto spike = [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)); };
    try {
        adaptive_simpson(spike, 0.0, 1.0, 1e-12, 8);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(std::isfinite(e.estimate));
        CHECK(e.error_bound > 0.0);
    }
}

TEST_CASE("adaptive simpson on smooth integrands") {
    CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(adaptive_simpson([](double x) { return x * x; }, -1.0, 2.0, 1e-12) ==
          doctest::Approx(3.0).epsilon(1e-12));
}
