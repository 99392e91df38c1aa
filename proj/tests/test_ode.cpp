#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "resonance/ode.hpp"

using namespace resonance;

TEST_CASE("exponential decay matches the closed form") {
    ode::Field f = [](double, const ode::Vector& x, ode::Vector& dx) { dx = -x; };
    ode::Vector x0(1);
    x0 << 1.0;
    auto traj = ode::integrate(f, 0.0, x0, 5.0);
    CHECK(traj.states().back()(0) == doctest::Approx(std::exp(-5.0)).epsilon(1e-9));
    // Dense output at points strictly inside steps.
    for (double t : {0.37, 1.234, 2.999, 4.5})
        CHECK(traj.at(t)(0) == doctest::Approx(std::exp(-t)).epsilon(1e-9));
}

TEST_CASE("dense output reproduces stored samples exactly") {
    ode::Field f = [](double t, const ode::Vector& x, ode::Vector& dx) {
        dx.resize(1);
        dx(0) = std::cos(t) * x(0);
    };
    ode::Vector x0(1);
    x0 << 2.0;
    auto traj = ode::integrate(f, 0.0, x0, 10.0);
    for (std::size_t i = 0; i < traj.times().size(); ++i)
        CHECK(traj.at(traj.times()[i])(0) == traj.states()[i](0));
}

TEST_CASE("harmonic oscillator over many periods") {
    ode::Field f = [](double, const ode::Vector& x, ode::Vector& dx) {
        dx.resize(2);
        dx(0) = x(1);
        dx(1) = -x(0);
    };
    ode::Vector x0(2);
    x0 << 1.0, 0.0;
    auto traj = ode::integrate(f, 0.0, x0, 20 * 2 * M_PI);
    CHECK(traj.states().back()(0) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(traj.states().back()(1) == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("backward integration") {
    ode::Field f = [](double, const ode::Vector& x, ode::Vector& dx) { dx = x; };
    ode::Vector x0(1);
    x0 << 1.0;
    auto traj = ode::integrate(f, 0.0, x0, -2.0);
    CHECK(traj.states().back()(0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
    CHECK(traj.at(-1.0)(0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("non-finite field is reported") {
    ode::Field f = [](double, const ode::Vector& x, ode::Vector& dx) {
        dx.resize(1);
        dx(0) = x(0) * x(0);  // blows up at t = 1 from x0 = 1
    };
    ode::Vector x0(1);
    x0 << 1.0;
    CHECK_THROWS_AS(ode::integrate(f, 0.0, x0, 2.0), ode::IntegrationError);
}

TEST_CASE("periodic quadrature against Bessel-function oracles") {
    const double p = 2 * M_PI;
    // int_0^{2pi} exp(1 - cos t) dt = 2 pi e I_0(1)
    const double i0 = std::cyl_bessel_i(0.0, 1.0);
    auto r1 = ode::periodic_quadrature([](double t) { return std::exp(1.0 - std::cos(t)); }, p);
    CHECK(r1.value == doctest::Approx(2 * M_PI * M_E * i0).epsilon(1e-12));
    auto r2 = ode::periodic_quadrature([](double t) { return std::exp(std::cos(t) - 1.0); }, p);
    CHECK(r2.value == doctest::Approx(2 * M_PI / M_E * i0).epsilon(1e-12));
    // Odd integrand integrates to zero.
    auto r3 = ode::periodic_quadrature(
        [](double t) { return std::sin(t) * std::exp(1.0 - std::cos(t)); }, p);
    CHECK(r3.value == doctest::Approx(0.0).epsilon(1e-12));
    // Spectral accuracy: smooth integrands need few nodes.
    CHECK(r1.nodes <= 128);
}

TEST_CASE("periodic quadrature of trigonometric polynomials is exact") {
    const double p = 2 * M_PI;
    auto r = ode::periodic_quadrature(
        [](double t) { return 3.0 + std::cos(t) - 2.0 * std::sin(3 * t); }, p);
    CHECK(r.value == doctest::Approx(3.0 * p).epsilon(1e-13));
    // Non-unit period.
    auto r2 = ode::periodic_quadrature([](double t) { return 1.5 + std::sin(2 * M_PI * t); }, 1.0);
    CHECK(r2.value == doctest::Approx(1.5).epsilon(1e-13));
}
