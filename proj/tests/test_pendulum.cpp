#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "resonance/pendulum.hpp"

using namespace resonance;

namespace {

// x'' + x' + (2/pi) atan x = mu + sin t.
pendulum::PendulumProblem atan_problem(double mu) {
    pendulum::PendulumProblem p;
    p.lambda = 1.0;
    p.period = 2 * M_PI;
    p.mu = mu;
    p.g = [](double x) { return (2.0 / M_PI) * std::atan(x); };
    p.g_prime = [](double x) { return (2.0 / M_PI) / (1.0 + x * x); };
    p.e = [](double t) { return std::sin(t); };
    p.g_bound = 1.0;
    p.g_minus = -1.0;
    p.g_plus = 1.0;
    return p;
}

}  // namespace

TEST_CASE("validation enforces zero-average forcing") {
    auto p = atan_problem(0.0);
    CHECK_NOTHROW(p.validate());
    p.e = [](double t) { return 0.3 + std::sin(t); };
    CHECK_THROWS(p.validate());
}

TEST_CASE("derivative bound estimate") {
    auto p = atan_problem(0.0);
    auto h = pendulum::verify_62(p);
    CHECK(h.bound == doctest::Approx(0.25 + 1.0));
    CHECK(h.sup_g_prime == doctest::Approx(2.0 / M_PI).epsilon(1e-6));
    CHECK(h.holds);

    // A steep nonlinearity fails the bound; the failing estimate is a
    // certificate because it exhibits a point above the threshold.
    p.g = [](double x) { return std::tanh(3.0 * x); };
    p.g_prime = [](double x) { return 3.0 / std::pow(std::cosh(3.0 * x), 2); };
    p.g_bound = 1.0;
    auto h2 = pendulum::verify_62(p);
    CHECK(h2.sup_g_prime == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(!h2.holds);
}

TEST_CASE("existence window in mu") {
    for (double mu : {-0.9, 0.0, 0.5, 0.9}) {
        auto v = pendulum::pendulum_verdict(atan_problem(mu));
        CHECK(v.outcome == pendulum::PendulumOutcome::Exists);
    }
    for (double mu : {1.0, 1.5, -1.2}) {
        auto v = pendulum::pendulum_verdict(atan_problem(mu));
        CHECK(v.outcome == pendulum::PendulumOutcome::AllUnbounded);
    }
    auto steep = atan_problem(0.0);
    steep.g = [](double x) { return std::tanh(3.0 * x); };
    steep.g_prime = [](double x) { return 3.0 / std::pow(std::cosh(3.0 * x), 2); };
    CHECK(pendulum::pendulum_verdict(steep).outcome == pendulum::PendulumOutcome::Inapplicable);
}

TEST_CASE("fixed point of the period map exists and closes") {
    for (double mu : {0.0, 0.5, -0.7}) {
        auto fp = pendulum::find_fixed_point(atan_problem(mu));
        CHECK(fp.closure < 1e-8);
        // Re-integrate: the orbit must be periodic.
        auto traj = pendulum::solve(atan_problem(mu), fp.state, 2 * M_PI);
        CHECK((traj.states().back() - fp.state).norm() < 1e-7);
    }
}

TEST_CASE("V = x' + lambda x grows linearly when existence fails") {
    auto p = atan_problem(1.5);
    for (auto s0 : {pendulum::State(0.0, 0.0), pendulum::State(3.0, -2.0),
                    pendulum::State(-8.0, 1.0)}) {
        auto run = pendulum::poincare_2d(p, s0, 20);
        CHECK(run.direction == +1);
        CHECK(run.strict);
        // Per-period gain at least (mu - g(inf)) p = 0.5 * 2 pi.
        CHECK(run.mean_gain >= 0.5 * 2 * M_PI - 1e-6);
    }
    auto down = pendulum::poincare_2d(atan_problem(-1.5), pendulum::State(0.0, 0.0), 15);
    CHECK(down.direction == -1);
    CHECK(down.strict);
}

TEST_CASE("constant torque above the range gives the exact V-gain") {
    // x'' + x' = 1 + sin t: g = 0, so V(p) - V(0) = integral of (mu + e) = 2 pi
    // exactly, every period.
    auto p = atan_problem(1.0);
    p.g = [](double) { return 0.0; };
    p.g_prime = [](double) { return 0.0; };
    p.g_bound = 0.0;
    p.g_minus = 0.0;
    p.g_plus = 0.0;
    auto run = pendulum::poincare_2d(p, pendulum::State(0.0, 0.0), 10);
    for (std::size_t k = 1; k < run.v_values.size(); ++k)
        CHECK(run.v_values[k] - run.v_values[k - 1] == doctest::Approx(2 * M_PI).epsilon(1e-8));
}

TEST_CASE("fixed point refuses the unbounded regime") {
    CHECK_THROWS(pendulum::find_fixed_point(atan_problem(1.5)));
}
