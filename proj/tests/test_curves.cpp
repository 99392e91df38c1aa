#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "resonance/curves.hpp"
#include "resonance/scalar.hpp"

using namespace resonance;
using curves::CurveProblem;

namespace {

CurveProblem linear_first_order() {
    // x' + x = mu + sin t: closed form mu = xi, X = (sin t - cos t)/2.
    CurveProblem p;
    p.order = CurveProblem::Order::First;
    p.period = 2 * M_PI;
    p.g = [](double x) { return x; };
    p.g_prime = [](double) { return 1.0; };
    p.e = [](double t) { return std::sin(t); };
    return p;
}

CurveProblem example_equation() {
    // x' + sin t x + (2/pi) atan x = mu + sin t.
    CurveProblem p;
    p.order = CurveProblem::Order::First;
    p.period = 2 * M_PI;
    p.a = [](double t) { return std::sin(t); };
    p.g = [](double x) { return (2.0 / M_PI) * std::atan(x); };
    p.g_prime = [](double x) { return (2.0 / M_PI) / (1.0 + x * x); };
    p.e = [](double t) { return std::sin(t); };
    return p;
}

CurveProblem second_order_pendulum() {
    // x'' + x' + (2/pi) atan x = mu + sin t.
    CurveProblem p;
    p.order = CurveProblem::Order::Second;
    p.period = 2 * M_PI;
    p.lambda = 1.0;
    p.g = [](double x) { return (2.0 / M_PI) * std::atan(x); };
    p.g_prime = [](double x) { return (2.0 / M_PI) / (1.0 + x * x); };
    p.e = [](double t) { return std::sin(t); };
    return p;
}

}  // namespace

TEST_CASE("spectral differentiation is exact on trigonometric polynomials") {
    const int n = 16;
    const double p = 2 * M_PI;
    auto D = curves::spectral_derivative(n, p);
    auto D2 = curves::spectral_second_derivative(n, p);
    Eigen::VectorXd f(n), df(n), d2f(n);
    for (int j = 0; j < n; ++j) {
        double t = p * j / n;
        f(j) = std::sin(3 * t) + 0.5 * std::cos(2 * t);
        df(j) = 3 * std::cos(3 * t) - std::sin(2 * t);
        d2f(j) = -9 * std::sin(3 * t) - 2 * std::cos(2 * t);
    }
    CHECK((D * f - df).cwiseAbs().maxCoeff() < 1e-11);
    CHECK((D2 * f - d2f).cwiseAbs().maxCoeff() < 1e-10);
    // Non-unit period scaling.
    auto D3 = curves::spectral_derivative(n, 1.0);
    Eigen::VectorXd g(n), dg(n);
    for (int j = 0; j < n; ++j) {
        double t = static_cast<double>(j) / n;
        g(j) = std::sin(2 * M_PI * t);
        dg(j) = 2 * M_PI * std::cos(2 * M_PI * t);
    }
    CHECK((D3 * g - dg).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("closed-form linear orbit: mu = xi, X = (sin t - cos t)/2") {
    auto problem = linear_first_order();
    for (double xi : {-5.0, -1.0, 0.0, 2.5, 5.0}) {
        auto orbit = curves::solve_orbit_at_xi(problem, xi);
        CHECK(orbit.mu == doctest::Approx(xi).epsilon(1e-9));
        CHECK(std::abs(orbit.mean()) < 1e-10);
        CHECK(orbit.residual < 1e-9);
        for (double t : {0.0, 1.0, 2.5, 4.0, 6.0})
            CHECK(orbit.at(t) ==
                  doctest::Approx((std::sin(t) - std::cos(t)) / 2).epsilon(1e-9));
        // Energy and Wirtinger bounds (first order, no a-term).
        double e_l2 = std::sqrt(M_PI);  // ||sin||_{L2} over one period
        CHECK(orbit.l2_deriv_norm() <= e_l2 + 1e-8);
        CHECK(orbit.l2_norm() <= orbit.l2_deriv_norm() + 1e-8);
    }
}

TEST_CASE("zero problem has the zero orbit at every xi") {
    CurveProblem p;
    p.order = CurveProblem::Order::First;
    p.period = 2 * M_PI;
    p.g = [](double) { return 0.0; };
    p.g_prime = [](double) { return 0.0; };
    p.e = [](double) { return 0.0; };
    auto orbit = curves::solve_orbit_at_xi(p, 3.7);
    CHECK(orbit.mu == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(orbit.sup_norm() < 1e-12);
}

TEST_CASE("collocation agrees with the shooting solver on the example") {
    auto problem = example_equation();
    auto orbit = curves::solve_orbit_at_xi(problem, 0.0);

    scalar::ScalarProblem sp;
    sp.period = 2 * M_PI;
    sp.a = problem.a;
    sp.f = [&orbit](double t) { return orbit.mu + std::sin(t); };
    sp.g = problem.g;
    sp.g_prime = problem.g_prime;
    sp.g_minus = -1.0;
    sp.g_plus = 1.0;
    sp.g_increasing = true;
    auto shoot = scalar::find_periodic(sp);
    CHECK(shoot.closure < 1e-9);
    CHECK(shoot.x0 == doctest::Approx(orbit.xi + orbit.at(0.0)).epsilon(1e-6));
}

TEST_CASE("orbits close under re-integration") {
    auto problem = example_equation();
    for (double xi : {-10.0, 0.0, 10.0}) {
        auto orbit = curves::solve_orbit_at_xi(problem, xi);
        ode::Field field = [&](double t, const ode::Vector& x, ode::Vector& dx) {
            dx.resize(1);
            dx(0) = -problem.a(t) * x(0) - problem.g(x(0)) + orbit.mu + problem.e(t);
        };
        ode::Vector x0(1);
        x0 << orbit.xi + orbit.at(0.0);
        auto traj = ode::integrate(field, 0.0, x0, problem.period);
        CHECK(std::abs(traj.states().back()(0) - x0(0)) < 1e-7);
    }
}

TEST_CASE("node doubling changes the orbit below spectral drift tolerance") {
    auto problem = example_equation();
    auto o64 = curves::solve_orbit_at_xi(problem, 3.0, nullptr, 64);
    auto o128 = curves::solve_orbit_at_xi(problem, 3.0, nullptr, 128);
    CHECK(std::abs(o64.mu - o128.mu) < 1e-9);
    for (double t : {0.3, 2.0, 5.1})
        CHECK(std::abs(o64.at(t) - o128.at(t)) < 1e-9);
}

TEST_CASE("warm starts from distinct guesses land on the same orbit") {
    auto problem = example_equation();
    auto base = curves::solve_orbit_at_xi(problem, 2.0);
    for (double xi0 : {-3.0, 0.5, 6.0}) {
        auto guess = curves::solve_orbit_at_xi(problem, xi0);
        guess.xi = 2.0;  // reuse the foreign orbit as a warm start
        auto orbit = curves::solve_orbit_at_xi(problem, 2.0, &guess);
        CHECK(std::abs(orbit.mu - base.mu) < 1e-7);
        CHECK(std::abs(orbit.at(1.0) - base.at(1.0)) < 1e-7);
    }
}

TEST_CASE("traced curve is continuous and monotone on the example") {
    auto problem = example_equation();
    std::vector<double> grid;
    for (double xi = -40.0; xi <= 40.0 + 1e-9; xi += 0.5) grid.push_back(xi);
    auto curve = curves::trace_curve(problem, grid);
    REQUIRE(curve.points.size() == grid.size());
    double prev_mu = -2.0, prev_sup = 0.0;
    bool first = true;
    for (const auto& pt : curve.points) {
        REQUIRE(pt.ok);
        CHECK(pt.orbit.mu > -1.0);
        CHECK(pt.orbit.mu < 1.0);
        CHECK(pt.orbit.mu > prev_mu);  // strictly increasing with xi
        if (!first) CHECK(std::abs(pt.orbit.sup_norm() - prev_sup) < 2.0);
        prev_mu = pt.orbit.mu;
        prev_sup = pt.orbit.sup_norm();
        first = false;
    }
    auto table = curves::figure1_table(curve);
    CHECK(table.size() == grid.size());
    CHECK(table.front().second == doctest::Approx(-40.0));
    CHECK(table.front().first == doctest::Approx(curve.points.front().orbit.mu));
}

TEST_CASE("single-point grid yields a single-orbit curve") {
    auto curve = curves::trace_curve(linear_first_order(), {1.5});
    REQUIRE(curve.points.size() == 1);
    CHECK(curve.points[0].ok);
    CHECK(curve.points[0].orbit.mu == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("linear curve traces the line mu = xi") {
    std::vector<double> grid;
    for (double xi = -5.0; xi <= 5.0 + 1e-9; xi += 1.0) grid.push_back(xi);
    auto curve = curves::trace_curve(linear_first_order(), grid);
    for (const auto& pt : curve.points) {
        REQUIRE(pt.ok);
        CHECK(pt.orbit.mu == doctest::Approx(pt.xi).epsilon(1e-9));
    }
}

TEST_CASE("second-order curve matches the pendulum fixed point") {
    auto problem = second_order_pendulum();
    auto orbit = curves::solve_orbit_at_xi(problem, 0.5);
    CHECK(orbit.residual < 1e-9);
    CHECK(std::abs(orbit.mean()) < 1e-10);
    // Re-integrate the second-order equation from the orbit's initial data.
    ode::Field field = [&](double t, const ode::Vector& s, ode::Vector& ds) {
        ds.resize(2);
        ds(0) = s(1);
        ds(1) = -problem.lambda * s(1) - problem.g(s(0)) + orbit.mu + problem.e(t);
    };
    auto D = curves::spectral_derivative(static_cast<int>(orbit.nodes.size()), problem.period);
    Eigen::VectorXd xp = D * orbit.nodes;
    ode::Vector s0(2);
    s0 << orbit.xi + orbit.nodes(0), xp(0);
    auto traj = ode::integrate(field, 0.0, s0, problem.period);
    CHECK((traj.states().back() - s0).norm() < 1e-7);
}
