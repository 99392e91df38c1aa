#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "resonance/semilinear.hpp"

using namespace resonance;
using linear::Matrix;
using linear::Vector;

namespace {

// x' + A x + f(x) = g(t) with A = diag(sin t, -sin t), f the coupled
// arctangent pair, g = (c + sin t, sin t).
semilinear::SystemProblem pair_problem(double c) {
    semilinear::SystemProblem sp;
    sp.linear_part.dim = 2;
    sp.linear_part.period = 2 * M_PI;
    sp.linear_part.coefficient = [](double t) {
        Matrix M(2, 2);
        M << -std::sin(t), 0, 0, std::sin(t);
        return M;
    };
    sp.linear_part.forcing = [c](double t) {
        Vector q(2);
        q << c + std::sin(t), std::sin(t);
        return q;
    };
    sp.nonlinearity = [](const Vector& x) {
        Vector f(2);
        f << (2.0 / M_PI) * std::atan(x(0) + x(1)), (2.0 / M_PI) * std::atan(x(0) - x(1));
        return f;
    };
    sp.lower = Vector::Constant(2, -1.0);
    sp.upper = Vector::Constant(2, 1.0);
    return sp;
}

const double kI0 = std::cyl_bessel_i(0.0, 1.0);
const double kI1 = 2 * M_PI * M_E * kI0;      // int_0^{2pi} e^{1 - cos t} dt
const double kI2 = 2 * M_PI / M_E * kI0;      // int_0^{2pi} e^{cos t - 1} dt

}  // namespace

TEST_CASE("validation accepts the arctangent pair") {
    CHECK_NOTHROW(pair_problem(1.0).validate());
}

TEST_CASE("validation rejects bounds the nonlinearity violates") {
    auto sp = pair_problem(1.0);
    sp.upper = Vector::Constant(2, 0.5);  // atan pair exceeds 0.5
    CHECK_THROWS(sp.validate());
}

TEST_CASE("necessary-condition endpoints match the Bessel oracles") {
    auto cond = semilinear::condition_44(pair_problem(0.0));
    CHECK(cond.lower == doctest::Approx(-(kI1 + kI2)).epsilon(1e-8));
    CHECK(cond.upper == doctest::Approx(kI1 + kI2).epsilon(1e-8));
    CHECK(cond.value == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(cond.outcome == semilinear::SemilinearOutcome::Inconclusive);
    CHECK(cond.satisfied);
    // Adjoint weight integrals individually.
    CHECK(cond.adjoint.integrals[0] == doctest::Approx(kI1).epsilon(1e-8));
    CHECK(cond.adjoint.integrals[1] == doctest::Approx(kI2).epsilon(1e-8));
}

TEST_CASE("forcing mean outside the interval certifies unboundedness") {
    auto cond = semilinear::condition_44(pair_problem(2.0));
    CHECK(cond.value == doctest::Approx(2.0 * kI1).epsilon(1e-8));
    CHECK(cond.value > cond.upper);
    CHECK(cond.outcome == semilinear::SemilinearOutcome::AllUnbounded);
    CHECK(cond.direction == +1);

    auto below = semilinear::condition_44(pair_problem(-2.0));
    CHECK(below.outcome == semilinear::SemilinearOutcome::AllUnbounded);
    CHECK(below.direction == -1);
}

TEST_CASE("V-functional increases strictly along iterates") {
    auto sp = pair_problem(2.0);
    auto cond = semilinear::condition_44(sp);
    REQUIRE(cond.outcome == semilinear::SemilinearOutcome::AllUnbounded);
    Vector seeds[3];
    seeds[0] = Vector::Zero(2);
    seeds[1] = (Vector(2) << 4.0, -3.0).finished();
    seeds[2] = (Vector(2) << -10.0, 10.0).finished();
    for (const auto& x0 : seeds) {
        auto run = semilinear::instability_run(sp, cond, x0, 20);
        CHECK(run.strictly_increasing);
        // The guaranteed per-period gain is at least value - upper.
        CHECK(run.mean_gain >= cond.value - cond.upper - 1e-6);
        CHECK(run.states.back().norm() > run.states.front().norm());
    }
}

TEST_CASE("instability run refuses an inconclusive condition") {
    auto sp = pair_problem(0.0);
    CHECK_THROWS(semilinear::instability_run(sp, Vector::Zero(2), 5));
}

TEST_CASE("solve integrates the full nonlinear system") {
    auto sp = pair_problem(0.5);
    Vector x0(2);
    x0 << 0.1, -0.2;
    auto traj = semilinear::solve(sp, x0, sp.linear_part.period);
    CHECK(traj.states().back().allFinite());
    // First component field at t=0: x1' = -sin(0) x1 - f1 + q1 = -f1 + 0.5.
    ode::Vector d = traj.at(0.0);
    CHECK(d(0) == doctest::Approx(0.1));
}
