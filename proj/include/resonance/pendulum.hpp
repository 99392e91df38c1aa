#ifndef RESONANCE_PENDULUM_HPP
#define RESONANCE_PENDULUM_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "resonance/ode.hpp"

namespace resonance::pendulum {

using State = Eigen::Vector2d;  // (x, x')

/// Pendulum-like equation x'' + lambda x' + g(x) = mu + e(t) with
/// zero-average e(t) and damping lambda > 0.
struct PendulumProblem {
    double lambda = 0;
    double period = 0;
    double mu = 0;
    std::function<double(double)> g, g_prime;  // g(x), g'(x)
    std::function<double(double)> e;           // e(t), zero average
    double g_bound = 0;                        // |g| <= M
    double g_minus = 0, g_plus = 0;            // limits at -inf / +inf

    double omega() const { return 2.0 * M_PI / period; }
    void validate() const;
};

struct Hypothesis62 {
    double sup_g_prime = 0;  // grid estimate; a lower bound of the sup
    double bound = 0;        // lambda^2/4 + omega^2
    bool holds = false;      // sampled, not proven
};

/// |g'(x)| < lambda^2/4 + omega^2, estimated on a symmetric log-spaced grid
/// with local refinement.  A failing estimate is a certificate; a passing
/// one is sampled only.
Hypothesis62 verify_62(const PendulumProblem& problem);

enum class PendulumOutcome { Exists, AllUnbounded, Inapplicable };

struct PendulumVerdict {
    PendulumOutcome outcome = PendulumOutcome::Inapplicable;
    Hypothesis62 hypothesis;
    double g_minus = 0, g_plus = 0, mu = 0;
    std::string summary() const;
};

/// Existence iff g(-inf) < mu < g(+inf); on failure all solutions are
/// unbounded in both time directions.
PendulumVerdict pendulum_verdict(const PendulumProblem& problem);

ode::Trajectory solve(const PendulumProblem& problem, const State& s0, double t_end);

struct Poincare2DRun {
    std::vector<State> iterates;   // (x(kp), x'(kp))
    std::vector<double> v_values;  // V = x' + lambda x
    int direction = 0;             // +1 when mu >= g(+inf), -1 when mu <= g(-inf), else 0
    bool strict = true;            // strict V-monotonicity along iterates
    double mean_gain = 0;
};

/// m-fold Poincare iteration with the V = x' + lambda x growth check when
/// the existence condition fails.
Poincare2DRun poincare_2d(const PendulumProblem& problem, const State& s0, int m);

struct FixedPoint2D {
    State state;
    double closure = 0;  // |P(state) - state| on re-integration
    ode::Trajectory orbit;
};

/// Newton on the 2-D Poincare map (finite-difference Jacobian, damped steps).
FixedPoint2D find_fixed_point(const PendulumProblem& problem,
                              const State& guess = State::Zero());

}  // namespace resonance::pendulum

#endif
