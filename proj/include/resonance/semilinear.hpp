#ifndef RESONANCE_SEMILINEAR_HPP
#define RESONANCE_SEMILINEAR_HPP

#include <functional>
#include <string>
#include <vector>

#include "resonance/linear.hpp"

namespace resonance::semilinear {

using linear::Matrix;
using linear::Vector;

/// Semilinear system x' + A(t) x + f(x) = g(t), stored canonically as
/// x' = M(t) x - f(x) + q(t) with M = -A and q = g.
struct SystemProblem {
    linear::PeriodicSystem linear_part;                // M(t), q(t) = g(t)
    std::function<Vector(const Vector&)> nonlinearity; // f(x)
    Vector lower, upper;                               // componentwise alpha_i < beta_i

    // Sampled bound check of the nonlinearity and the resonance sanity
    // invariant (1 in spec X(p) iff 1 in spec Z(p)).
    void validate() const;
};

enum class SemilinearOutcome { Inconclusive, AllUnbounded, HypothesisFailure };

struct Condition44 {
    SemilinearOutcome outcome = SemilinearOutcome::HypothesisFailure;
    double lower = 0;   // sum_i alpha_i int z_i
    double value = 0;   // int g . z
    double upper = 0;   // sum_i beta_i int z_i
    bool satisfied = false;
    int direction = 0;  // +1: value above upper, -1: value below lower
    linear::PositiveAdjoint adjoint;
    std::string summary() const;
};

/// Necessary condition for a periodic solution, weighted by the positive
/// periodic adjoint solution z(t).  When the condition is satisfied no
/// existence claim is made (outcome Inconclusive).
Condition44 condition_44(const SystemProblem& problem);

struct InstabilityRun {
    std::vector<double> v_values;     // V(x(kp)), k = 0..m
    std::vector<Vector> states;       // x(kp)
    bool strictly_increasing = true;  // the growth inequality along iterates
    double mean_gain = 0;             // average V-increase per period
};

/// Integrates the full system over m periods from x0 and checks strict
/// growth of the Alonso-Ortega functional V(x) = +/- sum_i z_i(0) x_i.
/// Requires condition_44 to have failed.
InstabilityRun instability_run(const SystemProblem& problem, const Vector& x0, int m);
InstabilityRun instability_run(const SystemProblem& problem, const Condition44& cond,
                               const Vector& x0, int m);

/// One solve of the full nonlinear system over [0, t_end].
ode::Trajectory solve(const SystemProblem& problem, const Vector& x0, double t_end);

}  // namespace resonance::semilinear

#endif
