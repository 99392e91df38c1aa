#ifndef RESONANCE_SCALAR_HPP
#define RESONANCE_SCALAR_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "resonance/ode.hpp"

namespace resonance::scalar {

/// First-order scalar semilinear problem x' + a(t) x + g(x) = f(t) with the
/// linear part at resonance (integral of a over one period vanishes).
struct ScalarProblem {
    double period = 0;
    std::function<double(double)> a;        // a(t)
    std::function<double(double)> f;        // f(t)
    std::function<double(double)> g;        // g(x)
    std::function<double(double)> g_prime;  // g'(x)
    double g_minus = 0, g_plus = 0;         // declared limits at -inf / +inf
    bool g_increasing = false;              // declared strict monotonicity

    // Enforces the resonance condition and spot-checks the declared limit
    // sandwich; returns non-fatal warnings (e.g. limit mismatch at x = 1e6).
    std::vector<std::string> validate() const;
};

struct NonResonantError : std::runtime_error {
    NonResonantError(double integral)
        : std::runtime_error(
              "linear part not at resonance: integral of a over one period = " +
              std::to_string(integral) +
              (integral > 0 ? "; unique periodic solution attracts as t -> +inf"
                            : "; unique periodic solution attracts as t -> -inf")),
          integral(integral) {}
    double integral;
};

/// Integrating factor mu(t) = exp(int_0^t a), periodic exactly at resonance.
class IntegratingFactor {
public:
    explicit IntegratingFactor(const ScalarProblem& problem);

    double mu(double t) const;       // any t, extended by periodicity
    double integral() const { return integral_; }   // int_0^p mu
    double periodicity_error() const { return mu_p_err_; }

    // Closed-form solution of the linear case g == 0 with x(0) = c.
    double linear_solution(double c, double t) const;

private:
    double period_;
    double integral_;
    double mu_p_err_;
    std::shared_ptr<const ode::Trajectory> traj_;  // (mu, int mu f) over [0, p]
};

struct LandesmanLazerInterval {
    double lower = 0;   // g(-inf) * int mu
    double upper = 0;   // g(+inf) * int mu
    double value = 0;   // int mu f
    bool satisfied = false;
};

LandesmanLazerInterval landesman_lazer_interval(const ScalarProblem& problem);

enum class ScalarOutcome { UniqueAttractingPeriodic, PeriodicExistsOnly, AllUnbounded };

struct ScalarVerdict {
    ScalarOutcome outcome = ScalarOutcome::AllUnbounded;
    LandesmanLazerInterval interval;
    double alpha = 0;     // instability margin when unbounded
    int direction = 0;    // +1: iterates increase, -1: decrease, 0: n/a
    std::string summary() const;
};

ScalarVerdict scalar_verdict(const ScalarProblem& problem);

/// One-period solution map x0 -> x(p; x0).
double poincare_map(const ScalarProblem& problem, double x0);

/// Dense one-period solution from x0 (used for orbit inspection).
ode::Trajectory solve_period(const ScalarProblem& problem, double x0, int periods = 1);

struct PeriodicOrbit {
    double x0 = 0;
    double closure = 0;  // |x(p) - x0| on re-integration
    ode::Trajectory orbit;
};

/// Fixed point of the Poincare map via the trapping-interval argument:
/// double A from 1 until [-A, A] maps into itself, then bisect.
PeriodicOrbit find_periodic(const ScalarProblem& problem);

struct WitnessRun {
    std::vector<double> iterates;  // x(kp), k = 0..m
    double alpha = 0;
    int direction = 0;
    bool margin_ok = false;     // |x(kp) - x(0)| > k*alpha - tol (alpha > 0)
    bool monotone = false;      // strict monotonicity (alpha = 0 route)
};

/// Iterate record for the unbounded case, with the per-period margin check.
WitnessRun unbounded_witness(const ScalarProblem& problem, double x0, int m);

}  // namespace resonance::scalar

#endif
