#include "resonance/scalar.hpp"

#include <cmath>
#include <sstream>

namespace resonance::scalar {

std::vector<std::string> ScalarProblem::validate() const {
    std::vector<std::string> warnings;
    if (period <= 0) throw std::invalid_argument("ScalarProblem: period must be positive");
    double ia = ode::periodic_quadrature(a, period).value;
    if (std::fabs(ia) > 1e-9) throw NonResonantError(ia);
    // Sampled limit sandwich g(-inf) < g(x) < g(+inf).
    for (int k = 0; k < 1000; ++k) {
        double x = -1e6 + 2e6 * k / 999.0;
        double gx = g(x);
        if (!(g_minus < gx && gx < g_plus))
            throw std::invalid_argument("ScalarProblem: g(" + std::to_string(x) +
                                        ") violates the declared limit sandwich");
    }
    if (std::fabs(g(1e6) - g_plus) > 0.01)
        warnings.push_back("g(1e6) differs from declared g(+inf) by more than 0.01");
    if (std::fabs(g(-1e6) - g_minus) > 0.01)
        warnings.push_back("g(-1e6) differs from declared g(-inf) by more than 0.01");
    if (g_increasing && g_prime) {
        for (int k = 0; k < 1000; ++k) {
            double x = -100.0 + 200.0 * k / 999.0;
            if (g_prime(x) <= 0) {
                warnings.push_back("declared increasing but g'(" + std::to_string(x) +
                                   ") <= 0 in sampling");
                break;
            }
        }
    }
    return warnings;
}

IntegratingFactor::IntegratingFactor(const ScalarProblem& problem) : period_(problem.period) {
    auto a = problem.a;
    auto f = problem.f;
    // y = (mu, int_0^t mu f)
    ode::Field field = [a, f](double t, const ode::Vector& y, ode::Vector& dy) {
        dy.resize(2);
        dy(0) = a(t) * y(0);
        dy(1) = y(0) * f(t);
    };
    ode::Vector y0(2);
    y0 << 1.0, 0.0;
    traj_ = std::make_shared<ode::Trajectory>(ode::integrate(field, 0.0, y0, period_));
    mu_p_err_ = std::fabs(traj_->states().back()(0) - 1.0);
    if (mu_p_err_ > 1e-9) {
        double ia = ode::periodic_quadrature(a, period_).value;
        throw NonResonantError(ia);
    }
    integral_ = ode::periodic_quadrature([this](double t) { return mu(t); }, period_).value;
}

double IntegratingFactor::mu(double t) const {
    double s = std::fmod(t, period_);
    if (s < 0) s += period_;
    return traj_->at(s)(0);
}

double IntegratingFactor::linear_solution(double c, double t) const {
    // x(t) = (1/mu)(c + int_0^t mu f); extended past one period by the
    // one-period increment int_0^p mu f.
    double w_p = traj_->states().back()(1);
    double k = std::floor(t / period_);
    double s = t - k * period_;
    ode::Vector y = traj_->at(s);
    return (c + k * w_p + y(1)) / y(0);
}

LandesmanLazerInterval landesman_lazer_interval(const ScalarProblem& problem) {
    IntegratingFactor mu(problem);
    LandesmanLazerInterval r;
    r.lower = problem.g_minus * mu.integral();
    r.upper = problem.g_plus * mu.integral();
    r.value = ode::periodic_quadrature(
                  [&](double t) { return mu.mu(t) * problem.f(t); }, problem.period)
                  .value;
    double tol = 1e-10 * std::max({1.0, std::fabs(r.lower), std::fabs(r.upper)});
    r.satisfied = (r.value > r.lower + tol) && (r.value < r.upper - tol);
    return r;
}

std::string ScalarVerdict::summary() const {
    std::ostringstream os;
    os.precision(6);
    switch (outcome) {
        case ScalarOutcome::UniqueAttractingPeriodic: os << "UniqueAttractingPeriodic"; break;
        case ScalarOutcome::PeriodicExistsOnly: os << "PeriodicExistsOnly"; break;
        case ScalarOutcome::AllUnbounded: os << "AllUnbounded"; break;
    }
    os << "; interval (" << interval.lower << ", " << interval.upper << "); value "
       << interval.value;
    if (outcome == ScalarOutcome::AllUnbounded)
        os << "; margin alpha = " << alpha << (direction > 0 ? " (increasing)" : " (decreasing)");
    return os.str();
}

ScalarVerdict scalar_verdict(const ScalarProblem& problem) {
    ScalarVerdict v;
    v.interval = landesman_lazer_interval(problem);
    if (v.interval.satisfied) {
        v.outcome = problem.g_increasing ? ScalarOutcome::UniqueAttractingPeriodic
                                         : ScalarOutcome::PeriodicExistsOnly;
        return v;
    }
    // Boundary values fall on the unbounded side of the strict inequality.
    v.outcome = ScalarOutcome::AllUnbounded;
    if (v.interval.upper - v.interval.value <= v.interval.value - v.interval.lower) {
        v.alpha = std::max(0.0, v.interval.value - v.interval.upper);
        v.direction = +1;
    } else {
        v.alpha = std::max(0.0, v.interval.lower - v.interval.value);
        v.direction = -1;
    }
    return v;
}

ode::Trajectory solve_period(const ScalarProblem& problem, double x0, int periods) {
    ode::Field field = [&problem](double t, const ode::Vector& y, ode::Vector& dy) {
        dy.resize(1);
        dy(0) = -problem.a(t) * y(0) - problem.g(y(0)) + problem.f(t);
    };
    ode::Vector y0(1);
    y0 << x0;
    return ode::integrate(field, 0.0, y0, problem.period * periods);
}

double poincare_map(const ScalarProblem& problem, double x0) {
    return solve_period(problem, x0).states().back()(0);
}

PeriodicOrbit find_periodic(const ScalarProblem& problem) {
    double A = 1.0;
    while (A <= 1e6) {
        if (poincare_map(problem, A) < A && poincare_map(problem, -A) > -A) break;
        A *= 2;
    }
    if (A > 1e6)
        throw std::runtime_error("find_periodic: no trapping interval up to A = 1e6");
    double lo = -A, hi = A;
    // phi(lo) > 0, phi(hi) < 0 with phi(x0) = x(p, x0) - x0.
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
        double mid = 0.5 * (lo + hi);
        double phi = poincare_map(problem, mid) - mid;
        if (phi > 0)
            lo = mid;
        else
            hi = mid;
    }
    PeriodicOrbit orbit;
    orbit.x0 = 0.5 * (lo + hi);
    orbit.orbit = solve_period(problem, orbit.x0);
    orbit.closure = std::fabs(orbit.orbit.states().back()(0) - orbit.x0);
    return orbit;
}

WitnessRun unbounded_witness(const ScalarProblem& problem, double x0, int m) {
    ScalarVerdict v = scalar_verdict(problem);
    if (v.outcome != ScalarOutcome::AllUnbounded)
        throw std::invalid_argument("unbounded_witness: verdict is not AllUnbounded");
    WitnessRun run;
    run.alpha = v.alpha;
    run.direction = v.direction;
    run.iterates.push_back(x0);
    double x = x0;
    for (int k = 0; k < m; ++k) {
        x = poincare_map(problem, x);
        run.iterates.push_back(x);
    }
    run.margin_ok = true;
    run.monotone = true;
    const double tol = 1e-7 * std::max(1.0, std::fabs(x0));
    for (int k = 1; k <= m; ++k) {
        double gain = run.direction * (run.iterates[static_cast<std::size_t>(k)] - x0);
        if (run.alpha > 0 && gain <= k * run.alpha - tol) run.margin_ok = false;
        double step = run.direction * (run.iterates[static_cast<std::size_t>(k)] -
                                       run.iterates[static_cast<std::size_t>(k - 1)]);
        if (step <= 0) run.monotone = false;
    }
    return run;
}

}  // namespace resonance::scalar
