#include "resonance/pendulum.hpp"

#include <cmath>
#include <sstream>

namespace resonance::pendulum {

void PendulumProblem::validate() const {
    if (lambda <= 0 || period <= 0)
        throw std::invalid_argument("PendulumProblem: lambda and period must be positive");
    double ie = ode::periodic_quadrature(e, period).value;
    if (std::fabs(ie) > 1e-9)
        throw std::invalid_argument("PendulumProblem: e(t) does not have zero average (" +
                                    std::to_string(ie) + ")");
    for (int k = 0; k < 1000; ++k) {
        double x = -1e6 + 2e6 * k / 999.0;
        double gx = g(x);
        if (std::fabs(gx) > g_bound + 1e-12)
            throw std::invalid_argument("PendulumProblem: |g| exceeds the declared bound");
        // Tolerance: far-tail samples can round onto the limit itself (e.g.
        // tanh at |x| = 1e6 evaluates to exactly 1.0).
        if (!(g_minus - 1e-12 < gx && gx < g_plus + 1e-12))
            throw std::invalid_argument("PendulumProblem: g violates the declared limit sandwich");
    }
}

Hypothesis62 verify_62(const PendulumProblem& problem) {
    Hypothesis62 h;
    h.bound = problem.lambda * problem.lambda / 4.0 + problem.omega() * problem.omega();
    // Symmetric log-spaced grid, |x| from 1e-6 to 1e6, plus x = 0.
    auto probe = [&](double x) { h.sup_g_prime = std::max(h.sup_g_prime, std::fabs(problem.g_prime(x))); };
    probe(0.0);
    const int half = 5000;
    double best_x = 0.0;
    for (int k = 0; k < half; ++k) {
        double ex = -6.0 + 12.0 * k / (half - 1);
        double x = std::pow(10.0, ex);
        for (double s : {x, -x}) {
            double v = std::fabs(problem.g_prime(s));
            if (v > h.sup_g_prime) {
                h.sup_g_prime = v;
                best_x = s;
            }
        }
    }
    // Local golden-section refinement around the grid maximizer.
    double a = best_x - std::max(1e-3, std::fabs(best_x) * 0.1);
    double b = best_x + std::max(1e-3, std::fabs(best_x) * 0.1);
    const double gr = 0.618033988749895;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    for (int it = 0; it < 80; ++it) {
        if (std::fabs(problem.g_prime(c)) > std::fabs(problem.g_prime(d)))
            b = d;
        else
            a = c;
        c = b - gr * (b - a);
        d = a + gr * (b - a);
    }
    probe(0.5 * (a + b));
    h.holds = h.sup_g_prime < h.bound - 1e-9;
    return h;
}

std::string PendulumVerdict::summary() const {
    std::ostringstream os;
    os.precision(6);
    switch (outcome) {
        case PendulumOutcome::Inapplicable:
            os << "hypothesis on sup|g'| fails (estimate " << hypothesis.sup_g_prime
               << " >= bound " << hypothesis.bound << "); verdict unavailable";
            return os.str();
        case PendulumOutcome::Exists:
            os << "periodic solution exists";
            break;
        case PendulumOutcome::AllUnbounded:
            os << "no periodic solution; all solutions unbounded as t -> +/-inf";
            break;
    }
    os << "; mu = " << mu << ", interval (" << g_minus << ", " << g_plus << ")"
       << "; sup|g'| " << hypothesis.sup_g_prime << " < " << hypothesis.bound
       << " (sampled, not proven)";
    return os.str();
}

PendulumVerdict pendulum_verdict(const PendulumProblem& problem) {
    PendulumVerdict v;
    v.hypothesis = verify_62(problem);
    v.g_minus = problem.g_minus;
    v.g_plus = problem.g_plus;
    v.mu = problem.mu;
    if (!v.hypothesis.holds) {
        v.outcome = PendulumOutcome::Inapplicable;
        return v;
    }
    v.outcome = (problem.g_minus < problem.mu && problem.mu < problem.g_plus)
                    ? PendulumOutcome::Exists
                    : PendulumOutcome::AllUnbounded;
    return v;
}

ode::Trajectory solve(const PendulumProblem& problem, const State& s0, double t_end) {
    ode::Field field = [&problem](double t, const ode::Vector& y, ode::Vector& dy) {
        dy.resize(2);
        dy(0) = y(1);
        dy(1) = -problem.lambda * y(1) - problem.g(y(0)) + problem.mu + problem.e(t);
    };
    ode::Vector y0(2);
    y0 << s0(0), s0(1);
    return ode::integrate(field, 0.0, y0, t_end);
}

static State advance(const PendulumProblem& problem, const State& s) {
    ode::Vector y = solve(problem, s, problem.period).states().back();
    return State(y(0), y(1));
}

Poincare2DRun poincare_2d(const PendulumProblem& problem, const State& s0, int m) {
    Poincare2DRun run;
    if (problem.mu >= problem.g_plus)
        run.direction = +1;
    else if (problem.mu <= problem.g_minus)
        run.direction = -1;

    auto V = [&](const State& s) { return s(1) + problem.lambda * s(0); };
    run.iterates.push_back(s0);
    run.v_values.push_back(V(s0));
    State s = s0;
    for (int k = 0; k < m; ++k) {
        s = advance(problem, s);
        run.iterates.push_back(s);
        run.v_values.push_back(V(s));
    }
    for (int k = 1; k <= m; ++k) {
        double dv = run.direction * (run.v_values[static_cast<std::size_t>(k)] -
                                     run.v_values[static_cast<std::size_t>(k - 1)]);
        run.mean_gain += dv;
        if (run.direction != 0 && dv <= -1e-9) run.strict = false;
    }
    if (m > 0) run.mean_gain /= m;
    return run;
}

FixedPoint2D find_fixed_point(const PendulumProblem& problem, const State& guess) {
    State s = guess;
    const double fd = 1e-6;
    for (int it = 0; it < 50; ++it) {
        State F = advance(problem, s) - s;
        if (F.norm() <= 1e-10) break;
        Eigen::Matrix2d J;
        for (int j = 0; j < 2; ++j) {
            State sp = s;
            sp(j) += fd;
            J.col(j) = (advance(problem, sp) - sp - F) / fd;
        }
        State step = J.fullPivLu().solve(-F);
        // Damped update.
        double lam = 1.0;
        for (int half = 0; half < 10; ++half) {
            State cand = s + lam * step;
            if ((advance(problem, cand) - cand).norm() < F.norm()) {
                s = cand;
                break;
            }
            lam *= 0.5;
            if (half == 9) s = s + lam * step;
        }
    }
    FixedPoint2D fp;
    fp.state = s;
    fp.orbit = solve(problem, s, problem.period);
    State end(fp.orbit.states().back()(0), fp.orbit.states().back()(1));
    fp.closure = (end - s).norm();
    if (fp.closure > 1e-8)
        throw std::runtime_error("find_fixed_point: Newton did not close the orbit (residual " +
                                 std::to_string(fp.closure) + ")");
    return fp;
}

}  // namespace resonance::pendulum
