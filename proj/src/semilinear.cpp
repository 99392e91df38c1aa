#include "resonance/semilinear.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace resonance::semilinear {

void SystemProblem::validate() const {
    const int n = linear_part.dim;
    if (lower.size() != n || upper.size() != n)
        throw std::invalid_argument("SystemProblem: bound dimension mismatch");
    for (int i = 0; i < n; ++i)
        if (!(lower(i) < upper(i)))
            throw std::invalid_argument("SystemProblem: alpha_i < beta_i violated");

    // Sampled bound check of f on random directions.
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-1e3, 1e3);
    for (int s = 0; s < 10000; ++s) {
        Vector x(n);
        for (int i = 0; i < n; ++i) x(i) = dist(rng);
        Vector fx = nonlinearity(x);
        for (int i = 0; i < n; ++i)
            if (!(lower(i) < fx(i) && fx(i) < upper(i)))
                throw std::invalid_argument("SystemProblem: nonlinearity bound violated at sample");
    }

    // Resonance sanity: 1 in spec X(p) iff 1 in spec Z(p).
    Matrix Xp = linear::fundamental_matrix(linear_part, linear_part.period);
    Matrix Zp = linear::adjoint_fundamental(linear_part, linear_part.period);
    auto sx = smatrix::eigenvalues(Xp);
    auto sz = smatrix::eigenvalues(Zp);
    bool rx = sx.cluster_near({1.0, 0.0}, smatrix::kUnitCircleTol) != nullptr;
    bool rz = sz.cluster_near({1.0, 0.0}, smatrix::kUnitCircleTol) != nullptr;
    if (!rx || !rz)
        throw std::invalid_argument("SystemProblem: linear part is not at resonance");
}

std::string Condition44::summary() const {
    std::ostringstream os;
    os.precision(6);
    switch (outcome) {
        case SemilinearOutcome::HypothesisFailure:
            os << "hypothesis failure: no positive periodic adjoint solution";
            return os.str();
        case SemilinearOutcome::Inconclusive:
            os << "condition satisfied; existence undecided (no claim made)";
            break;
        case SemilinearOutcome::AllUnbounded:
            os << "condition fails: all solutions unbounded";
            break;
    }
    os << "; interval (" << lower << ", " << upper << "); value " << value;
    return os.str();
}

Condition44 condition_44(const SystemProblem& problem) {
    Condition44 c;
    c.adjoint = linear::positive_adjoint_solution(problem.linear_part);
    if (c.adjoint.status != linear::AdjointStatus::Ok) {
        c.outcome = SemilinearOutcome::HypothesisFailure;
        return c;
    }
    const int n = problem.linear_part.dim;
    for (int i = 0; i < n; ++i) {
        c.lower += problem.lower(i) * c.adjoint.integrals[static_cast<std::size_t>(i)];
        c.upper += problem.upper(i) * c.adjoint.integrals[static_cast<std::size_t>(i)];
    }
    c.value = ode::periodic_quadrature(
                  [&](double t) {
                      return problem.linear_part.forcing_at(t).dot(c.adjoint.z_at(t));
                  },
                  problem.linear_part.period)
                  .value;
    c.satisfied = c.lower < c.value && c.value < c.upper;
    if (c.satisfied) {
        c.outcome = SemilinearOutcome::Inconclusive;
    } else {
        c.outcome = SemilinearOutcome::AllUnbounded;
        c.direction = c.value >= c.upper ? +1 : -1;
    }
    return c;
}

ode::Trajectory solve(const SystemProblem& problem, const Vector& x0, double t_end) {
    const auto& lp = problem.linear_part;
    auto f = problem.nonlinearity;
    ode::Field field = [&lp, f](double t, const ode::Vector& x, ode::Vector& dx) {
        dx = lp.coefficient(t) * x - f(x) + lp.forcing_at(t);
    };
    return ode::integrate(field, 0.0, x0, t_end);
}

InstabilityRun instability_run(const SystemProblem& problem, const Condition44& cond,
                               const Vector& x0, int m) {
    if (cond.outcome != SemilinearOutcome::AllUnbounded)
        throw std::invalid_argument("instability_run: condition (44) did not fail");
    const double p = problem.linear_part.period;
    const double sign = cond.direction;

    InstabilityRun run;
    run.states.push_back(x0);
    run.v_values.push_back(sign * cond.adjoint.z0.dot(x0));
    Vector x = x0;
    for (int k = 0; k < m; ++k) {
        x = solve(problem, x, p).states().back();
        run.states.push_back(x);
        run.v_values.push_back(sign * cond.adjoint.z0.dot(x));
    }
    for (int k = 1; k <= m; ++k) {
        double dv = run.v_values[static_cast<std::size_t>(k)] -
                    run.v_values[static_cast<std::size_t>(k - 1)];
        run.mean_gain += dv;
        if (dv <= -1e-9)
            run.strictly_increasing = false;  // growth inequality violated
    }
    if (m > 0) run.mean_gain /= m;
    return run;
}

InstabilityRun instability_run(const SystemProblem& problem, const Vector& x0, int m) {
    return instability_run(problem, condition_44(problem), x0, m);
}

}  // namespace resonance::semilinear
