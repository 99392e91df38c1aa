#ifndef RESONANCE_CURVES_HPP
#define RESONANCE_CURVES_HPP

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "resonance/ode.hpp"

namespace resonance::curves {

/// Periodic problem whose orbits are traced as a solution curve in the
/// average xi: first order x' + a(t) x + g(x) = mu + e(t) (a optional) or
/// second order x'' + lambda x' + g(x) = mu + e(t).
struct CurveProblem {
    enum class Order { First, Second };
    Order order = Order::First;
    double period = 0;
    double lambda = 0;                         // second-order damping
    std::function<double(double)> a;           // optional, first order only
    std::function<double(double)> g, g_prime;  // nonlinearity
    std::function<double(double)> e;           // zero-average forcing
};

/// Periodic orbit decomposed as x(t) = xi + X(t) with zero-mean X held at
/// N equispaced collocation nodes.
struct Orbit {
    double xi = 0;
    double mu = 0;
    double period = 0;
    Eigen::VectorXd nodes;  // X(t_j), t_j = j p / N
    double residual = 0;    // max collocation residual
    CurveProblem::Order order = CurveProblem::Order::First;

    double node_time(int j) const { return period * j / static_cast<double>(nodes.size()); }
    double mean() const { return nodes.mean(); }
    double sup_norm() const { return nodes.cwiseAbs().maxCoeff(); }

    // Trigonometric interpolation of X at any t.
    double at(double t) const;
    // Cosine/sine coefficient pairs for harmonics 1 .. N/2.
    std::vector<std::pair<double, double>> fourier() const;
    // Discrete L2 norms of X and X' over one period.
    double l2_norm() const;
    double l2_deriv_norm() const;
};

struct NewtonFailure : std::runtime_error {
    NewtonFailure(const std::string& msg, double best)
        : std::runtime_error(msg), best_residual(best) {}
    double best_residual;
};

/// Solve for the unique (mu, X) at a given average xi by trigonometric
/// collocation with spectral differentiation and damped Newton.  Doubles N
/// up to 1024 on non-convergence.
Orbit solve_orbit_at_xi(const CurveProblem& problem, double xi,
                        const Orbit* warm_start = nullptr, int n_nodes = 64);

struct CurvePoint {
    double xi = 0;
    bool ok = false;
    Orbit orbit;
    std::string error;
};

struct SolutionCurve {
    std::vector<CurvePoint> points;
    // Successful points only, as (xi, mu).
    std::vector<std::pair<double, double>> mu_of_xi() const;
};

/// March the xi grid with warm starts (natural continuation in the global
/// parameter xi).  Per-point failures are recorded and the march restarts
/// cold from the next grid point.
SolutionCurve trace_curve(const CurveProblem& problem, const std::vector<double>& xi_grid,
                          int n_nodes = 64);

/// The (nu = mu(xi), xi) table of the inverse presentation.
std::vector<std::pair<double, double>> figure1_table(const SolutionCurve& curve);

// Spectral differentiation matrices for N (even) equispaced nodes, period p.
Eigen::MatrixXd spectral_derivative(int n_nodes, double period);
Eigen::MatrixXd spectral_second_derivative(int n_nodes, double period);

}  // namespace resonance::curves

#endif
