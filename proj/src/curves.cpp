#include "resonance/curves.hpp"

#include <cmath>

namespace resonance::curves {

Eigen::MatrixXd spectral_derivative(int n, double period) {
    if (n % 2 != 0) throw std::invalid_argument("spectral_derivative: N must be even");
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    const double h = 2.0 * M_PI / n;
    const double scale = 2.0 * M_PI / period;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            if (j == k) continue;
            int d = j - k;
            double sgn = (d % 2 == 0) ? 1.0 : -1.0;
            D(j, k) = scale * 0.5 * sgn / std::tan(0.5 * d * h);
        }
    return D;
}

Eigen::MatrixXd spectral_second_derivative(int n, double period) {
    if (n % 2 != 0) throw std::invalid_argument("spectral_second_derivative: N must be even");
    Eigen::MatrixXd D2 = Eigen::MatrixXd::Zero(n, n);
    const double h = 2.0 * M_PI / n;
    const double scale2 = std::pow(2.0 * M_PI / period, 2);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            if (j == k) {
                D2(j, k) = -scale2 * (M_PI * M_PI / (3.0 * h * h) + 1.0 / 6.0);
            } else {
                int d = j - k;
                double sgn = (d % 2 == 0) ? 1.0 : -1.0;
                double s = std::sin(0.5 * d * h);
                D2(j, k) = -scale2 * sgn * 0.5 / (s * s);
            }
        }
    return D2;
}

std::vector<std::pair<double, double>> Orbit::fourier() const {
    const int n = static_cast<int>(nodes.size());
    std::vector<std::pair<double, double>> coeffs;
    const double w = 2.0 * M_PI / n;
    for (int k = 1; k <= n / 2; ++k) {
        double a = 0, b = 0;
        for (int j = 0; j < n; ++j) {
            a += nodes(j) * std::cos(k * w * j);
            b += nodes(j) * std::sin(k * w * j);
        }
        double norm = (k == n / 2) ? 1.0 / n : 2.0 / n;
        coeffs.emplace_back(norm * a, k == n / 2 ? 0.0 : norm * b);
    }
    return coeffs;
}

double Orbit::at(double t) const {
    const int n = static_cast<int>(nodes.size());
    auto coeffs = fourier();
    const double w = 2.0 * M_PI / period;
    double mean_v = nodes.mean();
    double v = mean_v;
    for (int k = 1; k <= n / 2; ++k) {
        v += coeffs[static_cast<std::size_t>(k - 1)].first * std::cos(k * w * t) +
             coeffs[static_cast<std::size_t>(k - 1)].second * std::sin(k * w * t);
    }
    return v;
}

double Orbit::l2_norm() const {
    const double h = period / static_cast<double>(nodes.size());
    return std::sqrt(h * nodes.squaredNorm());
}

double Orbit::l2_deriv_norm() const {
    Eigen::VectorXd d = spectral_derivative(static_cast<int>(nodes.size()), period) * nodes;
    const double h = period / static_cast<double>(nodes.size());
    return std::sqrt(h * d.squaredNorm());
}

namespace {

struct NewtonResult {
    bool converged = false;
    double residual = 0;
};

// One Newton solve at fixed N.  Unknowns: N node values of X plus mu;
// equations: collocation residual at each node plus the zero-mean constraint.
NewtonResult newton_solve(const CurveProblem& pb, double xi, int n, Orbit& orbit) {
    const double p = pb.period;
    Eigen::MatrixXd D1 = spectral_derivative(n, p);
    Eigen::MatrixXd L = pb.order == CurveProblem::Order::First
                            ? D1
                            : (spectral_second_derivative(n, p) + pb.lambda * D1).eval();

    Eigen::VectorXd tj(n), ej(n), aj = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j) {
        tj(j) = p * j / n;
        ej(j) = pb.e ? pb.e(tj(j)) : 0.0;
        if (pb.a) aj(j) = pb.a(tj(j));
    }

    Eigen::VectorXd X = orbit.nodes;
    double mu = orbit.mu;
    auto residual = [&](const Eigen::VectorXd& Xv, double muv, Eigen::VectorXd& R) {
        R.resize(n + 1);
        Eigen::VectorXd LX = L * Xv;
        for (int j = 0; j < n; ++j) {
            double x = xi + Xv(j);
            R(j) = LX(j) + aj(j) * x + pb.g(x) - muv - ej(j);
        }
        R(n) = Xv.mean();
    };

    Eigen::VectorXd R(n + 1), Rnew(n + 1);
    residual(X, mu, R);
    double best = R.cwiseAbs().maxCoeff();
    for (int it = 0; it < 50; ++it) {
        if (best <= 1e-10) break;
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n + 1, n + 1);
        J.topLeftCorner(n, n) = L;
        for (int j = 0; j < n; ++j) {
            J(j, j) += aj(j) + pb.g_prime(xi + X(j));
            J(j, n) = -1.0;
            J(n, j) = 1.0 / n;
        }
        Eigen::VectorXd step = J.partialPivLu().solve(-R);
        double lam = 1.0;
        for (int half = 0;; ++half) {
            Eigen::VectorXd Xc = X + lam * step.head(n);
            double muc = mu + lam * step(n);
            residual(Xc, muc, Rnew);
            double cand = Rnew.cwiseAbs().maxCoeff();
            if (cand < best || half >= 12) {
                X = Xc;
                mu = muc;
                R = Rnew;
                best = cand;
                break;
            }
            lam *= 0.5;
        }
    }
    orbit.nodes = X;
    orbit.mu = mu;
    orbit.residual = best;
    return {best <= 1e-10, best};
}

}  // namespace

Orbit solve_orbit_at_xi(const CurveProblem& problem, double xi, const Orbit* warm_start,
                        int n_nodes) {
    double best = std::numeric_limits<double>::infinity();
    for (int n = n_nodes; n <= 1024; n *= 2) {
        Orbit orbit;
        orbit.xi = xi;
        orbit.period = problem.period;
        orbit.order = problem.order;
        orbit.nodes = Eigen::VectorXd::Zero(n);
        orbit.mu = 0.0;
        if (warm_start) {
            orbit.mu = warm_start->mu;
            for (int j = 0; j < n; ++j)
                orbit.nodes(j) = warm_start->at(problem.period * j / n);
            orbit.nodes.array() -= orbit.nodes.mean();
        }
        auto r = newton_solve(problem, xi, n, orbit);
        if (r.converged) return orbit;
        best = std::min(best, r.residual);
    }
    throw NewtonFailure("solve_orbit_at_xi: no convergence up to N = 1024 (best residual " +
                            std::to_string(best) + ")",
                        best);
}

std::vector<std::pair<double, double>> SolutionCurve::mu_of_xi() const {
    std::vector<std::pair<double, double>> out;
    for (const auto& pt : points)
        if (pt.ok) out.emplace_back(pt.xi, pt.orbit.mu);
    return out;
}

SolutionCurve trace_curve(const CurveProblem& problem, const std::vector<double>& xi_grid,
                          int n_nodes) {
    SolutionCurve curve;
    const Orbit* warm = nullptr;
    for (double xi : xi_grid) {
        CurvePoint pt;
        pt.xi = xi;
        try {
            pt.orbit = solve_orbit_at_xi(problem, xi, warm, n_nodes);
            pt.ok = true;
        } catch (const std::exception& ex) {
            pt.error = ex.what();
            warm = nullptr;
        }
        curve.points.push_back(std::move(pt));
        if (curve.points.back().ok) warm = &curve.points.back().orbit;
    }
    return curve;
}

std::vector<std::pair<double, double>> figure1_table(const SolutionCurve& curve) {
    std::vector<std::pair<double, double>> out;
    for (const auto& pt : curve.points)
        if (pt.ok) out.emplace_back(pt.orbit.mu, pt.xi);
    return out;
}

}  // namespace resonance::curves
