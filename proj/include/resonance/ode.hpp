#ifndef RESONANCE_ODE_HPP
#define RESONANCE_ODE_HPP

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <vector>

namespace resonance::ode {

using Vector = Eigen::VectorXd;
using Field = std::function<void(double t, const Vector& x, Vector& dx)>;

struct IntegrationError : std::runtime_error {
    IntegrationError(const std::string& msg, double t)
        : std::runtime_error(msg + " near t = " + std::to_string(t)), t(t) {}
    double t;
};

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double max_step = std::numeric_limits<double>::infinity();
};

/// Solution of an initial-value problem with dense output.  Immutable.
/// Dense evaluation uses the Dormand-Prince order-4 interpolant per step;
/// evaluation at a stored sample time reproduces the stored state exactly.
class Trajectory {
public:
    double t_begin() const { return t0_; }
    double t_end() const { return t1_; }

    // Dense evaluation anywhere in [t_begin, t_end] (or reversed range).
    Vector at(double t) const;

    const std::vector<double>& times() const { return times_; }
    const std::vector<Vector>& states() const { return states_; }

private:
    friend Trajectory integrate(const Field&, double, const Vector&, double, const Options&);
    struct Step {
        double t, h;
        Vector r1, r2, r3, r4, r5;  // interpolation coefficients
    };
    double t0_ = 0, t1_ = 0;
    std::vector<double> times_;
    std::vector<Vector> states_;
    std::vector<Step> steps_;
};

/// Adaptive embedded Runge-Kutta 5(4), Dormand-Prince pair.
/// Integrates forward for t1 > t0 and backward for t1 < t0.
Trajectory integrate(const Field& field, double t0, const Vector& x0, double t1,
                     const Options& opts = {});

struct QuadratureResult {
    double value;
    int nodes;
};

/// Integral of a smooth p-periodic function over one period: composite
/// trapezoid with node doubling until successive values agree.  Spectrally
/// accurate for smooth periodic integrands.
QuadratureResult periodic_quadrature(const std::function<double(double)>& f, double p,
                                     double tol = 1e-10);

}  // namespace resonance::ode

#endif
