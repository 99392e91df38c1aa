#include "resonance/ode.hpp"

#include <algorithm>
#include <cmath>

namespace resonance::ode {

namespace {

// Dormand-Prince 5(4) coefficients (Hairer, Norsett & Wanner, dopri5).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output coefficients.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

}  // namespace

Trajectory integrate(const Field& field, double t0, const Vector& x0, double t1,
                     const Options& opts) {
    const Eigen::Index n = x0.size();
    Trajectory traj;
    traj.t0_ = t0;
    traj.t1_ = t1;
    traj.times_.push_back(t0);
    traj.states_.push_back(x0);

    if (t1 == t0) return traj;
    const double dir = t1 > t0 ? 1.0 : -1.0;
    const double span = std::fabs(t1 - t0);

    Vector y = x0, y1(n), yerr(n);
    Vector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n);
    double t = t0;
    field(t, y, k1);
    if (!k1.allFinite()) throw IntegrationError("non-finite derivative", t);

    double h = dir * std::min({span / 10.0, 0.1, opts.max_step});
    const double hmin = 1e-14 * std::max(1.0, std::fabs(t0) + span);
    std::size_t max_steps = 100000000;

    while (dir * (t1 - t) > 0) {
        if (std::fabs(h) < hmin) throw IntegrationError("step-size underflow", t);
        if (dir * (t + h - t1) > 0) h = t1 - t;
        if (std::fabs(h) > opts.max_step) h = dir * opts.max_step;

        ytmp = y + h * (a21 * k1);
        field(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        field(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        field(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        field(t + c5 * h, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        field(t + h, ytmp, k6);
        y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        field(t + h, y1, k7);
        yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        if (!y1.allFinite()) throw IntegrationError("non-finite state", t);

        double err = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double sc = opts.abs_tol + opts.rel_tol * std::max(std::fabs(y[i]), std::fabs(y1[i]));
            double q = yerr[i] / sc;
            err += q * q;
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0) {
            Trajectory::Step st;
            st.t = t;
            st.h = h;
            st.r1 = y;
            st.r2 = y1 - y;
            st.r3 = h * k1 - st.r2;
            st.r4 = st.r2 - h * k7 - st.r3;
            st.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            traj.steps_.push_back(std::move(st));

            t += h;
            y.swap(y1);
            k1.swap(k7);  // FSAL
            traj.times_.push_back(t);
            traj.states_.push_back(y);
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
        h *= std::clamp(fac, 0.2, 5.0);
        if (--max_steps == 0) throw IntegrationError("step limit exceeded", t);
    }
    traj.t1_ = t;
    return traj;
}

Vector Trajectory::at(double t) const {
    if (steps_.empty()) return states_.front();
    const double dir = t1_ > t0_ ? 1.0 : -1.0;
    // Binary search for the step containing t.
    std::size_t lo = 0, hi = steps_.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (dir * (t - (steps_[mid].t + steps_[mid].h)) > 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    const Step& s = steps_[lo];
    // Stored sample times reproduce the stored states bit for bit.
    if (t == times_[lo]) return states_[lo];
    if (t == times_[lo + 1]) return states_[lo + 1];
    double th = (t - s.t) / s.h;
    double th1 = 1.0 - th;
    return s.r1 + th * (s.r2 + th1 * (s.r3 + th * (s.r4 + th1 * s.r5)));
}

QuadratureResult periodic_quadrature(const std::function<double(double)>& f, double p,
                                     double tol) {
    const int n_max = 1 << 20;
    int n = 16;
    double h = p / n;
    double sum = 0;
    for (int j = 0; j < n; ++j) sum += f(j * h);
    double value = sum * h;
    while (n < n_max) {
        // Refine: add the midpoints of the current grid.
        double add = 0;
        for (int j = 0; j < n; ++j) add += f((j + 0.5) * h);
        n *= 2;
        h = p / n;
        double next = value / 2 + add * h;
        bool converged = std::fabs(next - value) < tol * std::max(1.0, std::fabs(next));
        value = next;
        if (converged) return {value, n};
    }
    throw std::runtime_error("periodic_quadrature: no convergence at 2^20 nodes");
}

}  // namespace resonance::ode
