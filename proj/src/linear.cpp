#include "resonance/linear.hpp"

#include <cmath>
#include <sstream>

namespace resonance::linear {

Vector PeriodicSystem::forcing_at(double t) const {
    if (forcing) return forcing(t);
    return Vector::Zero(dim);
}

void PeriodicSystem::validate() const {
    if (dim <= 0 || period <= 0)
        throw std::invalid_argument("PeriodicSystem: dimension and period must be positive");
    double dm = (coefficient_at(0.0) - coefficient_at(period)).norm();
    double dq = (forcing_at(0.0) - forcing_at(period)).norm();
    if (dm > 1e-10 || dq > 1e-10)
        throw std::invalid_argument("PeriodicSystem: coefficients not p-periodic (|M(0)-M(p)| = " +
                                    std::to_string(dm) + ", |q(0)-q(p)| = " + std::to_string(dq) +
                                    ")");
}

PeriodicSystem system_from_expressions(double period,
                                       const std::vector<std::vector<expr::Expression>>& matrix,
                                       const std::vector<expr::Expression>& forcing,
                                       const std::vector<double>& params, std::string note) {
    const int n = static_cast<int>(matrix.size());
    PeriodicSystem sys;
    sys.dim = n;
    sys.period = period;
    sys.note = std::move(note);
    sys.coefficient = [matrix, params, n](double t) {
        std::vector<double> v;
        v.reserve(params.size() + 1);
        v.push_back(t);
        v.insert(v.end(), params.begin(), params.end());
        Matrix M(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(i, j) = matrix[i][j].eval(v);
        return M;
    };
    if (!forcing.empty()) {
        sys.forcing = [forcing, params, n](double t) {
            std::vector<double> v;
            v.reserve(params.size() + 1);
            v.push_back(t);
            v.insert(v.end(), params.begin(), params.end());
            Vector q(n);
            for (int i = 0; i < n; ++i) q(i) = forcing[i].eval(v);
            return q;
        };
    }
    return sys;
}

MatrixFlow::MatrixFlow(std::function<Matrix(double)> coeff, int dim, double t_end,
                       const ode::Options& opts)
    : dim_(dim) {
    const int n = dim;
    ode::Field field = [coeff, n](double t, const ode::Vector& y, ode::Vector& dy) {
        Eigen::Map<const Matrix> Y(y.data(), n, n);
        Matrix D = coeff(t) * Y;
        dy = Eigen::Map<const ode::Vector>(D.data(), n * n);
    };
    ode::Vector y0 = Eigen::Map<const ode::Vector>(Matrix::Identity(n, n).eval().data(), n * n);
    traj_ = ode::integrate(field, 0.0, y0, t_end, opts);
}

Matrix MatrixFlow::at(double t) const {
    ode::Vector y = traj_.at(t);
    return Eigen::Map<const Matrix>(y.data(), dim_, dim_);
}

Matrix fundamental_matrix(const PeriodicSystem& sys, double t) {
    MatrixFlow flow(sys.coefficient, sys.dim, t);
    return flow.at(t);
}

Matrix adjoint_fundamental(const PeriodicSystem& sys, double t) {
    auto M = sys.coefficient;
    MatrixFlow flow([M](double s) { return (-M(s).transpose()).eval(); }, sys.dim, t);
    return flow.at(t);
}

MonodromyReport monodromy_report(const PeriodicSystem& sys, double rank_tol,
                                 const ode::Options& opts) {
    MonodromyReport rep;
    rep.dim = sys.dim;
    rep.period = sys.period;
    rep.rank_tol = rank_tol;
    rep.monodromy = [&] {
        MatrixFlow flow(sys.coefficient, sys.dim, sys.period, opts);
        return flow.at(sys.period);
    }();
    rep.spectrum = smatrix::eigenvalues(rep.monodromy);

    // b = X(p) int_0^p X^{-1}(s) q(s) ds, computed as the one-period forced
    // response from x0 = 0; equivalent via the variation-of-parameters formula.
    if (sys.forcing) {
        ode::Field field = [&sys](double t, const ode::Vector& x, ode::Vector& dx) {
            dx = sys.coefficient(t) * x + sys.forcing(t);
        };
        rep.b = ode::integrate(field, 0.0, Vector::Zero(sys.dim), sys.period, opts)
                    .states()
                    .back();
    } else {
        rep.b = Vector::Zero(sys.dim);
    }

    Matrix IX = Matrix::Identity(sys.dim, sys.dim) - rep.monodromy;
    rep.resonant = smatrix::null_space(IX, rank_tol).cols() > 0;
    return rep;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::NonResonant: return "NonResonant";
        case Verdict::Case1AllUnbounded: return "Case1_AllUnbounded";
        case Verdict::Case2iPeriodicPlusUnbounded: return "Case2i_PeriodicPlusUnbounded";
        case Verdict::Case2iiAllApproachPeriodic: return "Case2ii_AllApproachPeriodic";
        case Verdict::Case2iiiAllBounded: return "Case2iii_AllBounded";
        case Verdict::UncoveredJordanBlock: return "Uncovered_by_classification";
    }
    return "?";
}

std::string Classification::summary() const {
    std::ostringstream os;
    os << verdict_name(verdict) << "; spectral radius " << spectral_radius << "; rank tol "
       << rank_tol;
    if (nonresonant_stability) {
        os << "; periodic solution "
           << (*nonresonant_stability == Stability::Stable     ? "stable"
               : *nonresonant_stability == Stability::Unstable ? "unstable"
                                                               : "marginal");
    }
    if (verdict == Verdict::Case1AllUnbounded) os << "; range defect " << range_defect;
    return os.str();
}

Classification classify(const MonodromyReport& rep) {
    Classification c;
    c.spectral_radius = rep.spectrum.spectral_radius;
    c.rank_tol = rep.rank_tol;
    for (const auto& cl : rep.spectrum.clusters)
        if (cl.on_unit_circle) c.unit_circle.push_back(cl);

    if (!rep.resonant) {
        c.verdict = Verdict::NonResonant;
        double rho = rep.spectrum.spectral_radius;
        if (rho < 1.0 - smatrix::kUnitCircleTol)
            c.nonresonant_stability = Stability::Stable;
        else if (rho > 1.0 + smatrix::kUnitCircleTol)
            c.nonresonant_stability = Stability::Unstable;
        else
            c.nonresonant_stability = Stability::Marginal;
        return c;
    }

    Matrix IX = Matrix::Identity(rep.dim, rep.dim) - rep.monodromy;
    auto range = smatrix::range_membership(IX, rep.b, rep.rank_tol);
    c.range_defect = range.defect;
    if (!range.in_range) {
        c.verdict = Verdict::Case1AllUnbounded;
        return c;
    }

    if (rep.spectrum.spectral_radius > 1.0 + smatrix::kUnitCircleTol) {
        c.verdict = Verdict::Case2iPeriodicPlusUnbounded;
        return c;
    }
    // rho = 1 here (an eigenvalue 1 exists, so rho >= 1).
    if (!rep.spectrum.unit_circle_diagonal()) {
        c.verdict = Verdict::UncoveredJordanBlock;
        return c;
    }
    c.verdict = rep.spectrum.other_unit_circle_count() == 0
                    ? Verdict::Case2iiAllApproachPeriodic
                    : Verdict::Case2iiiAllBounded;
    return c;
}

PeriodicInitialSet periodic_initial_set(const MonodromyReport& rep) {
    Matrix IX = Matrix::Identity(rep.dim, rep.dim) - rep.monodromy;
    PeriodicInitialSet out;
    out.kernel = smatrix::null_space(IX, rep.rank_tol);
    auto range = smatrix::range_membership(IX, rep.b, rep.rank_tol);
    if (!range.in_range) return out;
    if (out.kernel.cols() == 0) {
        out.particular = smatrix::solve(IX, rep.b);
        return out;
    }
    // Minimum-norm solution of the singular system via the pseudoinverse.
    Eigen::JacobiSVD<Matrix> svd(IX, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smax = svd.singularValues()(0);
    Vector x0 = Vector::Zero(rep.dim);
    Vector ub = svd.matrixU().transpose() * rep.b;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
        double s = svd.singularValues()(k);
        if (s > rep.rank_tol * std::max(smax, 1e-300)) x0 += (ub(k) / s) * svd.matrixV().col(k);
    }
    out.particular = x0;
    return out;
}

Vector massera_witness(const MonodromyReport& rep) {
    Matrix IX = Matrix::Identity(rep.dim, rep.dim) - rep.monodromy;
    auto range = smatrix::range_membership(IX, rep.b, rep.rank_tol);
    if (!rep.resonant || range.in_range)
        throw std::invalid_argument("massera_witness: report is not Case 1");
    Matrix K = smatrix::null_space(IX.transpose(), rep.rank_tol);
    Vector v0 = K * (K.transpose() * rep.b);  // kernel component of b
    double nrm = v0.norm();
    if (nrm == 0) throw std::runtime_error("massera_witness: degenerate kernel projection");
    return v0 / nrm;
}

Vector iterate_formula(const MonodromyReport& rep, const Vector& x0, int m) {
    if (m < 0) throw std::invalid_argument("iterate_formula: m must be >= 0");
    Vector x = x0;
    for (int k = 0; k < m; ++k) {
        x = rep.monodromy * x + rep.b;
        if (!x.allFinite())
            throw std::overflow_error("iterate_formula: numerically unbounded at m = " +
                                      std::to_string(k + 1));
    }
    return x;
}

Solvability solvability_test(const PeriodicSystem& sys, double rank_tol) {
    const int n = sys.dim;
    auto M = sys.coefficient;
    MatrixFlow zflow([M](double s) { return (-M(s).transpose()).eval(); }, n, sys.period);
    Matrix Zp = zflow.at(sys.period);
    Matrix K = smatrix::null_space(Matrix::Identity(n, n) - Zp, rank_tol);
    if (K.cols() == 0)
        throw std::invalid_argument("solvability_test: system is not resonant");

    Solvability out;
    out.solvable = true;
    for (Eigen::Index j = 0; j < K.cols(); ++j) {
        Vector z0 = K.col(j);
        double scale = 1.0;
        auto integrand = [&](double t) {
            double v = sys.forcing_at(t).dot(zflow.at(t) * z0);
            return v;
        };
        for (int s = 0; s < 64; ++s)
            scale = std::max(scale, sys.period * std::fabs(integrand(s * sys.period / 64)));
        double r = ode::periodic_quadrature(integrand, sys.period).value;
        out.residuals.push_back(r);
        if (std::fabs(r) > 1e-8 * scale) out.solvable = false;
    }
    return out;
}

PositiveAdjoint positive_adjoint_solution(const PeriodicSystem& sys) {
    const int n = sys.dim;
    auto M = sys.coefficient;
    auto adjoint_field = [M](double s) { return (-M(s).transpose()).eval(); };

    PositiveAdjoint out;
    out.flow = MatrixFlow(adjoint_field, n, sys.period);
    Matrix Zp = out.flow.at(sys.period);
    auto spec = smatrix::eigenvalues(Zp);

    // Sampled sufficient hypotheses (Perron route; 2x2 trace route).
    out.offdiag_positive = true;
    for (int s = 0; s < 128 && out.offdiag_positive; ++s) {
        Matrix B = adjoint_field(s * sys.period / 128);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && B(i, j) <= 0) out.offdiag_positive = false;
    }
    double trace_integral =
        ode::periodic_quadrature([&](double t) { return adjoint_field(t).trace(); }, sys.period)
            .value;
    out.trace_nonpositive = trace_integral <= 1e-9;

    const auto* unit = spec.cluster_near({1.0, 0.0}, smatrix::kUnitCircleTol);
    if (!unit || spec.spectral_radius > 1.0 + smatrix::kUnitCircleTol) {
        out.status = AdjointStatus::NoUnitPerronEigenvalue;
        return out;
    }

    Matrix K = smatrix::null_space(Matrix::Identity(n, n) - Zp, smatrix::kRankTol);
    if (K.cols() == 0) {
        out.status = AdjointStatus::NoUnitPerronEigenvalue;
        return out;
    }
    // Positive vector in the eigenspace: project (1,...,1) onto it.
    Vector xi = K * (K.transpose() * Vector::Ones(n));
    if (xi.sum() < 0) xi = -xi;
    if ((xi.array() <= 0).any()) {
        out.status = AdjointStatus::EigenvectorNotPositive;
        return out;
    }
    xi *= static_cast<double>(n) / xi.sum();  // normalize: components sum to n
    out.z0 = xi;

    // Componentwise positivity of z(t) = Z(t) xi on a 512-point grid.
    for (int s = 0; s <= 512; ++s) {
        Vector z = out.flow.at(s * sys.period / 512) * xi;
        if ((z.array() <= 0).any()) {
            out.status = AdjointStatus::EigenvectorNotPositive;
            return out;
        }
    }
    out.integrals.resize(n);
    for (int i = 0; i < n; ++i)
        out.integrals[static_cast<std::size_t>(i)] =
            ode::periodic_quadrature([&](double t) { return (out.flow.at(t) * xi)(i); },
                                     sys.period)
                .value;
    return out;
}

TuneResult tune_to_resonance(const std::function<PeriodicSystem(double)>& family,
                             double kappa_lo, double kappa_hi) {
    auto phi = [&](double k) {
        PeriodicSystem sys = family(k);
        Matrix Zp = adjoint_fundamental(sys, sys.period);
        return (Matrix::Identity(sys.dim, sys.dim) - Zp).determinant();
    };
    double flo = phi(kappa_lo), fhi = phi(kappa_hi);
    if (std::fabs(flo) <= 1e-10) return {kappa_lo, family(kappa_lo)};
    if (std::fabs(fhi) <= 1e-10) return {kappa_hi, family(kappa_hi)};
    if (flo * fhi > 0)
        throw std::invalid_argument("tune_to_resonance: no sign change on bracket");
    double lo = kappa_lo, hi = kappa_hi;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = phi(mid);
        if (std::fabs(fm) <= 1e-10 || hi - lo < 1e-15 * std::max(1.0, std::fabs(mid)))
            return {mid, family(mid)};
        if (flo * fm <= 0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    throw std::runtime_error("tune_to_resonance: bisection did not reach tolerance");
}

}  // namespace resonance::linear
