#ifndef RESONANCE_LINEAR_HPP
#define RESONANCE_LINEAR_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "resonance/expr.hpp"
#include "resonance/ode.hpp"
#include "resonance/smatrix.hpp"

namespace resonance::linear {

using smatrix::Matrix;
using smatrix::Vector;

/// Linear periodic system in canonical form x' = M(t) x + q(t).
/// Problems stated as x' + A(t) x + ... are stored with M = -A; `note`
/// records the source form.
struct PeriodicSystem {
    int dim = 0;
    double period = 0;
    std::function<Matrix(double)> coefficient;        // M(t)
    std::function<Vector(double)> forcing;            // q(t); null means zero
    std::string note;

    Matrix coefficient_at(double t) const { return coefficient(t); }
    Vector forcing_at(double t) const;

    // Sampled periodicity check of M and q; throws on violation.
    void validate() const;
};

/// Build a system from expression-valued entries in the variable "t".
/// Additional variables in `vars` beyond "t" are bound to `params`.
PeriodicSystem system_from_expressions(double period,
                                       const std::vector<std::vector<expr::Expression>>& matrix,
                                       const std::vector<expr::Expression>& forcing,
                                       const std::vector<double>& params = {},
                                       std::string note = {});

/// Dense solution of the matrix initial-value problem Y' = C(t) Y, Y(0) = I,
/// stored flattened column-major.  Used for fundamental and adjoint matrices.
class MatrixFlow {
public:
    MatrixFlow() = default;
    MatrixFlow(std::function<Matrix(double)> coeff, int dim, double t_end,
               const ode::Options& opts = {});
    Matrix at(double t) const;
    int dim() const { return dim_; }

private:
    int dim_ = 0;
    ode::Trajectory traj_;
};

/// Fundamental matrix X(t) of x' = M(t) x with X(0) = I.
Matrix fundamental_matrix(const PeriodicSystem& sys, double t);

/// Adjoint fundamental matrix Z(t), Z' = -M(t)^T Z, Z(0) = I.
/// Satisfies Z(t)^T X(t) = I.
Matrix adjoint_fundamental(const PeriodicSystem& sys, double t);

struct MonodromyReport {
    int dim = 0;
    double period = 0;
    Matrix monodromy;               // X(p)
    smatrix::SpectralData spectrum;
    Vector b;                       // one-period forced response from x0 = 0
    bool resonant = false;          // 1 in spec X(p) at the stated tolerance
    double rank_tol = smatrix::kRankTol;
};

MonodromyReport monodromy_report(const PeriodicSystem& sys,
                                 double rank_tol = smatrix::kRankTol,
                                 const ode::Options& opts = {});

enum class Verdict {
    NonResonant,
    Case1AllUnbounded,
    Case2iPeriodicPlusUnbounded,
    Case2iiAllApproachPeriodic,
    Case2iiiAllBounded,
    UncoveredJordanBlock,  // unit-circle eigenvalue with geometric < algebraic
};

enum class Stability { Stable, Unstable, Marginal };

struct Classification {
    Verdict verdict = Verdict::NonResonant;
    double spectral_radius = 0;
    double range_defect = 0;
    double rank_tol = smatrix::kRankTol;
    std::optional<Stability> nonresonant_stability;
    std::vector<smatrix::EigenCluster> unit_circle;  // evidence
    std::string summary() const;
};

const char* verdict_name(Verdict v);

/// Decision tree of the extended Massera classification.
Classification classify(const MonodromyReport& rep);

struct PeriodicInitialSet {
    std::optional<Vector> particular;  // minimum-norm solution of (I - X(p)) x0 = b
    Matrix kernel;                     // orthonormal basis of null(I - X(p))
};

PeriodicInitialSet periodic_initial_set(const MonodromyReport& rep);

/// Unit vector v0 in null((I - X(p))^T) maximizing |(b, v0)|; valid only in
/// Case 1, where (b, v0) != 0 and (x(mp), v0) = (x0, v0) + m (b, v0).
Vector massera_witness(const MonodromyReport& rep);

/// Iterate x(mp) = X(p)^m x0 + sum_{k<m} X(p)^k b by repeated multiplication.
Vector iterate_formula(const MonodromyReport& rep, const Vector& x0, int m);

struct Solvability {
    bool solvable = false;
    std::vector<double> residuals;  // one per periodic adjoint basis solution
};

/// Orthogonality of the forcing against every periodic adjoint solution.
/// Throws std::invalid_argument on non-resonant input.
Solvability solvability_test(const PeriodicSystem& sys,
                             double rank_tol = smatrix::kRankTol);

enum class AdjointStatus { Ok, NoUnitPerronEigenvalue, EigenvectorNotPositive };

struct PositiveAdjoint {
    AdjointStatus status = AdjointStatus::Ok;
    Vector z0;                       // initial value of the periodic solution
    std::vector<double> integrals;   // per-component integral of z_i over one period
    bool offdiag_positive = false;   // sampled hypothesis of the Perron route
    bool trace_nonpositive = false;  // integral of trace of the adjoint field <= 0
    MatrixFlow flow;                 // Z(t) over [0, p]
    Vector z_at(double t) const { return flow.at(t) * z0; }
};

/// Positive periodic solution of the adjoint system z' = -M(t)^T z, obtained
/// from the Perron eigenvector of Z(p) when the Perron eigenvalue is 1.
/// z0 is normalized so its components sum to dim.
PositiveAdjoint positive_adjoint_solution(const PeriodicSystem& sys);

struct TuneResult {
    double kappa = 0;
    PeriodicSystem system;
};

/// Bisection on det(I - Z_kappa(p)) to manufacture resonant instances.
TuneResult tune_to_resonance(const std::function<PeriodicSystem(double)>& family,
                             double kappa_lo, double kappa_hi);

}  // namespace resonance::linear

#endif
