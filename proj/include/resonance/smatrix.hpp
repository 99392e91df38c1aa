#ifndef RESONANCE_SMATRIX_HPP
#define RESONANCE_SMATRIX_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace resonance::smatrix {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Default tolerances; resonance detection depends on the rank tolerance,
// so it is surfaced in every downstream report.
inline constexpr double kRankTol = 1e-8;
inline constexpr double kEigClusterTol = 1e-7;
inline constexpr double kUnitCircleTol = 1e-7;

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EigenCluster {
    std::complex<double> value;  // cluster representative
    int algebraic = 0;
    int geometric = 0;
    bool on_unit_circle = false;
    bool diagonal_block() const { return geometric == algebraic; }
};

struct SpectralData {
    std::vector<std::complex<double>> eigenvalues;  // all n, with multiplicity
    std::vector<EigenCluster> clusters;
    double spectral_radius = 0;

    // All unit-circle eigenvalue clusters have diagonal Jordan blocks.
    bool unit_circle_diagonal() const;
    // Number of unit-circle clusters other than lambda = 1.
    int other_unit_circle_count() const;
    const EigenCluster* cluster_near(std::complex<double> z, double tol = kEigClusterTol) const;
};

/// LU with partial pivoting; throws SingularMatrixError when a pivot falls
/// below 1e-13 * ||M||.
Vector solve(const Matrix& M, const Vector& b);

/// Eigenvalues with algebraic multiplicities (clustered within
/// kEigClusterTol * max(1, ||M||)) and geometric multiplicities from the
/// rank of M - lambda I.
SpectralData eigenvalues(const Matrix& M);

/// Orthonormal basis of the kernel (columns); singular directions are those
/// with singular value < tol * largest singular value.
Matrix null_space(const Matrix& M, double tol = kRankTol);

struct RangeTest {
    bool in_range = false;
    double defect = 0;  // ||P_null(M^T) b|| / max(||b||, 1)
};

/// Fredholm test: b is in range(M) iff it is orthogonal to null(M^T).
RangeTest range_membership(const Matrix& M, const Vector& b, double tol = kRankTol);

}  // namespace resonance::smatrix

#endif
