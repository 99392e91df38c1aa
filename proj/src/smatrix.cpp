#include "resonance/smatrix.hpp"

#include <algorithm>
#include <cmath>

namespace resonance::smatrix {

bool SpectralData::unit_circle_diagonal() const {
    for (const auto& c : clusters)
        if (c.on_unit_circle && !c.diagonal_block()) return false;
    return true;
}

int SpectralData::other_unit_circle_count() const {
    int k = 0;
    for (const auto& c : clusters)
        if (c.on_unit_circle && std::abs(c.value - std::complex<double>(1, 0)) > kEigClusterTol)
            ++k;
    return k;
}

const EigenCluster* SpectralData::cluster_near(std::complex<double> z, double tol) const {
    for (const auto& c : clusters)
        if (std::abs(c.value - z) <= tol) return &c;
    return nullptr;
}

Vector solve(const Matrix& M, const Vector& b) {
    if (M.rows() != M.cols() || M.rows() != b.size())
        throw std::invalid_argument("solve: dimension mismatch");
    Eigen::PartialPivLU<Matrix> lu(M);
    double norm = M.norm();
    double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (min_pivot <= 1e-13 * std::max(norm, 1e-300))
        throw SingularMatrixError("solve: matrix singular to working precision");
    return lu.solve(b);
}

SpectralData eigenvalues(const Matrix& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("eigenvalues: non-square matrix");
    const Eigen::Index n = M.rows();
    Eigen::EigenSolver<Matrix> es(M, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigenvalues: QR iteration failed to converge");

    SpectralData out;
    out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    for (const auto& z : out.eigenvalues) out.spectral_radius = std::max(out.spectral_radius, std::abs(z));

    const double cluster_tol = kEigClusterTol * std::max(1.0, M.norm());
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (std::size_t i = 0; i < out.eigenvalues.size(); ++i) {
        if (used[i]) continue;
        EigenCluster c;
        std::complex<double> sum = 0;
        int count = 0;
        for (std::size_t j = i; j < out.eigenvalues.size(); ++j) {
            if (!used[j] && std::abs(out.eigenvalues[j] - out.eigenvalues[i]) <= cluster_tol) {
                used[j] = true;
                sum += out.eigenvalues[j];
                ++count;
            }
        }
        c.value = sum / static_cast<double>(count);
        c.algebraic = count;
        c.on_unit_circle = std::fabs(std::abs(c.value) - 1.0) <= kUnitCircleTol;

        // Geometric multiplicity: kernel dimension of M - lambda I.
        Eigen::MatrixXcd A = M.cast<std::complex<double>>();
        for (Eigen::Index k = 0; k < n; ++k) A(k, k) -= c.value;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
        double smax = svd.singularValues()(0);
        int rank = 0;
        for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
            if (svd.singularValues()(k) > cluster_tol * std::max(1.0, smax)) ++rank;
        c.geometric = static_cast<int>(n) - rank;
        out.clusters.push_back(c);
    }
    return out;
}

Matrix null_space(const Matrix& M, double tol) {
    Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
    const Eigen::Index n = M.cols();
    double smax = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    // The scale floor of 1 keeps directions with tiny singular values in the
    // kernel even when the whole matrix is close to zero (e.g. I - X(p) for a
    // monodromy matrix near the identity).
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
        if (svd.singularValues()(k) > tol * std::max(smax, 1.0)) ++rank;
    return svd.matrixV().rightCols(n - rank);
}

RangeTest range_membership(const Matrix& M, const Vector& b, double tol) {
    Matrix K = null_space(M.transpose(), tol);
    RangeTest r;
    if (K.cols() == 0) {
        r.in_range = true;
        r.defect = 0;
        return r;
    }
    double proj = (K.transpose() * b).norm();
    r.defect = proj / std::max(b.norm(), 1.0);
    r.in_range = r.defect <= tol;
    return r;
}

}  // namespace resonance::smatrix
