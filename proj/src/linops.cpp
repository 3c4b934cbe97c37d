#include "kalmi/linops.hpp"

#include <cmath>
#include <string>

namespace kalmi {

SymMatrix::SymMatrix(const Matrix& m) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("symmetric matrix must be square, got " +
                                std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
    if (m.rows() < 1) throw DimensionMismatch("symmetric matrix must have dim >= 1");

    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (!(asym <= 1e-12 * scale))
        throw std::invalid_argument("matrix is asymmetric beyond tolerance: max |M - M^T| = " +
                                    std::to_string(asym));
    mat_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::identity(Eigen::Index dim) {
    return SymMatrix(Matrix::Identity(dim, dim));
}

SymMatrix SymMatrix::zero(Eigen::Index dim) {
    return SymMatrix(Matrix::Zero(dim, dim));
}

SpdCholesky::SpdCholesky(const SymMatrix& m) {
    const Eigen::Index n = m.dim();
    const Matrix& a = m.mat();
    lower_ = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double pivot = a(j, j) - lower_.row(j).head(j).squaredNorm();
        if (!(pivot > kPivotFloor)) return;  // ok_ stays false
        const double ljj = std::sqrt(pivot);
        lower_(j, j) = ljj;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            lower_(i, j) =
                (a(i, j) - lower_.row(i).head(j).dot(lower_.row(j).head(j))) / ljj;
        }
    }
    ok_ = true;
}

double SpdCholesky::log_det() const {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < lower_.rows(); ++j) acc += std::log(lower_(j, j));
    return 2.0 * acc;
}

Matrix SpdCholesky::solve(const Matrix& b) const {
    Matrix y = lower_.triangularView<Eigen::Lower>().solve(b);
    return lower_.transpose().triangularView<Eigen::Upper>().solve(y);
}

Vector SpdCholesky::solve(const Vector& b) const {
    Vector y = lower_.triangularView<Eigen::Lower>().solve(b);
    return lower_.transpose().triangularView<Eigen::Upper>().solve(y);
}

bool is_spd(const SymMatrix& m) noexcept { return SpdCholesky(m).ok(); }

double log_det_spd(const SymMatrix& m) {
    SpdCholesky chol(m);
    if (!chol.ok())
        throw NotPositiveDefinite("log_det of a " + std::to_string(m.dim()) +
                                  "-dim matrix");
    return chol.log_det();
}

std::optional<Matrix> psd_factor(const SymMatrix& m, double pivot_tol) {
    const Eigen::Index n = m.dim();
    const Matrix& a = m.mat();
    Matrix lower = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double pivot = a(j, j) - lower.row(j).head(j).squaredNorm();
        if (pivot < -pivot_tol) return std::nullopt;
        if (pivot <= pivot_tol) {
            // Rank-deficient direction: the residual column must vanish too,
            // otherwise the matrix is indefinite (e.g. [[0,1],[1,0]]).
            for (Eigen::Index i = j + 1; i < n; ++i) {
                const double resid =
                    a(i, j) - lower.row(i).head(j).dot(lower.row(j).head(j));
                if (std::abs(resid) > std::sqrt(pivot_tol * std::max(1.0, a(i, i))))
                    return std::nullopt;
            }
            continue;  // leaves a zero column in the factor
        }
        const double ljj = std::sqrt(pivot);
        lower(j, j) = ljj;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            lower(i, j) =
                (a(i, j) - lower.row(i).head(j).dot(lower.row(j).head(j))) / ljj;
        }
    }
    return lower;
}

JointGaussian::JointGaussian(Vector mean_x, Vector mean_y, SymMatrix sxx,
                             SymMatrix syy, Matrix sxy)
    : mean_x_(std::move(mean_x)),
      mean_y_(std::move(mean_y)),
      sxx_(std::move(sxx)),
      syy_(std::move(syy)),
      sxy_(std::move(sxy)) {
    if (mean_x_.size() != sxx_.dim())
        throw DimensionMismatch("mean_x length vs sxx dim");
    if (mean_y_.size() != syy_.dim())
        throw DimensionMismatch("mean_y length vs syy dim");
    if (sxy_.rows() != sxx_.dim() || sxy_.cols() != syy_.dim())
        throw DimensionMismatch("sxy must be dim(x) x dim(y)");
    if (!is_spd(assembled()))
        throw NotPositiveDefinite("assembled joint covariance");
}

JointGaussian::JointGaussian(SymMatrix sxx, SymMatrix syy, Matrix sxy)
    : JointGaussian(Vector::Zero(sxx.dim()), Vector::Zero(syy.dim()), sxx, syy,
                    std::move(sxy)) {}

SymMatrix JointGaussian::assembled() const {
    const Eigen::Index n = dim_x(), m = dim_y();
    Matrix full(n + m, n + m);
    full.topLeftCorner(n, n) = sxx_.mat();
    full.topRightCorner(n, m) = sxy_;
    full.bottomLeftCorner(m, n) = sxy_.transpose();
    full.bottomRightCorner(m, m) = syy_.mat();
    return SymMatrix(full);
}

SchurDetCheck schur_det_check(const JointGaussian& joint) {
    const double full = log_det_spd(joint.assembled());

    SpdCholesky chol_xx(joint.sxx());
    if (!chol_xx.ok()) throw NotPositiveDefinite("sxx block");
    // syy - syx sxx^-1 sxy
    Matrix schur_of_xx =
        joint.syy().mat() - joint.sxy().transpose() * chol_xx.solve(joint.sxy());
    const double via_xx =
        chol_xx.log_det() + log_det_spd(SymMatrix(symmetrized(schur_of_xx)));

    SpdCholesky chol_yy(joint.syy());
    if (!chol_yy.ok()) throw NotPositiveDefinite("syy block");
    // sxx - sxy syy^-1 syx
    Matrix schur_of_yy =
        joint.sxx().mat() - joint.sxy() * chol_yy.solve(Matrix(joint.sxy().transpose()));
    const double via_yy =
        chol_yy.log_det() + log_det_spd(SymMatrix(symmetrized(schur_of_yy)));

    return {full, via_xx, via_yy};
}

}  // namespace kalmi
