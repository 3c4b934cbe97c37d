#pragma once

#include <optional>

#include <Eigen/Dense>

#include "kalmi/errors.hpp"

namespace kalmi {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense real symmetric matrix. Construction symmetrizes the input,
/// M <- (M + M^T)/2, after rejecting gross asymmetry; every covariance in
/// the library lives in this type.
class SymMatrix {
public:
    // Throws DimensionMismatch for non-square or empty input, and
    // std::invalid_argument when max_ij |M(i,j) - M(j,i)| exceeds
    // 1e-12 * max(1, max|entry|).
    explicit SymMatrix(const Matrix& m);

    static SymMatrix identity(Eigen::Index dim);
    static SymMatrix zero(Eigen::Index dim);

    Eigen::Index dim() const { return mat_.rows(); }
    const Matrix& mat() const { return mat_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

private:
    Matrix mat_;
};

// Tolerances of the factorization routines. A Cholesky pivot at or below
// kPivotFloor counts as a failed factorization; no regularization is ever
// applied. kPsdPivotTol is the slack allowed on semidefinite pivots.
inline constexpr double kPivotFloor = 1e-300;
inline constexpr double kPsdPivotTol = 1e-12;

/// Lower-triangular Cholesky factor of an SPD matrix, M = L L^T.
/// The pivots double as the positive-definiteness test and their logs sum to
/// the log-determinant, so the determinant itself is never formed.
class SpdCholesky {
public:
    explicit SpdCholesky(const SymMatrix& m);

    bool ok() const { return ok_; }
    const Matrix& lower() const { return lower_; }

    // ln det M = 2 * sum_j ln L(j,j). Requires ok().
    double log_det() const;

    // Solves M X = B through the triangular factors. Requires ok().
    Matrix solve(const Matrix& b) const;
    Vector solve(const Vector& b) const;

private:
    Matrix lower_;
    bool ok_ = false;
};

/// true iff a Cholesky factorization of M succeeds with all pivots above the
/// pivot floor. Never throws.
bool is_spd(const SymMatrix& m) noexcept;

/// ln det M for SPD M, via the pivot-log sum. Throws NotPositiveDefinite
/// when the factorization fails.
double log_det_spd(const SymMatrix& m);

/// Cholesky-style factor of a positive SEMIdefinite matrix: returns L with
/// M = L L^T where zero pivots (within kPsdPivotTol) produce a zero column,
/// or nullopt if some pivot is below -kPsdPivotTol. Used for PSD validation
/// and for covariance square roots when sampling.
std::optional<Matrix> psd_factor(const SymMatrix& m, double pivot_tol = kPsdPivotTol);

/// Block second moments of a jointly Gaussian pair (X, Y):
///   [[sxx, sxy], [sxy^T, syy]]
/// Construction checks shapes and that the assembled block matrix is SPD.
class JointGaussian {
public:
    JointGaussian(Vector mean_x, Vector mean_y, SymMatrix sxx, SymMatrix syy,
                  Matrix sxy);
    // Zero-mean convenience.
    JointGaussian(SymMatrix sxx, SymMatrix syy, Matrix sxy);

    Eigen::Index dim_x() const { return sxx_.dim(); }
    Eigen::Index dim_y() const { return syy_.dim(); }
    const Vector& mean_x() const { return mean_x_; }
    const Vector& mean_y() const { return mean_y_; }
    const SymMatrix& sxx() const { return sxx_; }
    const SymMatrix& syy() const { return syy_; }
    const Matrix& sxy() const { return sxy_; }

    /// The assembled (N+M) x (N+M) block covariance.
    SymMatrix assembled() const;

private:
    Vector mean_x_, mean_y_;
    SymMatrix sxx_, syy_;
    Matrix sxy_;
};

/// The three routes to ln det of the assembled block matrix: directly, and
/// through either Schur complement,
///   det S = det sxx * det(syy - syx sxx^-1 sxy)
///         = det syy * det(sxx - sxy syy^-1 syx).
/// Callers assert the three agree.
struct SchurDetCheck {
    double log_det_full;
    double via_xx;  // ln det sxx + ln det (Schur complement of sxx)
    double via_yy;  // ln det syy + ln det (Schur complement of syy)
};

SchurDetCheck schur_det_check(const JointGaussian& joint);

/// (A + A^T)/2 as a plain matrix; used before SymMatrix construction on
/// products that are symmetric only up to round-off.
inline Matrix symmetrized(const Matrix& a) { return 0.5 * (a + a.transpose()); }

}  // namespace kalmi
