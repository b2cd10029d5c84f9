#pragma once

// Dense complex linear-algebra kernels shared by the beamformers.
//
// Vectors and matrices are plain Eigen dynamic types; the functions here add
// the shape/finiteness checks and the recursions the adaptive filters need on
// top of Eigen's factorizations.

#include <complex>

#include <Eigen/Dense>

namespace rrlcmv {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Tolerances used by the checked kernels below.
struct NumericTolerances {
  /// Relative bound on max|R - R^H| (and on the imaginary residue of w^H R w).
  double hermitian = 1e-9;
  /// Required ||Rx - b|| / ||b|| for solve_hermitian.
  double solve_residual = 1e-8;
  /// Reciprocal condition estimate below which a matrix counts as singular.
  double singular_rcond = 1e-15;
};

inline constexpr NumericTolerances kDefaultTolerances{};

/// Throws DimensionError unless `m` is square.
void require_square(const ComplexMatrix& m, const char* what);

/// Throws NumericError if any entry is NaN or infinite.
void require_finite(const ComplexVector& v, const char* what);
void require_finite(const ComplexMatrix& m, const char* what);

/// max|R - R^H| <= tol * max(1, max|R|).
bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultTolerances.hermitian);

/// In-place P <- (P + P^H) / 2.
void symmetrize(ComplexMatrix& m);

/// w^H R w for Hermitian R. The imaginary residue must be negligible; it is
/// discarded after the check.
double hermitian_quadratic_form(const ComplexVector& w, const ComplexMatrix& r,
                                const NumericTolerances& tol = kDefaultTolerances);

/// Solves R x = b for Hermitian R (LDL^T with one step of iterative
/// refinement). Throws NumericError carrying the reciprocal condition
/// estimate when R is singular to tolerance or the residual bound fails.
ComplexVector solve_hermitian(const ComplexMatrix& r, const ComplexVector& b,
                              const NumericTolerances& tol = kDefaultTolerances);

/// Same as solve_hermitian for every column of `b`.
ComplexMatrix solve_hermitian(const ComplexMatrix& r, const ComplexMatrix& b,
                              const NumericTolerances& tol = kDefaultTolerances);

/// Explicit inverse of a small Hermitian matrix, symmetrized.
ComplexMatrix inverse_hermitian(const ComplexMatrix& r,
                                const NumericTolerances& tol = kDefaultTolerances);

struct RankOneUpdate {
  ComplexVector gain;     ///< k = a^-1 P r / (1 + a^-1 r^H P r)
  ComplexMatrix inverse;  ///< P = a^-1 P_prev - a^-1 k r^H P_prev
};

/// Exponentially weighted inverse-covariance update via the matrix inversion
/// lemma: P tracks (alpha * P_prev^-1 + r r^H)^-1. The result is symmetrized.
RankOneUpdate rank_one_inverse_update(const ComplexMatrix& p_prev, const ComplexVector& r,
                                      double alpha);

}  // namespace rrlcmv
