#include "rrlcmv/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "rrlcmv/errors.hpp"

namespace rrlcmv {

namespace {

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::string shape(const ComplexMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

Eigen::LDLT<ComplexMatrix> factorize(const ComplexMatrix& r, const NumericTolerances& tol) {
  require_square(r, "solve_hermitian");
  require_finite(r, "solve_hermitian matrix");
  if (!is_hermitian(r, tol.hermitian)) {
    throw NumericError("solve_hermitian: matrix is not Hermitian within tolerance");
  }
  Eigen::LDLT<ComplexMatrix> ldlt(r);
  const double rcond = ldlt.info() == Eigen::Success ? ldlt.rcond() : 0.0;
  if (!(rcond > tol.singular_rcond)) {
    std::ostringstream os;
    os << "solve_hermitian: matrix " << shape(r)
       << " is singular to tolerance (reciprocal condition estimate " << rcond << ")";
    throw NumericError(os.str());
  }
  return ldlt;
}

ComplexVector refined_solve(const Eigen::LDLT<ComplexMatrix>& ldlt, const ComplexMatrix& r,
                            const ComplexVector& b, const NumericTolerances& tol) {
  ComplexVector x = ldlt.solve(b);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    return ComplexVector::Zero(b.size());
  }
  ComplexVector resid = b - r * x;
  if (resid.norm() > 0.1 * tol.solve_residual * bnorm) {
    x += ldlt.solve(resid);
    resid = b - r * x;
  }
  if (!x.allFinite() || resid.norm() > tol.solve_residual * bnorm) {
    std::ostringstream os;
    os << "solve_hermitian: relative residual " << resid.norm() / bnorm
       << " exceeds " << tol.solve_residual << " (reciprocal condition estimate "
       << ldlt.rcond() << ")";
    throw NumericError(os.str());
  }
  return x;
}

}  // namespace

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         shape(m));
  }
}

void require_finite(const ComplexVector& v, const char* what) {
  if (!v.allFinite()) {
    throw NumericError(std::string(what) + ": non-finite entry");
  }
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw NumericError(std::string(what) + ": non-finite entry");
  }
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    return false;
  }
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst <= tol * std::max(1.0, max_abs(m));
}

void symmetrize(ComplexMatrix& m) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    m(j, j) = Complex(m(j, j).real(), 0.0);
    for (Eigen::Index i = 0; i < j; ++i) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
}

double hermitian_quadratic_form(const ComplexVector& w, const ComplexMatrix& r,
                                const NumericTolerances& tol) {
  require_square(r, "hermitian_quadratic_form");
  if (w.size() != r.rows()) {
    throw DimensionError("hermitian_quadratic_form: len(w)=" + std::to_string(w.size()) +
                         " but R is " + shape(r));
  }
  if (!is_hermitian(r, tol.hermitian)) {
    throw NumericError("hermitian_quadratic_form: R is not Hermitian within tolerance");
  }
  const Complex q = w.dot(r * w);
  const double scale = std::max({std::abs(q.real()), w.squaredNorm() * max_abs(r), 1e-300});
  if (std::abs(q.imag()) > tol.hermitian * scale) {
    throw NumericError("hermitian_quadratic_form: imaginary residue above tolerance");
  }
  return q.real();
}

ComplexVector solve_hermitian(const ComplexMatrix& r, const ComplexVector& b,
                              const NumericTolerances& tol) {
  if (b.size() != r.rows()) {
    throw DimensionError("solve_hermitian: len(b)=" + std::to_string(b.size()) +
                         " but R is " + shape(r));
  }
  require_finite(b, "solve_hermitian rhs");
  const auto ldlt = factorize(r, tol);
  return refined_solve(ldlt, r, b, tol);
}

ComplexMatrix solve_hermitian(const ComplexMatrix& r, const ComplexMatrix& b,
                              const NumericTolerances& tol) {
  if (b.rows() != r.rows()) {
    throw DimensionError("solve_hermitian: rhs is " + shape(b) + " but R is " + shape(r));
  }
  require_finite(b, "solve_hermitian rhs");
  const auto ldlt = factorize(r, tol);
  ComplexMatrix x(b.rows(), b.cols());
  for (Eigen::Index c = 0; c < b.cols(); ++c) {
    x.col(c) = refined_solve(ldlt, r, b.col(c), tol);
  }
  return x;
}

ComplexMatrix inverse_hermitian(const ComplexMatrix& r, const NumericTolerances& tol) {
  require_square(r, "inverse_hermitian");
  ComplexMatrix inv = solve_hermitian(r, ComplexMatrix(ComplexMatrix::Identity(r.rows(), r.cols())), tol);
  symmetrize(inv);
  return inv;
}

RankOneUpdate rank_one_inverse_update(const ComplexMatrix& p_prev, const ComplexVector& r,
                                      double alpha) {
  require_square(p_prev, "rank_one_inverse_update");
  if (r.size() != p_prev.rows()) {
    throw DimensionError("rank_one_inverse_update: len(r)=" + std::to_string(r.size()) +
                         " but P is " + shape(p_prev));
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw NumericError("rank_one_inverse_update: forgetting factor must lie in (0, 1]");
  }
  const double inv_alpha = 1.0 / alpha;
  // P_prev is Hermitian, so r^H P_prev = (P_prev r)^H.
  const ComplexVector pr = p_prev * r;
  const Complex denom = 1.0 + inv_alpha * r.dot(pr);
  RankOneUpdate out;
  out.gain = (inv_alpha / denom) * pr;
  out.inverse = inv_alpha * (p_prev - out.gain * pr.adjoint());
  symmetrize(out.inverse);
  if (!out.gain.allFinite() || !out.inverse.allFinite()) {
    throw NumericError("rank_one_inverse_update: non-finite gain or inverse");
  }
  return out;
}

}  // namespace rrlcmv
