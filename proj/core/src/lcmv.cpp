#include "rrlcmv/lcmv.hpp"

#include <cmath>
#include <string>

#include "rrlcmv/errors.hpp"

namespace rrlcmv {

namespace {

// x / (a^H x): the scalar normalizer that makes (x / c)^H a = 1.
ComplexVector normalize_against(const ComplexVector& x, const ComplexVector& a) {
  const Complex c = a.dot(x);
  if (!(std::abs(c) > 0.0) || !std::isfinite(std::abs(c))) {
    throw NumericError("LCMV normalizer a^H R^-1 a is zero or non-finite");
  }
  return x / c;
}

void require_len(const ComplexVector& v, Eigen::Index n, const char* what) {
  if (v.size() != n) {
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(n) +
                         ", got " + std::to_string(v.size()));
  }
}

}  // namespace

FullRankBeamformer optimal_lcmv(const ComplexMatrix& r, const ComplexVector& a) {
  require_square(r, "optimal_lcmv");
  require_len(a, r.rows(), "optimal_lcmv steering vector");
  return {normalize_against(solve_hermitian(r, a), a), a};
}

FullRankBeamformer loaded_lcmv(const ComplexMatrix& r, const ComplexVector& a_p, double eps2) {
  if (!(eps2 >= 0.0) || !std::isfinite(eps2)) {
    throw ConfigError("loaded_lcmv: loading eps^2 must be finite and non-negative");
  }
  require_square(r, "loaded_lcmv");
  ComplexMatrix loaded = r;
  loaded.diagonal().array() += eps2;
  return optimal_lcmv(loaded, a_p);
}

ReducedRankBeamformer reduced_rank_lcmv(const ComplexMatrix& r, const ComplexMatrix& s_d,
                                        const ComplexVector& a, double eps2) {
  require_square(r, "reduced_rank_lcmv");
  if (s_d.rows() != r.rows() || s_d.cols() < 1 || s_d.cols() > s_d.rows()) {
    throw DimensionError("reduced_rank_lcmv: S_D must be M x D with 1 <= D <= M");
  }
  require_len(a, r.rows(), "reduced_rank_lcmv steering vector");
  if (!(eps2 >= 0.0) || !std::isfinite(eps2)) {
    throw ConfigError("reduced_rank_lcmv: loading eps^2 must be finite and non-negative");
  }
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(s_d);
  if (qr.rank() < s_d.cols()) {
    throw NumericError("reduced_rank_lcmv: S_D is rank deficient (rank " +
                       std::to_string(qr.rank()) + " < D=" + std::to_string(s_d.cols()) + ")");
  }
  ComplexMatrix r_bar = s_d.adjoint() * r * s_d;
  symmetrize(r_bar);
  r_bar.diagonal().array() += eps2;
  const ComplexVector a_bar = s_d.adjoint() * a;
  return {normalize_against(solve_hermitian(r_bar, a_bar), a_bar), s_d, a};
}

FullRankBeamformer init_full_rank(const ComplexVector& a_c, FullRankInit init) {
  const double aa = a_c.squaredNorm();
  if (!(aa > 0.0)) {
    throw NumericError("constraint vector is zero");
  }
  const ComplexVector quiescent = a_c / aa;
  if (init == FullRankInit::quiescent) {
    return {quiescent, a_c};
  }
  ComplexVector e1 = ComplexVector::Zero(a_c.size());
  e1[0] = 1.0;
  return {e1 - a_c * (a_c.dot(e1) / aa) + quiescent, a_c};
}

FullRankBeamformer lcmv_sg_step(const FullRankBeamformer& state, const ComplexVector& r,
                                double mu) {
  const ComplexVector& a = state.constraint;
  require_len(r, a.size(), "lcmv_sg_step snapshot");
  const double aa = a.squaredNorm();
  const Complex x = state.w.dot(r);
  ComplexVector w = state.w - (mu * std::conj(x)) * r;
  w -= a * (a.dot(w) / aa);
  w += a / aa;
  return {std::move(w), a};
}

LcmvRlsUpdate lcmv_rls_step(const FullRankBeamformer& state, const ComplexMatrix& p_prev,
                            const ComplexVector& r, double alpha) {
  const ComplexVector& a = state.constraint;
  require_len(r, a.size(), "lcmv_rls_step snapshot");
  RankOneUpdate upd = rank_one_inverse_update(p_prev, r, alpha);
  const ComplexVector pa = upd.inverse * a;
  return {{normalize_against(pa, a), a}, std::move(upd.inverse)};
}

}  // namespace rrlcmv
