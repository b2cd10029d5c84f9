#pragma once

// Closed-form full-rank and reduced-rank LCMV beamformers (plain and
// diagonally loaded) and the classical full-rank adaptive baselines:
// Frost's projected stochastic gradient and the constrained RLS.

#include "rrlcmv/numerics.hpp"

namespace rrlcmv {

/// Feasibility bound every emitted beamformer satisfies: |w^H a_c - 1|.
inline constexpr double kConstraintTolerance = 1e-8;

struct FullRankBeamformer {
  ComplexVector w;
  ComplexVector constraint;  ///< a_c; the beamformer keeps w^H a_c = 1

  /// w^H a_c - 1
  Complex constraint_residual() const { return w.dot(constraint) - 1.0; }
};

struct ReducedRankBeamformer {
  ComplexVector w_bar;       ///< D
  ComplexMatrix s_d;         ///< M x D
  ComplexVector constraint;  ///< M

  ComplexVector effective_weights() const { return s_d * w_bar; }
  Complex constraint_residual() const { return w_bar.dot(s_d.adjoint() * constraint) - 1.0; }
};

/// w = R^-1 a / (a^H R^-1 a).
FullRankBeamformer optimal_lcmv(const ComplexMatrix& r, const ComplexVector& a);

/// w = (R + eps2 I)^-1 a_p / (a_p^H (R + eps2 I)^-1 a_p).
FullRankBeamformer loaded_lcmv(const ComplexMatrix& r, const ComplexVector& a_p, double eps2);

/// w_bar = (S^H R S + eps2 I_D)^-1 S^H a / (a^H S (.)^-1 S^H a).
/// Throws NumericError if S_D is rank deficient.
ReducedRankBeamformer reduced_rank_lcmv(const ComplexMatrix& r, const ComplexMatrix& s_d,
                                        const ComplexVector& a, double eps2 = 0.0);

/// Starting point for the adaptive baselines.
enum class FullRankInit {
  first_sensor,  ///< projection of [1 0 ... 0] onto the constraint plane
  quiescent,     ///< a_c / (a_c^H a_c)
};

FullRankBeamformer init_full_rank(const ComplexVector& a_c, FullRankInit init);

/// Frost update: w <- Pi[w - mu x* r] + a_c / (a_c^H a_c), x = w^H r,
/// Pi = I - a_c a_c^H / (a_c^H a_c).
FullRankBeamformer lcmv_sg_step(const FullRankBeamformer& state, const ComplexVector& r,
                                double mu);

struct LcmvRlsUpdate {
  FullRankBeamformer beamformer;
  ComplexMatrix p;  ///< inverse of the exponentially weighted sample covariance
};

/// Constrained RLS: (k, P) from rank_one_inverse_update, w = P a_c / (a_c^H P a_c).
LcmvRlsUpdate lcmv_rls_step(const FullRankBeamformer& state, const ComplexMatrix& p_prev,
                            const ComplexVector& r, double alpha);

}  // namespace rrlcmv
