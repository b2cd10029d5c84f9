#pragma once

// Automatic rank selection for RJIO.
//
// One extended state of rank D_max is adapted; every candidate rank d in
// [D_min, D_max] is scored by the exponentially weighted a posteriori cost
//
//   C_d(i) = sum_{l<=i} alpha^(i-l) |v_d^H r(l)|^2 = v_d^H R_alpha(i) v_d,
//
// where v_d is the constraint-normalized leading-d truncation of the extended
// state at time i-1 and R_alpha is the exponentially weighted sample
// covariance.

#include <cstdint>

#include "rrlcmv/rjio.hpp"

namespace rrlcmv {

struct RankAdaptConfig {
  int d_min = 3;
  int d_max = 8;
  double alpha = 0.998;

  void validate(int num_sensors) const;
};

struct RankAdaptState {
  RjioState extended;      ///< rank D_max
  ComplexMatrix weighted_cov;  ///< R_alpha, M x M
  RealVector costs;        ///< C_d for d = d_min .. d_max
  RankAdaptConfig config;
  int d_opt = 0;
  std::uint64_t updates = 0;

  double cost(int d) const { return costs[d - config.d_min]; }
};

/// Extended state from rjio_init at rank D_max; D_opt starts at D_min.
RankAdaptState rank_adapt_init(int num_sensors, const RjioHyperParams& hp,
                               const RankAdaptConfig& config, const ComplexVector& a_p);

/// Rank-d RJIO state formed from the leading d columns of S_D, the leading d
/// entries of w_bar and the leading d x d block of P_bar, with w_bar rescaled
/// so that the truncated beamformer meets its constraint. Throws NumericError
/// if the truncation has no response toward a_p.
RjioState truncate_rank(const RjioState& extended, int d);

/// Effective M-vector of the normalized rank-d truncation.
ComplexVector truncated_weights(const RjioState& extended, int d);

/// Folds r into R_alpha and re-scores every candidate rank against the
/// current extended state.
RankAdaptState rank_cost_update(const RankAdaptState& state, const ComplexVector& r);

/// Relative cost difference below which two ranks are treated as tied.
inline constexpr double kRankCostTieTolerance = 1e-9;

/// argmin_d C_d, ties going to the smaller rank.
int select_rank(const RankAdaptState& state);

/// Scores ranks on the pre-update state, picks D_opt, then advances the
/// extended state with `stepper` at rank D_max.
RankAdaptState adapt_step(const RankAdaptState& state, RjioStepper stepper,
                          const RjioHyperParams& hp, const ComplexVector& r);

/// Beamformer emitted for scoring: the leading-D_opt truncation.
ComplexVector emitted_weights(const RankAdaptState& state);

}  // namespace rrlcmv
