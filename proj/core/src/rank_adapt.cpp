#include "rrlcmv/rank_adapt.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rrlcmv/errors.hpp"

namespace rrlcmv {

void RankAdaptConfig::validate(int num_sensors) const {
  if (d_min < 1 || d_min > d_max || d_max > num_sensors) {
    throw ConfigError("rank adaptation needs 1 <= D_min <= D_max <= M (got D_min=" +
                      std::to_string(d_min) + ", D_max=" + std::to_string(d_max) +
                      ", M=" + std::to_string(num_sensors) + ")");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("rank adaptation forgetting factor must lie in (0, 1]");
  }
}

RankAdaptState rank_adapt_init(int num_sensors, const RjioHyperParams& hp,
                               const RankAdaptConfig& config, const ComplexVector& a_p) {
  config.validate(num_sensors);
  RjioHyperParams extended_hp = hp;
  extended_hp.rank = config.d_max;
  RankAdaptState s;
  s.extended = rjio_init(num_sensors, extended_hp, a_p);
  s.weighted_cov = ComplexMatrix::Zero(num_sensors, num_sensors);
  s.costs = RealVector::Zero(config.d_max - config.d_min + 1);
  s.config = config;
  s.d_opt = config.d_min;
  return s;
}

RjioState truncate_rank(const RjioState& extended, int d) {
  if (d < 1 || d > extended.rank()) {
    throw DimensionError("truncate_rank: d=" + std::to_string(d) + " outside [1, " +
                         std::to_string(extended.rank()) + "]");
  }
  RjioState t;
  t.s_d = extended.s_d.leftCols(d);
  t.w_bar = extended.w_bar.head(d);
  t.eps = extended.eps;
  t.p = extended.p;
  t.p_bar = extended.p_bar.topLeftCorner(d, d);
  t.a_p = extended.a_p;
  t.rejected_steps = extended.rejected_steps;
  const Complex c = t.a_p.dot(t.s_d * t.w_bar);
  if (!(std::abs(c) > 0.0) || !std::isfinite(std::abs(c))) {
    throw NumericError("truncate_rank: rank-" + std::to_string(d) +
                       " truncation has no response toward the presumed steering vector");
  }
  t.w_bar /= c;
  return t;
}

ComplexVector truncated_weights(const RjioState& extended, int d) {
  return truncate_rank(extended, d).effective_weights();
}

RankAdaptState rank_cost_update(const RankAdaptState& state, const ComplexVector& r) {
  if (r.size() != state.weighted_cov.rows()) {
    throw DimensionError("rank_cost_update: snapshot length mismatch");
  }
  RankAdaptState next = state;
  next.weighted_cov *= state.config.alpha;
  next.weighted_cov.noalias() += r * r.adjoint();
  for (int d = state.config.d_min; d <= state.config.d_max; ++d) {
    double cost = std::numeric_limits<double>::infinity();
    try {
      const ComplexVector v = truncated_weights(state.extended, d);
      cost = std::max(0.0, v.dot(next.weighted_cov * v).real());
    } catch (const NumericError&) {
      // An infeasible truncation can never be selected.
    }
    next.costs[d - state.config.d_min] = cost;
  }
  ++next.updates;
  return next;
}

int select_rank(const RankAdaptState& state) {
  int best = state.config.d_min;
  if (state.updates == 0) {
    return best;
  }
  // Costs within kRankCostTieTolerance (relative) of the incumbent are ties.
  double best_cost = state.cost(best);
  for (int d = state.config.d_min + 1; d <= state.config.d_max; ++d) {
    if (state.cost(d) < best_cost * (1.0 - kRankCostTieTolerance)) {
      best = d;
      best_cost = state.cost(d);
    }
  }
  return best;
}

RankAdaptState adapt_step(const RankAdaptState& state, RjioStepper stepper,
                          const RjioHyperParams& hp, const ComplexVector& r) {
  RankAdaptState next = rank_cost_update(state, r);
  next.d_opt = select_rank(next);
  RjioHyperParams extended_hp = hp;
  extended_hp.rank = state.config.d_max;
  next.extended = stepper(next.extended, r, extended_hp);
  return next;
}

ComplexVector emitted_weights(const RankAdaptState& state) {
  try {
    return truncated_weights(state.extended, state.d_opt);
  } catch (const NumericError&) {
    return state.extended.effective_weights();
  }
}

}  // namespace rrlcmv
