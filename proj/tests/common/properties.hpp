#pragma once

// Randomized invariant checks shared by the unit tests and the acceptance
// runner. Each check draws `cases` independent instances from `seed`.

#include <cstdint>
#include <string>

namespace props {

struct Outcome {
  std::string name;
  int cases = 0;
  int failures = 0;
  double worst = 0.0;  ///< largest observed deviation
  std::string first_failure;

  bool passed() const { return cases > 0 && failures == 0; }
};

/// |w^H a - 1| <= 1e-8 for every closed-form and adaptive beamformer.
Outcome constraint_feasibility(std::uint64_t seed, int cases);

/// Re-running a trial with the same seed reproduces it bit for bit.
Outcome determinism(std::uint64_t seed, int cases);

/// The fixed-point objective never rises by more than 1e-10 per alternation.
Outcome fixed_point_descent(std::uint64_t seed, int cases);

/// A rank-1 RJIO state outputs (w_1 s_1)^H r, before and after adaptation.
Outcome rank_one_degeneracy(std::uint64_t seed, int cases);

/// Rank costs match the explicit exponentially weighted sum to 1e-10.
Outcome rank_cost_equivalence(std::uint64_t seed, int cases);

/// SINR(c w) = SINR(w) for every nonzero complex c.
Outcome sinr_scale_invariance(std::uint64_t seed, int cases);

}  // namespace props
