#pragma once

// Robust joint iterative optimization (RJIO) of a rank-reduction matrix S_D,
// a reduced-rank beamformer w_bar and an adaptive diagonal loading eps.
//
// The scheme's output is x = w_bar^H S_D^H r subject to w_bar^H S_D^H a_p = 1.
// Both adaptive variants are pure transitions (state in, state out); a step
// that produces a non-finite value is rejected and only bumps
// RjioState::rejected_steps.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rrlcmv/numerics.hpp"

namespace rrlcmv {

struct RjioHyperParams {
  int rank = 4;            ///< D
  double mu_s = 1e-3;      ///< step size for S_D
  double mu_w = 1e-3;      ///< step size for w_bar
  double mu_eps = 1e-4;    ///< step size for the loading
  double alpha = 0.998;    ///< RLS forgetting factor, in (0, 1]
  double delta = 100.0;    ///< P(0) = delta * I_M
  double delta_bar = 100.0;///< P_bar(0) = delta_bar * I_D
  double eps0 = 0.0;       ///< initial loading eps(0)

  void validate(int num_sensors) const;
};

struct RjioState {
  ComplexMatrix s_d;    ///< M x D
  ComplexVector w_bar;  ///< D
  double eps = 0.0;     ///< loading, clamped at 0
  ComplexMatrix p;      ///< M x M inverse covariance (RLS only)
  ComplexMatrix p_bar;  ///< D x D reduced inverse covariance (RLS only)
  ComplexVector a_p;    ///< presumed steering vector
  std::uint64_t rejected_steps = 0;

  int num_sensors() const { return static_cast<int>(s_d.rows()); }
  int rank() const { return static_cast<int>(s_d.cols()); }
  ComplexVector effective_weights() const { return s_d * w_bar; }
  /// w_bar^H S_D^H a_p - 1
  Complex constraint_residual() const;
};

/// S_D(0) = [I_D; 0], w_bar(0) = e_1, P(0) = delta I_M, P_bar(0) = delta_bar I_D.
/// Throws ConfigError if D > M.
RjioState rjio_init(int num_sensors, const RjioHyperParams& hp, const ComplexVector& a_p);

/// x = w_bar^H S_D^H r.
Complex rjio_output(const RjioState& state, const ComplexVector& r);

/// One stochastic-gradient update: S_D, then w_bar, then eps, followed by the
/// scalar renormalization that restores w_bar^H S_D^H a_p = 1.
RjioState rjio_sg_step(const RjioState& state, const ComplexVector& r, const RjioHyperParams& hp);

/// One RLS update: P (with eps^2 I_M), S_D from P, P_bar (with eps^2 I_D) on
/// r_bar = S_D^H r, w_bar from P_bar, then eps.
RjioState rjio_rls_step(const RjioState& state, const ComplexVector& r, const RjioHyperParams& hp);

using RjioStepper = RjioState (*)(const RjioState&, const ComplexVector&, const RjioHyperParams&);

struct FixedPointResult {
  ComplexMatrix s_d;
  ComplexVector w_bar;
  int iterations = 0;
  bool converged = false;
  /// w_bar^H S_D^H (R + eps^2 I) S_D w_bar after every half-step.
  std::vector<double> objective;
};

/// Alternates the closed-form S_D and w_bar expressions on a known covariance,
/// starting from the same S_D(0), w_bar(0) as the adaptive variants, until the
/// objective's relative change falls below `tol` or `max_iters` is reached.
FixedPointResult rjio_fixed_point(const ComplexMatrix& r_hat, const ComplexVector& a_p, int rank,
                                  double eps2, int max_iters = 50, double tol = 1e-12);

/// JSON with complex numbers as [re, im] pairs and matrices as row lists.
std::string rjio_state_to_json(const RjioState& state);
RjioState rjio_state_from_json(std::string_view text);

}  // namespace rrlcmv
