#pragma once

// Uniform linear array geometry, steering vectors, steering mismatch, snapshot
// synthesis and exact covariances for scoring.
//
// Angles are in degrees at every interface. The array response uses the
// endfire convention exp(-2*pi*j*m*(d/lambda)*cos(theta)), so theta and
// -theta are indistinguishable; scenarios written relative to broadside are
// converted with to_endfire_deg().

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "rrlcmv/numerics.hpp"

namespace rrlcmv {

struct ArrayGeometry {
  int num_sensors = 0;
  double spacing_ratio = 0.5;  ///< d_s / lambda_c

  void validate() const;
};

struct SourceSet {
  double soi_doa_deg = 0.0;
  std::vector<double> interferer_doas_deg;
  double soi_power = 1.0;
  std::vector<double> interferer_powers;
  double noise_power = 1.0;

  std::size_t num_sources() const { return 1 + interferer_doas_deg.size(); }
  /// Shapes, K < M, finite non-negative powers.
  void validate(const ArrayGeometry& geom) const;
};

struct MismatchModel {
  enum class Kind { none, coherent_scattering };

  Kind kind = Kind::none;
  int num_paths = 4;
  double doa_stddev_deg = 2.0;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct TrueCovariances {
  ComplexMatrix r;    ///< r_s + r_i
  ComplexMatrix r_s;  ///< desired-signal covariance
  ComplexMatrix r_i;  ///< interference-plus-noise covariance
};

/// The generator behind every random draw. Trials take independent substreams.
using Rng = std::mt19937_64;

/// Deterministic, order-independent substream for (master_seed, trial, stream).
Rng substream(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t stream);

/// Broadside-referenced angle to the endfire convention used by steering_vector.
constexpr double to_endfire_deg(double broadside_deg) { return 90.0 - broadside_deg; }

ComplexVector steering_vector(const ArrayGeometry& geom, double theta_deg);

/// a(theta) + sum_p exp(j*phase_p) * a(path_doa_p).
ComplexVector scattered_steering(const ArrayGeometry& geom, double theta_deg,
                                 std::span<const double> phases_rad,
                                 std::span<const double> path_doas_deg);

/// The presumed steering vector for one trial. Draws (phase, DoA) per path
/// from `trial_rng` when the model is coherent_scattering.
ComplexVector presumed_steering(const ArrayGeometry& geom, double theta_deg,
                                const MismatchModel& mismatch, Rng& trial_rng);

/// Draws r = A s + n with circular complex Gaussian symbols and noise. The
/// steering matrix is built once, which matters inside long runs.
class SnapshotGenerator {
 public:
  SnapshotGenerator(const ArrayGeometry& geom, const SourceSet& sources);

  ComplexVector operator()(Rng& rng) const;

  const ComplexMatrix& steering_matrix() const { return steering_; }

 private:
  ComplexMatrix steering_;  // M x K, column 0 is the SoI
  RealVector amplitudes_;   // sqrt(power) per source
  double noise_amplitude_;
};

ComplexVector synthesize_snapshot(const ArrayGeometry& geom, const SourceSet& sources,
                                  Rng& trial_rng);

TrueCovariances true_covariances(const ArrayGeometry& geom, const SourceSet& sources);

}  // namespace rrlcmv
