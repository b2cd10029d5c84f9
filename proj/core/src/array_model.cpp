#include "rrlcmv/array_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rrlcmv/errors.hpp"

namespace rrlcmv {

namespace {

constexpr double kPi = std::numbers::pi;

double deg2rad(double deg) { return deg * kPi / 180.0; }

bool nonneg_finite(double x) { return std::isfinite(x) && x >= 0.0; }

Complex complex_gaussian(Rng& rng) {
  // Unit-variance circular: real and imaginary parts each carry half the power.
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

}  // namespace

void ArrayGeometry::validate() const {
  if (num_sensors < 2) {
    throw ConfigError("array geometry needs at least 2 sensors, got " +
                      std::to_string(num_sensors));
  }
  if (!(spacing_ratio > 0.0) || !std::isfinite(spacing_ratio)) {
    throw ConfigError("array spacing ratio must be positive");
  }
}

void SourceSet::validate(const ArrayGeometry& geom) const {
  if (interferer_doas_deg.size() != interferer_powers.size()) {
    throw ConfigError("source set: " + std::to_string(interferer_doas_deg.size()) +
                      " interferer DoAs but " + std::to_string(interferer_powers.size()) +
                      " powers");
  }
  if (num_sources() >= static_cast<std::size_t>(geom.num_sensors)) {
    throw ConfigError("source set: K=" + std::to_string(num_sources()) +
                      " sources need K < M=" + std::to_string(geom.num_sensors));
  }
  if (!std::isfinite(soi_doa_deg)) {
    throw ConfigError("source set: SoI DoA is not finite");
  }
  for (double doa : interferer_doas_deg) {
    if (!std::isfinite(doa)) {
      throw ConfigError("source set: interferer DoA is not finite");
    }
  }
  if (!nonneg_finite(soi_power) || !nonneg_finite(noise_power)) {
    throw ConfigError("source set: powers must be finite and non-negative");
  }
  for (double p : interferer_powers) {
    if (!nonneg_finite(p)) {
      throw ConfigError("source set: interferer powers must be finite and non-negative");
    }
  }
}

void MismatchModel::validate() const {
  if (kind == Kind::coherent_scattering) {
    if (num_paths < 1) {
      throw ConfigError("coherent scattering needs at least one path");
    }
    if (!(doa_stddev_deg >= 0.0) || !std::isfinite(doa_stddev_deg)) {
      throw ConfigError("scattering DoA standard deviation must be finite and >= 0");
    }
  }
}

Rng substream(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

ComplexVector steering_vector(const ArrayGeometry& geom, double theta_deg) {
  geom.validate();
  const double phase_step = -2.0 * kPi * geom.spacing_ratio * std::cos(deg2rad(theta_deg));
  ComplexVector a(geom.num_sensors);
  for (int m = 0; m < geom.num_sensors; ++m) {
    a[m] = std::polar(1.0, phase_step * m);
  }
  return a;
}

ComplexVector scattered_steering(const ArrayGeometry& geom, double theta_deg,
                                 std::span<const double> phases_rad,
                                 std::span<const double> path_doas_deg) {
  if (phases_rad.size() != path_doas_deg.size()) {
    throw DimensionError("scattered_steering: phases and path DoAs differ in length");
  }
  ComplexVector a = steering_vector(geom, theta_deg);
  for (std::size_t p = 0; p < phases_rad.size(); ++p) {
    a += std::polar(1.0, phases_rad[p]) * steering_vector(geom, path_doas_deg[p]);
  }
  return a;
}

ComplexVector presumed_steering(const ArrayGeometry& geom, double theta_deg,
                                const MismatchModel& mismatch, Rng& trial_rng) {
  mismatch.validate();
  if (mismatch.kind == MismatchModel::Kind::none) {
    return steering_vector(geom, theta_deg);
  }
  std::vector<double> phases(mismatch.num_paths);
  std::vector<double> doas(mismatch.num_paths);
  std::uniform_real_distribution<double> uniform_phase(0.0, 2.0 * kPi);
  std::normal_distribution<double> doa_jitter(0.0, 1.0);
  for (int p = 0; p < mismatch.num_paths; ++p) {
    phases[p] = uniform_phase(trial_rng);
    doas[p] = theta_deg + mismatch.doa_stddev_deg * doa_jitter(trial_rng);
  }
  return scattered_steering(geom, theta_deg, phases, doas);
}

SnapshotGenerator::SnapshotGenerator(const ArrayGeometry& geom, const SourceSet& sources) {
  geom.validate();
  sources.validate(geom);
  const auto k = static_cast<Eigen::Index>(sources.num_sources());
  steering_.resize(geom.num_sensors, k);
  amplitudes_.resize(k);
  steering_.col(0) = steering_vector(geom, sources.soi_doa_deg);
  amplitudes_[0] = std::sqrt(sources.soi_power);
  for (Eigen::Index l = 1; l < k; ++l) {
    steering_.col(l) = steering_vector(geom, sources.interferer_doas_deg[l - 1]);
    amplitudes_[l] = std::sqrt(sources.interferer_powers[l - 1]);
  }
  noise_amplitude_ = std::sqrt(sources.noise_power);
}

ComplexVector SnapshotGenerator::operator()(Rng& rng) const {
  const Eigen::Index k = steering_.cols();
  const Eigen::Index m = steering_.rows();
  ComplexVector symbols(k);
  for (Eigen::Index l = 0; l < k; ++l) {
    symbols[l] = amplitudes_[l] * complex_gaussian(rng);
  }
  ComplexVector r = steering_ * symbols;
  for (Eigen::Index i = 0; i < m; ++i) {
    r[i] += noise_amplitude_ * complex_gaussian(rng);
  }
  return r;
}

ComplexVector synthesize_snapshot(const ArrayGeometry& geom, const SourceSet& sources,
                                  Rng& trial_rng) {
  return SnapshotGenerator(geom, sources)(trial_rng);
}

TrueCovariances true_covariances(const ArrayGeometry& geom, const SourceSet& sources) {
  geom.validate();
  sources.validate(geom);
  const int m = geom.num_sensors;
  TrueCovariances cov;
  const ComplexVector a = steering_vector(geom, sources.soi_doa_deg);
  cov.r_s = sources.soi_power * (a * a.adjoint());
  cov.r_i = sources.noise_power * ComplexMatrix::Identity(m, m);
  for (std::size_t l = 0; l < sources.interferer_doas_deg.size(); ++l) {
    const ComplexVector al = steering_vector(geom, sources.interferer_doas_deg[l]);
    cov.r_i.noalias() += sources.interferer_powers[l] * (al * al.adjoint());
  }
  symmetrize(cov.r_s);
  symmetrize(cov.r_i);
  cov.r = cov.r_s + cov.r_i;
  return cov;
}

}  // namespace rrlcmv
