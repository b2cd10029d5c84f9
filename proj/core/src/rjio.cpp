#include "rrlcmv/rjio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "rrlcmv/errors.hpp"

namespace rrlcmv {

namespace {

bool finite_state(const RjioState& s) {
  return s.s_d.allFinite() && s.w_bar.allFinite() && std::isfinite(s.eps) && s.p.allFinite() &&
         s.p_bar.allFinite();
}

RjioState rejected(const RjioState& state) {
  RjioState out = state;
  ++out.rejected_steps;
  return out;
}

void require_snapshot(const RjioState& state, const ComplexVector& r) {
  if (r.size() != state.s_d.rows()) {
    throw DimensionError("RJIO snapshot length " + std::to_string(r.size()) +
                         " does not match M=" + std::to_string(state.s_d.rows()));
  }
}

// w_bar <- w_bar / (a^H S w_bar), so that w_bar^H S^H a = 1. Returns false if
// the normalizer vanishes or is not finite.
bool renormalize(RjioState& s) {
  const Complex c = s.a_p.dot(s.s_d * s.w_bar);
  const double mag = std::abs(c);
  if (!(mag > 0.0) || !std::isfinite(mag)) {
    return false;
  }
  s.w_bar /= c;
  return true;
}

double loading_objective(const ComplexMatrix& loaded, const ComplexMatrix& s,
                         const ComplexVector& w) {
  const ComplexVector v = s * w;
  return v.dot(loaded * v).real();
}

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw ConfigError("complex number must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json vector_to_json(const ComplexVector& v) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(complex_to_json(v[i]));
  }
  return out;
}

ComplexVector vector_from_json(const nlohmann::json& j) {
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  }
  return v;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out.push_back(vector_to_json(m.row(i).transpose()));
  }
  return out;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols) {
      throw ConfigError("matrix rows differ in length");
    }
    m.row(i) = vector_from_json(j[i]).transpose();
  }
  return m;
}

}  // namespace

void RjioHyperParams::validate(int num_sensors) const {
  if (rank < 1 || rank > num_sensors) {
    throw ConfigError("RJIO rank D=" + std::to_string(rank) + " must satisfy 1 <= D <= M=" +
                      std::to_string(num_sensors));
  }
  for (double mu : {mu_s, mu_w, mu_eps}) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
      throw ConfigError("RJIO step sizes must be finite and non-negative");
    }
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("RJIO forgetting factor must lie in (0, 1]");
  }
  if (!(delta > 0.0) || !(delta_bar > 0.0) || !std::isfinite(delta) || !std::isfinite(delta_bar)) {
    throw ConfigError("RJIO RLS initialization constants must be positive");
  }
  if (!(eps0 >= 0.0) || !std::isfinite(eps0)) {
    throw ConfigError("RJIO initial loading must be finite and non-negative");
  }
}

Complex RjioState::constraint_residual() const {
  return w_bar.dot(s_d.adjoint() * a_p) - 1.0;
}

RjioState rjio_init(int num_sensors, const RjioHyperParams& hp, const ComplexVector& a_p) {
  hp.validate(num_sensors);
  if (a_p.size() != num_sensors) {
    throw DimensionError("rjio_init: presumed steering vector has length " +
                         std::to_string(a_p.size()) + ", expected " + std::to_string(num_sensors));
  }
  require_finite(a_p, "rjio_init presumed steering vector");
  const int d = hp.rank;
  RjioState s;
  s.s_d = ComplexMatrix::Zero(num_sensors, d);
  s.s_d.topRows(d).setIdentity();
  s.w_bar = ComplexVector::Zero(d);
  s.w_bar[0] = 1.0;
  s.eps = hp.eps0;
  s.p = hp.delta * ComplexMatrix::Identity(num_sensors, num_sensors);
  s.p_bar = hp.delta_bar * ComplexMatrix::Identity(d, d);
  s.a_p = a_p;
  return s;
}

Complex rjio_output(const RjioState& state, const ComplexVector& r) {
  require_snapshot(state, r);
  const ComplexVector r_bar = state.s_d.adjoint() * r;
  return state.w_bar.dot(r_bar);
}

RjioState rjio_sg_step(const RjioState& state, const ComplexVector& r, const RjioHyperParams& hp) {
  require_snapshot(state, r);
  const ComplexMatrix& s = state.s_d;
  const ComplexVector& w = state.w_bar;
  const ComplexVector& a = state.a_p;
  const double aa = a.squaredNorm();
  const double eps = state.eps;

  const ComplexVector r_bar = s.adjoint() * r;
  const Complex x = w.dot(r_bar);
  const Complex x_conj = std::conj(x);
  const ComplexVector v = s * w;

  RjioState next = state;

  // S_D(i+1) = S_D - mu_s [x* r w^H + eps S_D w w^H
  //                        - (a^H a)^-1 a w^H (x* a^H r + eps)].
  const ComplexVector g_s = x_conj * r + eps * v - a * ((x_conj * a.dot(r) + eps) / aa);
  next.s_d.noalias() -= hp.mu_s * (g_s * w.adjoint());

  // w_bar(i+1) = w_bar - mu_w Pi_bar [x* S_D^H r + eps S_D^H S_D w_bar], the
  // gradient projected onto the plane orthogonal to a_bar = S_D^H a_p.
  const ComplexVector a_bar = s.adjoint() * a;
  const ComplexVector g_w = x_conj * r_bar + eps * (s.adjoint() * v);
  const double ab2 = a_bar.squaredNorm();
  ComplexVector step = g_w;
  if (ab2 > 0.0) {
    step -= a_bar * (a_bar.dot(g_w) / ab2);
  }
  next.w_bar -= hp.mu_w * step;

  // eps(i+1) = eps - mu_eps w_bar^H S_D^H S_D w_bar, clamped at 0.
  next.eps = std::max(0.0, eps - hp.mu_eps * v.squaredNorm());

  if (!renormalize(next) || !finite_state(next)) {
    return rejected(state);
  }
  return next;
}

RjioState rjio_rls_step(const RjioState& state, const ComplexVector& r, const RjioHyperParams& hp) {
  require_snapshot(state, r);
  if (!(hp.alpha > 0.0 && hp.alpha <= 1.0)) {
    throw ConfigError("RJIO forgetting factor must lie in (0, 1]");
  }
  const ComplexVector& a = state.a_p;
  const double eps2 = state.eps * state.eps;
  RjioState next = state;
  try {
    // (1) P(i) = a^-1 P - a^-1 k r^H P + eps^2 I_M.
    RankOneUpdate full = rank_one_inverse_update(state.p, r, hp.alpha);
    next.p = std::move(full.inverse);
    next.p.diagonal().array() += eps2;

    // (2) S_D(i) = P a_p a_p^H S_D(i-1) / (a_p^H P a_p).
    const ComplexVector pa = next.p * a;
    const Complex apa = a.dot(pa);
    const Eigen::RowVectorXcd a_h_s = a.adjoint() * state.s_d;
    next.s_d = (pa * a_h_s) / apa;

    // (3) P_bar(i) on r_bar = S_D^H r, plus eps^2 I_D.
    const ComplexVector r_bar = next.s_d.adjoint() * r;
    RankOneUpdate reduced = rank_one_inverse_update(state.p_bar, r_bar, hp.alpha);
    next.p_bar = std::move(reduced.inverse);
    next.p_bar.diagonal().array() += eps2;

    // (4) w_bar(i) = P_bar a_bar / (a_bar^H P_bar a_bar).
    const ComplexVector a_bar = next.s_d.adjoint() * a;
    const ComplexVector pa_bar = next.p_bar * a_bar;
    next.w_bar = pa_bar / a_bar.dot(pa_bar);
  } catch (const NumericError&) {
    return rejected(state);
  }

  // (5) eps(i+1) = eps - mu_eps w_bar^H S_D^H S_D w_bar, clamped at 0.
  next.eps = std::max(0.0, state.eps - hp.mu_eps * (next.s_d * next.w_bar).squaredNorm());

  if (!finite_state(next)) {
    return rejected(state);
  }
  return next;
}

FixedPointResult rjio_fixed_point(const ComplexMatrix& r_hat, const ComplexVector& a_p, int rank,
                                  double eps2, int max_iters, double tol) {
  require_square(r_hat, "rjio_fixed_point");
  const auto m = r_hat.rows();
  if (a_p.size() != m) {
    throw DimensionError("rjio_fixed_point: presumed steering vector length mismatch");
  }
  if (rank < 1 || rank > m) {
    throw ConfigError("rjio_fixed_point: rank must satisfy 1 <= D <= M");
  }
  if (!(eps2 >= 0.0) || max_iters < 1 || !(tol >= 0.0)) {
    throw ConfigError("rjio_fixed_point: need eps2 >= 0, max_iters >= 1, tol >= 0");
  }

  ComplexMatrix loaded = r_hat;
  loaded.diagonal().array() += eps2;
  // u = (R + eps^2 I)^-1 a_p does not depend on w_bar.
  const ComplexVector u = solve_hermitian(loaded, a_p);
  const Complex apu = a_p.dot(u);

  FixedPointResult res;
  res.s_d = ComplexMatrix::Zero(m, rank);
  res.s_d.topRows(rank).setIdentity();
  res.w_bar = ComplexVector::Zero(rank);
  res.w_bar[0] = 1.0;

  double previous = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= max_iters; ++it) {
    // w_bar = (S^H R S + eps^2 S^H S)^-1 a_bar / (a_bar^H (.)^-1 a_bar). After
    // the first S_D step S_D = u w_bar^H has rank one; for D > 1 the matrix
    // then gets a relative ridge of 1e-8.
    ComplexMatrix reduced = res.s_d.adjoint() * loaded * res.s_d;
    symmetrize(reduced);
    if (it > 1 && rank > 1) {
      const double ridge = 1e-8 * std::max(reduced.trace().real() / rank, 1e-300);
      reduced.diagonal().array() += ridge;
    }
    const ComplexVector a_bar = res.s_d.adjoint() * a_p;
    const ComplexVector x = solve_hermitian(reduced, a_bar);
    res.w_bar = x / a_bar.dot(x);
    res.objective.push_back(loading_objective(loaded, res.s_d, res.w_bar));

    // S_D = u w^H Rw^-1 / (w^H Rw^-1 w a^H u) with Rw = w w^H + rho I. By
    // Sherman-Morrison Rw^-1 w = w / (|w|^2 + rho), so rho cancels exactly.
    res.s_d = (u * res.w_bar.adjoint()) / (res.w_bar.squaredNorm() * apu);
    const double current = loading_objective(loaded, res.s_d, res.w_bar);
    res.objective.push_back(current);
    res.iterations = it;

    if (std::abs(previous - current) <= tol * std::abs(current)) {
      res.converged = true;
      break;
    }
    previous = current;
  }
  // Final constraint normalization.
  const Complex c = a_p.dot(res.s_d * res.w_bar);
  res.w_bar /= c;
  return res;
}

std::string rjio_state_to_json(const RjioState& state) {
  nlohmann::json j;
  j["s_d"] = matrix_to_json(state.s_d);
  j["w_bar"] = vector_to_json(state.w_bar);
  j["eps"] = state.eps;
  j["p"] = matrix_to_json(state.p);
  j["p_bar"] = matrix_to_json(state.p_bar);
  j["a_p"] = vector_to_json(state.a_p);
  j["rejected_steps"] = state.rejected_steps;
  return j.dump();
}

RjioState rjio_state_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    RjioState s;
    s.s_d = matrix_from_json(j.at("s_d"));
    s.w_bar = vector_from_json(j.at("w_bar"));
    s.eps = j.at("eps").get<double>();
    s.p = matrix_from_json(j.at("p"));
    s.p_bar = matrix_from_json(j.at("p_bar"));
    s.a_p = vector_from_json(j.at("a_p"));
    s.rejected_steps = j.value("rejected_steps", std::uint64_t{0});
    if (s.s_d.cols() != s.w_bar.size() || s.p_bar.rows() != s.w_bar.size() ||
        s.s_d.rows() != s.a_p.size() || s.p.rows() != s.a_p.size()) {
      throw ConfigError("RJIO state dimensions are inconsistent");
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid RJIO state JSON: ") + e.what());
  }
}

}  // namespace rrlcmv
