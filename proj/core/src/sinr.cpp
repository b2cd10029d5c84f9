#include "rrlcmv/sinr.hpp"

#include <cmath>

#include "rrlcmv/errors.hpp"

namespace rrlcmv {

double sinr_linear(const ComplexVector& w, const ComplexMatrix& r_s, const ComplexMatrix& r_i) {
  if (w.size() != r_s.rows() || w.size() != r_i.rows() || r_s.rows() != r_s.cols() ||
      r_i.rows() != r_i.cols()) {
    throw DimensionError("sinr: weight and covariance dimensions disagree");
  }
  const double signal = w.dot(r_s * w).real();
  const double interference = w.dot(r_i * w).real();
  if (!(interference > 0.0)) {
    throw NumericError("sinr: interference-plus-noise power is not positive");
  }
  return std::max(signal, 0.0) / interference;
}

double sinr_db(const ComplexVector& w, const ComplexMatrix& r_s, const ComplexMatrix& r_i) {
  return 10.0 * std::log10(sinr_linear(w, r_s, r_i));
}

}  // namespace rrlcmv
