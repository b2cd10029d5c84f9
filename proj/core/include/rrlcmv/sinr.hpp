#pragma once

#include "rrlcmv/numerics.hpp"

namespace rrlcmv {

/// (w^H R_s w) / (w^H R_I w), scored against exact covariances. For
/// reduced-rank schemes pass w = S_D w_bar. Throws NumericError when the
/// denominator is not positive.
double sinr_linear(const ComplexVector& w, const ComplexMatrix& r_s, const ComplexMatrix& r_i);

/// 10 log10 of sinr_linear.
double sinr_db(const ComplexVector& w, const ComplexMatrix& r_s, const ComplexMatrix& r_i);

}  // namespace rrlcmv
