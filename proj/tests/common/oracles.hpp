#pragma once

// Reference computations written without the library's kernels: plain loops,
// Gauss-Jordan elimination and power iteration.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rrlcmv/numerics.hpp"

namespace oracle {

using rrlcmv::Complex;
using rrlcmv::ComplexMatrix;
using rrlcmv::ComplexVector;

inline Complex cgauss(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

inline ComplexVector random_vector(std::mt19937_64& rng, int n) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v[i] = cgauss(rng);
  return v;
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = cgauss(rng);
  }
  return m;
}

/// A^H A / n + load * I.
inline ComplexMatrix random_hpd(std::mt19937_64& rng, int n, double load = 0.1) {
  const ComplexMatrix a = random_matrix(rng, n + 2, n);
  ComplexMatrix r(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < a.rows(); ++k) s += std::conj(a(k, i)) * a(k, j);
      r(i, j) = s / static_cast<double>(n);
    }
    r(i, i) += load;
  }
  return r;
}

inline Complex dot(const ComplexVector& x, const ComplexVector& y) {
  Complex s = 0.0;
  for (int i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

inline ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v) {
  ComplexVector out(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    Complex s = 0.0;
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

inline Complex quadratic_form(const ComplexVector& w, const ComplexMatrix& r) {
  Complex s = 0.0;
  for (int i = 0; i < r.rows(); ++i) {
    for (int j = 0; j < r.cols(); ++j) s += std::conj(w[i]) * r(i, j) * w[j];
  }
  return s;
}

/// Gauss-Jordan inverse with partial pivoting.
inline ComplexMatrix inverse(const ComplexMatrix& m) {
  const int n = static_cast<int>(m.rows());
  ComplexMatrix a = m;
  ComplexMatrix inv = ComplexMatrix::Identity(n, n);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    }
    if (std::abs(a(piv, c)) == 0.0) throw std::runtime_error("oracle::inverse: singular");
    a.row(c).swap(a.row(piv));
    inv.row(c).swap(inv.row(piv));
    const Complex d = a(c, c);
    for (int j = 0; j < n; ++j) {
      a(c, j) /= d;
      inv(c, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const Complex f = a(r, c);
      if (f == Complex(0.0)) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Minimum-variance weights R^-1 a / (a^H R^-1 a) through the oracle inverse.
inline ComplexVector mvdr(const ComplexMatrix& r, const ComplexVector& a) {
  const ComplexVector x = matvec(inverse(r), a);
  return x / dot(a, x);
}

/// Largest eigenvalue of R_I^-1 R_s by power iteration, as a ratio.
inline double max_generalized_eigenvalue(const ComplexMatrix& r_i, const ComplexMatrix& r_s,
                                         int iters = 500) {
  const ComplexMatrix inv = inverse(r_i);
  ComplexMatrix b(r_s.rows(), r_s.cols());
  for (int i = 0; i < b.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      Complex s = 0.0;
      for (int k = 0; k < b.cols(); ++k) s += inv(i, k) * r_s(k, j);
      b(i, j) = s;
    }
  }
  ComplexVector v = ComplexVector::Ones(b.rows());
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    ComplexVector u = matvec(b, v);
    double norm = 0.0;
    for (int i = 0; i < u.size(); ++i) norm += std::norm(u[i]);
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    v = u / norm;
    // Rayleigh quotient in the R_I inner product, where R_I^-1 R_s is self-adjoint.
    const Complex num = quadratic_form(v, r_s);
    const Complex den = quadratic_form(v, r_i);
    lambda = num.real() / den.real();
  }
  return lambda;
}

inline double frobenius(const ComplexMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
  }
  return std::sqrt(s);
}

/// Independent evaluation of the per-snapshot operation counts.
struct Counts {
  std::uint64_t add;
  std::uint64_t mul;
};

inline Counts table_counts(const std::string& name, std::int64_t m, std::int64_t d) {
  if (name == "LCMV-SG") return {static_cast<std::uint64_t>(3 * m + 1), static_cast<std::uint64_t>(3 * m + 2)};
  if (name == "LCMV-RLS") {
    return {static_cast<std::uint64_t>(3 * m * m - 2 * m + 3),
            static_cast<std::uint64_t>(6 * m * m + 2 * m + 2)};
  }
  if (name == "RJIO-SG") {
    return {static_cast<std::uint64_t>(3 * d * m + 4 * m + 2 * d - 2),
            static_cast<std::uint64_t>(5 * d * m + 2 * m + 5 * d + 2)};
  }
  if (name == "RJIO-RLS") {
    return {static_cast<std::uint64_t>(3 * m * m - m + 3 + 3 * d * d - 7 * d + 3),
            static_cast<std::uint64_t>(7 * m * m + 3 * m + 7 * d * d + 10 * d)};
  }
  if (name == "SMI") {
    const double cube = 2.0 * static_cast<double>(m * m * m) / 3.0;
    const auto c = static_cast<std::int64_t>(std::llround(cube));
    return {static_cast<std::uint64_t>(c + 3 * m * m), static_cast<std::uint64_t>(c + 5 * m * m)};
  }
  throw std::runtime_error("unknown algorithm " + name);
}

}  // namespace oracle
