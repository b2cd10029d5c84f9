#include <gtest/gtest.h>

#include <random>

#include "../common/oracles.hpp"
#include "rrlcmv/errors.hpp"
#include "rrlcmv/numerics.hpp"

namespace {

using namespace rrlcmv;

TEST(QuadraticForm, IdentityAndDiagonal) {
  ComplexVector w(2);
  w << 1.0, 0.0;
  EXPECT_DOUBLE_EQ(hermitian_quadratic_form(w, ComplexMatrix::Identity(2, 2)), 1.0);

  ComplexVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  ComplexMatrix r = ComplexMatrix::Zero(2, 2);
  r(0, 0) = 2.0;
  r(1, 1) = 4.0;
  EXPECT_NEAR(hermitian_quadratic_form(v, r), 3.0, 1e-15);
}

TEST(QuadraticForm, MatchesLoopOracle) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const int m = 1 + t % 12;
    ComplexMatrix r = oracle::random_matrix(rng, m, m);
    r = (r + r.adjoint()).eval() / 2.0;
    const ComplexVector w = oracle::random_vector(rng, m);
    const double expected = oracle::quadratic_form(w, r).real();
    EXPECT_NEAR(hermitian_quadratic_form(w, r), expected, 1e-12 * std::max(1.0, std::abs(expected)));
  }
}

TEST(QuadraticForm, NonNegativeForPsd) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix r = oracle::random_hpd(rng, 6, 0.0);
    EXPECT_GE(hermitian_quadratic_form(oracle::random_vector(rng, 6), r), 0.0);
  }
}

TEST(QuadraticForm, RejectsBadInput) {
  ComplexMatrix r = ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(hermitian_quadratic_form(ComplexVector::Ones(3), r), DimensionError);
  r(0, 1) = 1.0;
  EXPECT_THROW(hermitian_quadratic_form(ComplexVector::Ones(2), r), NumericError);
}

TEST(SolveHermitian, SmallCases) {
  ComplexVector e1 = ComplexVector::Zero(3);
  e1[0] = 1.0;
  EXPECT_TRUE(solve_hermitian(ComplexMatrix::Identity(3, 3), e1).isApprox(e1));

  ComplexMatrix r = ComplexMatrix::Zero(2, 2);
  r(0, 0) = 2.0;
  r(1, 1) = 5.0;
  ComplexVector b(2);
  b << 2.0, 5.0;
  const ComplexVector x = solve_hermitian(r, b);
  EXPECT_NEAR(std::abs(x[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(x[1] - 1.0), 0.0, 1e-15);
}

TEST(SolveHermitian, ResidualOracle) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + t % 30;
    const ComplexMatrix r = oracle::random_hpd(rng, m, 0.1);
    const ComplexVector b = oracle::random_vector(rng, m);
    const ComplexVector x = solve_hermitian(r, b);
    const ComplexVector res = oracle::matvec(r, x) - b;
    EXPECT_LE(res.norm() / b.norm(), 1e-8);
  }
}

TEST(SolveHermitian, IllConditionedUpTo1e8) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 20; ++t) {
    const int m = 8;
    const ComplexMatrix q = oracle::random_matrix(rng, m, m).householderQr().householderQ();
    Eigen::VectorXd sv = Eigen::VectorXd::LinSpaced(m, 0.0, -8.0);
    for (int i = 0; i < m; ++i) sv[i] = std::pow(10.0, sv[i]);
    ComplexMatrix r = q * sv.cast<Complex>().asDiagonal() * q.adjoint();
    symmetrize(r);
    const ComplexVector b = oracle::random_vector(rng, m);
    const ComplexVector x = solve_hermitian(r, b);
    EXPECT_LE((r * x - b).norm() / b.norm(), 1e-8);
  }
}

TEST(SolveHermitian, SingularReportsCondition) {
  ComplexMatrix r = ComplexMatrix::Zero(3, 3);
  r(0, 0) = 1.0;
  try {
    solve_hermitian(r, ComplexVector(ComplexVector::Ones(3)));
    FAIL() << "singular matrix accepted";
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("condition"), std::string::npos) << e.what();
  }
}

TEST(SolveHermitian, RejectsNonHermitian) {
  ComplexMatrix r = ComplexMatrix::Identity(2, 2);
  r(0, 1) = Complex(0.0, 1.0);
  EXPECT_THROW(solve_hermitian(r, ComplexVector(ComplexVector::Ones(2))), NumericError);
}

TEST(InverseHermitian, MatchesGaussJordan) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix r = oracle::random_hpd(rng, 1 + t, 0.2);
    const ComplexMatrix inv = inverse_hermitian(r);
    EXPECT_LE(oracle::frobenius(inv - oracle::inverse(r)) / oracle::frobenius(inv), 1e-10);
  }
}

TEST(RankOneUpdate, ZeroSnapshot) {
  const ComplexMatrix p = ComplexMatrix::Identity(2, 2);
  const RankOneUpdate u = rank_one_inverse_update(p, ComplexVector::Zero(2), 1.0);
  EXPECT_EQ(u.gain.norm(), 0.0);
  EXPECT_TRUE(u.inverse.isApprox(p));
}

TEST(RankOneUpdate, ScalarCase) {
  const RankOneUpdate u =
      rank_one_inverse_update(ComplexMatrix::Identity(1, 1), ComplexVector::Ones(1), 1.0);
  EXPECT_NEAR(std::abs(u.gain[0] - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u.inverse(0, 0) - 0.5), 0.0, 1e-15);
}

TEST(RankOneUpdate, SingleStepMatchesDirectInverse) {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 50; ++t) {
    const int m = 2 + t % 10;
    const double alpha = 0.9 + 0.1 * (t % 5) / 4.0;
    const ComplexMatrix p_prev = oracle::inverse(oracle::random_hpd(rng, m, 0.5));
    const ComplexVector r = oracle::random_vector(rng, m);
    const RankOneUpdate u = rank_one_inverse_update(p_prev, r, alpha);
    const ComplexMatrix direct =
        oracle::inverse(alpha * oracle::inverse(p_prev) + r * r.adjoint());
    EXPECT_LE(oracle::frobenius(u.inverse - direct) / oracle::frobenius(direct), 1e-8);
  }
}

TEST(RankOneUpdate, ThirtyStepsInvertAccumulatedCovariance) {
  std::mt19937_64 rng(17);
  const int m = 6;
  const double alpha = 0.97;
  const double delta = 10.0;
  ComplexMatrix p = delta * ComplexMatrix::Identity(m, m);
  ComplexMatrix acc = ComplexMatrix::Identity(m, m) / delta;
  for (int i = 0; i < 30; ++i) {
    const ComplexVector r = oracle::random_vector(rng, m);
    p = rank_one_inverse_update(p, r, alpha).inverse;
    acc = (alpha * acc + r * r.adjoint()).eval();
  }
  EXPECT_LE(oracle::frobenius(p * acc - ComplexMatrix::Identity(m, m)), 1e-6);
}

TEST(RankOneUpdate, StaysHermitianAndRejectsBadAlpha) {
  std::mt19937_64 rng(18);
  ComplexMatrix p = ComplexMatrix::Identity(5, 5);
  for (int i = 0; i < 200; ++i) {
    p = rank_one_inverse_update(p, oracle::random_vector(rng, 5), 0.99).inverse;
  }
  EXPECT_EQ((p - p.adjoint()).norm(), 0.0);
  EXPECT_THROW(rank_one_inverse_update(p, oracle::random_vector(rng, 5), 0.0), Error);
  EXPECT_THROW(rank_one_inverse_update(p, oracle::random_vector(rng, 5), 1.5), Error);
}

TEST(Finiteness, Detected) {
  ComplexVector v = ComplexVector::Ones(3);
  EXPECT_NO_THROW(require_finite(v, "v"));
  v[1] = Complex(std::nan(""), 0.0);
  EXPECT_THROW(require_finite(v, "v"), NumericError);
}

}  // namespace
