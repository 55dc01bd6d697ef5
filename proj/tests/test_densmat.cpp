#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "wpd/densmat.hpp"

namespace {

using wpd::CMatrix;
using wpd::Complex;
using wpd::DensityMatrix;
using wpd::StateVector;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

TEST(StateVector, RejectsShortVectors) {
  EXPECT_THROW(StateVector(wpd::CVector::Ones(1)), std::invalid_argument);
}

TEST(StateVector, NormalizedHasUnitNorm) {
  const StateVector psi{Complex(3, 1), Complex(0, -4), Complex(2, 2)};
  EXPECT_NEAR(psi.normalized().norm(), 1.0, 1e-12);
  EXPECT_THROW(StateVector({0.0, 0.0}).normalized(), std::invalid_argument);
}

TEST(PureDensity, BasisState) {
  const DensityMatrix rho = wpd::pure_density(StateVector{1.0, 0.0});
  EXPECT_EQ(rho(0, 0), Complex(1.0));
  EXPECT_EQ(rho(0, 1), Complex(0.0));
  EXPECT_EQ(rho(1, 1), Complex(0.0));
}

TEST(PureDensity, EqualSuperposition) {
  const DensityMatrix rho = wpd::pure_density(StateVector{kInvSqrt2, kInvSqrt2});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(rho(i, j) - 0.5), 0.0, 1e-15);
}

TEST(PureDensity, FigureOneAmplitudes) {
  // psi = (i sqrt 0.6, -sqrt 0.4): rho_12 = psi_1 conj(psi_2) = -i sqrt(0.24).
  const DensityMatrix rho =
      wpd::pure_density(StateVector{Complex(0, std::sqrt(0.6)), Complex(-std::sqrt(0.4), 0)});
  EXPECT_NEAR(rho(0, 0).real(), 0.6, 1e-15);
  EXPECT_NEAR(rho(1, 1).real(), 0.4, 1e-15);
  EXPECT_NEAR(rho(0, 1).real(), 0.0, 1e-15);
  EXPECT_NEAR(rho(0, 1).imag(), -0.489897948556635, 1e-14);
  EXPECT_NEAR(wpd::purity(rho), 1.0, 1e-12);
}

TEST(PureDensity, RejectsUnnormalized) {
  EXPECT_THROW(wpd::pure_density(StateVector{0.9, 0.0}), wpd::InvariantError);
  // Within 1e-9 is accepted and absorbed.
  const DensityMatrix rho = wpd::pure_density(StateVector{1.0 + 5e-10, 0.0});
  EXPECT_NEAR(rho(0, 0).real(), 1.0, 1e-15);
}

TEST(MixedDensity, SingleMemberIsPure) {
  const StateVector psi{Complex(0.6, 0), Complex(0, 0.8)};
  const DensityMatrix a = wpd::mixed_density(wpd::Ensemble({{1.0, psi}}));
  const DensityMatrix b = wpd::pure_density(psi);
  EXPECT_LT((a.entries() - b.entries()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(MixedDensity, EqualMixturesGiveHalfIdentity) {
  const CMatrix half_id = 0.5 * CMatrix::Identity(2, 2);
  const DensityMatrix basis =
      wpd::mixed_density(wpd::Ensemble({{0.5, StateVector{1.0, 0.0}}, {0.5, StateVector{0.0, 1.0}}}));
  EXPECT_LT((basis.entries() - half_id).cwiseAbs().maxCoeff(), 1e-15);

  const DensityMatrix plus_minus = wpd::mixed_density(wpd::Ensemble(
      {{0.5, StateVector{kInvSqrt2, kInvSqrt2}}, {0.5, StateVector{kInvSqrt2, -kInvSqrt2}}}));
  EXPECT_LT((plus_minus.entries() - half_id).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Ensemble, RejectsBadWeightsAndDimensions) {
  const StateVector a{1.0, 0.0};
  const StateVector b{1.0, 0.0, 0.0};
  EXPECT_THROW(wpd::Ensemble({{0.5, a}, {0.4, a}}), std::invalid_argument);
  EXPECT_THROW(wpd::Ensemble({{1.5, a}, {-0.5, a}}), std::invalid_argument);
  EXPECT_THROW(wpd::Ensemble({{0.5, a}, {0.5, b}}), std::invalid_argument);
  EXPECT_THROW(wpd::Ensemble({}), std::invalid_argument);
}

TEST(Purity, KnownValues) {
  EXPECT_NEAR(wpd::purity(DensityMatrix(0.5 * CMatrix::Identity(2, 2))), 0.5, 1e-15);
  EXPECT_NEAR(wpd::purity(DensityMatrix(CMatrix::Constant(4, 4, 0.25))), 1.0, 1e-15);
}

TEST(Validate, Examples) {
  EXPECT_TRUE(wpd::validate(CMatrix::Constant(2, 2, 0.5)).ok());

  CMatrix trace_off(2, 2);
  trace_off << 1.0, 0.0, 0.0, 0.1;
  const auto r1 = wpd::validate(trace_off);
  EXPECT_FALSE(r1.ok());
  EXPECT_FALSE(r1.unit_trace);
  EXPECT_NEAR(r1.trace_deviation, 0.1, 1e-15);

  CMatrix negative(2, 2);
  negative << 0.5, 0.6, 0.6, 0.5;
  const auto r2 = wpd::validate(negative);
  EXPECT_TRUE(r2.hermitian);
  EXPECT_TRUE(r2.unit_trace);
  EXPECT_FALSE(r2.positive);
  EXPECT_NEAR(r2.min_eigenvalue, -0.1, 1e-14);

  CMatrix skew(2, 2);
  skew << 0.5, Complex(0, 0.1), Complex(0, 0.1), 0.5;
  EXPECT_FALSE(wpd::validate(skew).hermitian);

  EXPECT_THROW(wpd::validate(CMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST(DensityMatrix, CheckedConstructionThrows) {
  CMatrix bad(2, 2);
  bad << 0.5, 0.6, 0.6, 0.5;
  EXPECT_THROW(DensityMatrix{bad}, wpd::InvariantError);
  EXPECT_THROW(DensityMatrix(CMatrix::Constant(2, 2, 0.5), {"a"}), std::invalid_argument);
}

TEST(PureDensity, BasisCovariance) {
  // Permuting amplitudes permutes rows and columns identically.
  const StateVector psi({Complex(0.1, 0.2), Complex(-0.5, 0.3), Complex(0.4, -0.6)});
  const StateVector n = psi.normalized();
  wpd::CVector permuted(3);
  permuted << n[2], n[0], n[1];
  const int perm[3] = {2, 0, 1};
  const DensityMatrix a = wpd::pure_density(n);
  const DensityMatrix b = wpd::pure_density(StateVector(permuted));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_NEAR(std::abs(b(i, j) - a(perm[i], perm[j])), 0.0, 1e-15);
}

}  // namespace
