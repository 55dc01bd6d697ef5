#include <cmath>

#include <gtest/gtest.h>

#include "wpd/hubbard.hpp"

namespace {

using wpd::CMatrix;
using wpd::Complex;
using wpd::HubbardParams;

HubbardParams params(double eps, double t, double u = 0.0, double hbar = 1.0) {
  HubbardParams p;
  p.epsilon = {eps, eps};
  p.hopping = t;
  p.interaction = u;
  p.hbar = hbar;
  return p;
}

void expect_eigenpairs(const CMatrix& h, const wpd::Eigensystem& es, double tol) {
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k) {
    const wpd::CVector v = es.eigenvectors.col(k);
    EXPECT_LT((h * v - es.eigenvalues(k) * v).norm(), tol * scale);
  }
  const CMatrix gram = es.eigenvectors.adjoint() * es.eigenvectors;
  EXPECT_LT((gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff(), tol);
}

TEST(HubbardParams, Check) {
  EXPECT_THROW(hamiltonian_1e(params(0, -1)), std::invalid_argument);
  EXPECT_THROW(hamiltonian_2e(params(0, 1, 0, 0.0)), std::invalid_argument);
  EXPECT_DOUBLE_EQ(params(0, 1.5, 0, 0.5).omega12(), 6.0);
}

TEST(Hamiltonian1e, MatrixAndSpectrum) {
  HubbardParams p = params(0, 1);
  p.epsilon = {0.3, -0.2};
  const CMatrix h = wpd::hamiltonian_1e(p).entries();
  CMatrix want(2, 2);
  want << 0.3, -1.0, -1.0, -0.2;
  EXPECT_LT((h - want).cwiseAbs().maxCoeff(), 1e-15);

  const auto es = wpd::eigensystem(wpd::hamiltonian_1e(params(0, 1)));
  EXPECT_NEAR(es.eigenvalues(0), -1.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues(1), 1.0, 1e-14);

  const auto es2 = wpd::eigensystem(wpd::hamiltonian_1e(params(2, 0.5)));
  EXPECT_NEAR(es2.eigenvalues(0), 1.5, 1e-14);
  EXPECT_NEAR(es2.eigenvalues(1), 2.5, 1e-14);

  HubbardParams atomic = params(0, 0);
  atomic.epsilon = {0.7, -0.4};
  const auto es3 = wpd::eigensystem(wpd::hamiltonian_1e(atomic));
  EXPECT_NEAR(es3.eigenvalues(0), -0.4, 1e-15);
  EXPECT_NEAR(es3.eigenvalues(1), 0.7, 1e-15);
}

TEST(Hamiltonian1e, EigenvectorsAreBondingAndAntibonding) {
  const auto es = wpd::eigensystem(wpd::hamiltonian_1e(params(0, 1)));
  const double r = 1.0 / std::sqrt(2.0);
  // Up to a phase: |<v_1|(1,1)/sqrt2>| = 1 and |<v_2|(1,-1)/sqrt2>| = 1.
  EXPECT_NEAR(std::abs(es.eigenvectors(0, 0) * r + es.eigenvectors(1, 0) * r), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(es.eigenvectors(0, 1) * r - es.eigenvectors(1, 1) * r), 1.0, 1e-14);
}

TEST(Hamiltonian2e, MatchesHandDerivedMatrix) {
  // Hand derivation from c+_{1up}c+_{1dn}, c+_{1up}c+_{2dn}, c+_{2up}c+_{1dn}, c+_{2up}c+_{2dn}.
  HubbardParams p = params(0, 0.7, 2.5);
  p.epsilon = {0.4, -1.1};
  const double e1 = 0.4, e2 = -1.1, t = 0.7, u = 2.5;
  CMatrix want(4, 4);
  want << 2 * e1 + u, -t, -t, 0,
          -t, e1 + e2, 0, -t,
          -t, 0, e1 + e2, -t,
          0, -t, -t, 2 * e2 + u;
  EXPECT_LT((wpd::hamiltonian_2e(p).entries() - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Hamiltonian2e, AtomicLimit) {
  const CMatrix h = wpd::hamiltonian_2e(params(0, 0, 4)).entries();
  CMatrix want = CMatrix::Zero(4, 4);
  want.diagonal() << 4, 0, 0, 4;
  EXPECT_LT((h - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Hamiltonian2e, NonInteractingSpectrumFillsOneParticleLevels) {
  // Two opposite-spin electrons in levels eps -+ T: energies 2eps + {-2T, 0, 0, 2T}.
  const auto es = wpd::eigensystem(wpd::hamiltonian_2e(params(0, 1)));
  const double want[] = {-2, 0, 0, 2};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(es.eigenvalues(k), want[k], 1e-14);

  // Gaps are integer multiples of omega_12 = 2T/hbar in {0, 1, 2}.
  const double omega = params(0, 1).omega12();
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double m = (es.eigenvalues(a) - es.eigenvalues(b)) / omega;
      EXPECT_NEAR(m, std::round(m), 1e-13);
      EXPECT_LE(std::abs(std::round(m)), 2.0);
    }
  }
}

TEST(Hamiltonian, EpsilonShiftMovesSpectrumOnly) {
  for (double delta : {1.0, 1e3}) {
    const auto a1 = wpd::eigensystem(wpd::hamiltonian_1e(params(0, 1))).eigenvalues;
    const auto b1 = wpd::eigensystem(wpd::hamiltonian_1e(params(delta, 1))).eigenvalues;
    EXPECT_LT((b1.array() - a1.array() - delta).abs().maxCoeff(), 1e-12 * std::max(1.0, delta));

    const auto a2 = wpd::eigensystem(wpd::hamiltonian_2e(params(0, 1, 3))).eigenvalues;
    const auto b2 = wpd::eigensystem(wpd::hamiltonian_2e(params(delta, 1, 3))).eigenvalues;
    EXPECT_LT((b2.array() - a2.array() - 2 * delta).abs().maxCoeff(), 1e-12 * std::max(1.0, delta));
  }
}

TEST(Eigensystem, GeneralParametersSatisfyInvariants) {
  HubbardParams p = params(0, 0.9, 3.7);
  p.epsilon = {0.25, -0.6};
  for (const auto& h : {wpd::hamiltonian_1e(p), wpd::hamiltonian_2e(p)}) {
    const auto es = wpd::eigensystem(h);
    expect_eigenpairs(h.entries(), es, 1e-10);
    for (Eigen::Index k = 1; k < es.eigenvalues.size(); ++k) {
      EXPECT_LE(es.eigenvalues(k - 1), es.eigenvalues(k));
    }
    CMatrix rebuilt = es.eigenvectors * es.eigenvalues.cast<Complex>().asDiagonal() *
                      es.eigenvectors.adjoint();
    EXPECT_LT((rebuilt - h.entries()).norm(), 1e-10 * h.entries().norm());
  }
}

TEST(Eigensystem, DiagonalInputIsAlreadyDiagonal) {
  CMatrix h = CMatrix::Zero(3, 3);
  h.diagonal() << -1.0, 0.5, 2.0;
  const auto es = wpd::eigensystem(h);
  EXPECT_LT((es.eigenvalues - Eigen::Vector3d(-1.0, 0.5, 2.0)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((es.eigenvectors.cwiseAbs() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Eigensystem, RejectsNonHermitian) {
  CMatrix h(2, 2);
  h << 0, 1, 2, 0;
  EXPECT_THROW(wpd::eigensystem(h), wpd::InvariantError);
  EXPECT_THROW(wpd::Hamiltonian(h, {"a", "b"}), wpd::InvariantError);
}

TEST(Eigensystem, AnalyticTwoByTwoAgreesWithSolver) {
  const CMatrix cases[] = {
      wpd::hamiltonian_1e(params(0, 1)).entries(),
      wpd::hamiltonian_1e(params(2, 0.5)).entries(),
      (CMatrix(2, 2) << 0.3, Complex(0.4, -0.7), Complex(0.4, 0.7), -1.2).finished(),
      (CMatrix(2, 2) << 1.0, 0.0, 0.0, -1.0).finished(),
      (CMatrix(2, 2) << 0.5, 0.0, 0.0, 0.5).finished(),
  };
  for (const CMatrix& h : cases) {
    const auto analytic = wpd::eigensystem_2x2(h);
    const auto numeric = wpd::eigensystem(h);
    EXPECT_LT((analytic.eigenvalues - numeric.eigenvalues).cwiseAbs().maxCoeff(), 1e-14);
    expect_eigenpairs(h, analytic, 1e-14);
  }
}

TEST(Fock, AnticommutationSigns) {
  using namespace wpd::fock;
  // c+_0 c+_1 |0> = - c+_1 c+_0 |0>
  const SignedState a = product_state({0, 1});
  const SignedState b = product_state({1, 0});
  EXPECT_EQ(a.occupation, b.occupation);
  EXPECT_EQ(a.sign, -b.sign);
  // Pauli exclusion and annihilating an empty mode.
  EXPECT_EQ(product_state({2, 2}).sign, 0);
  EXPECT_EQ(annihilate(3, product_state({0})).sign, 0);
  // c_1 c+_0 c+_1 |0> = -c+_0 |0>
  const SignedState c = annihilate(1, product_state({0, 1}));
  EXPECT_EQ(c.occupation, 1u);
  EXPECT_EQ(c.sign, -1);
}

}  // namespace
