#include "wpd/hubbard.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace wpd {

void HubbardParams::check() const {
  if (!(hopping >= 0.0)) throw std::invalid_argument("hopping T must be >= 0");
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be > 0");
}

Hamiltonian::Hamiltonian(CMatrix entries, std::vector<std::string> labels, double hbar)
    : entries_(std::move(entries)), labels_(std::move(labels)), hbar_(hbar) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw std::invalid_argument("Hamiltonian must be a non-empty square matrix");
  }
  if (labels_.size() != dim()) throw std::invalid_argument("Hamiltonian label count mismatch");
  if (!(hbar_ > 0.0)) throw std::invalid_argument("hbar must be > 0");
  const double dev = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-12) {
    throw InvariantError("Hamiltonian is not Hermitian (deviation " + std::to_string(dev) + ")");
  }
}

Hamiltonian Hamiltonian::with_origin(Origin origin) const {
  Hamiltonian h = *this;
  h.origin_ = origin;
  return h;
}

// ---------------------------------------------------------------------------
// Fock-space helpers

namespace fock {

namespace {

int parity_below(int mode, Occupation occ) {
  const Occupation below = occ & ((Occupation{1} << mode) - 1);
  return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

}  // namespace

SignedState create(int mode, SignedState s) {
  const Occupation bit = Occupation{1} << mode;
  if (s.sign == 0 || (s.occupation & bit)) return {};
  return {s.sign * parity_below(mode, s.occupation), s.occupation | bit};
}

SignedState annihilate(int mode, SignedState s) {
  const Occupation bit = Occupation{1} << mode;
  if (s.sign == 0 || !(s.occupation & bit)) return {};
  return {s.sign * parity_below(mode, s.occupation), s.occupation & ~bit};
}

SignedState product_state(const std::vector<int>& creation_order) {
  SignedState s{1, 0};
  for (auto it = creation_order.rbegin(); it != creation_order.rend(); ++it) s = create(*it, s);
  return s;
}

}  // namespace fock

namespace {

constexpr int kSites = 2;
constexpr int kSpins = 2;

int mode_index(int site, int spin) { return kSpins * site + spin; }

// <b|H|a> for basis states given as creation orders.
CMatrix build_in_basis(const std::vector<std::vector<int>>& basis, const HubbardParams& p) {
  using fock::SignedState;
  std::vector<SignedState> kets;
  for (const auto& order : basis) kets.push_back(fock::product_state(order));

  const auto n = static_cast<Eigen::Index>(basis.size());
  CMatrix h = CMatrix::Zero(n, n);

  auto deposit = [&](Eigen::Index col, double amplitude, SignedState image) {
    if (image.sign == 0 || amplitude == 0.0) return;
    for (Eigen::Index row = 0; row < n; ++row) {
      const SignedState& b = kets[static_cast<std::size_t>(row)];
      if (b.occupation == image.occupation) {
        h(row, col) += amplitude * b.sign * image.sign;
        return;
      }
    }
    throw std::logic_error("Hubbard term leaves the modeled basis");
  };

  for (Eigen::Index col = 0; col < n; ++col) {
    const SignedState a = kets[static_cast<std::size_t>(col)];
    for (int s = 0; s < kSpins; ++s) {
      for (int i = 0; i < kSites; ++i) {
        const int mi = mode_index(i, s);
        // site energy
        deposit(col, p.epsilon[static_cast<std::size_t>(i)], fock::create(mi, fock::annihilate(mi, a)));
        // hopping j -> i
        for (int j = 0; j < kSites; ++j) {
          if (i == j) continue;
          deposit(col, -p.hopping, fock::create(mi, fock::annihilate(mode_index(j, s), a)));
        }
      }
    }
    for (int i = 0; i < kSites; ++i) {
      const int up = mode_index(i, 0);
      const int dn = mode_index(i, 1);
      deposit(col, p.interaction,
              fock::create(up, fock::annihilate(up, fock::create(dn, fock::annihilate(dn, a)))));
    }
  }
  return h;
}

}  // namespace

Hamiltonian hamiltonian_1e(const HubbardParams& p) {
  p.check();
  const std::vector<std::vector<int>> basis{{mode_index(0, 0)}, {mode_index(1, 0)}};
  return Hamiltonian(build_in_basis(basis, p), {"up;0", "0;up"}, p.hbar)
      .with_origin({p, Filling::OneElectron});
}

Hamiltonian hamiltonian_2e(const HubbardParams& p) {
  p.check();
  const int up1 = mode_index(0, 0), dn1 = mode_index(0, 1);
  const int up2 = mode_index(1, 0), dn2 = mode_index(1, 1);
  const std::vector<std::vector<int>> basis{{up1, dn1}, {up1, dn2}, {up2, dn1}, {up2, dn2}};
  return Hamiltonian(build_in_basis(basis, p), {"updn;0", "up;dn", "dn;up", "0;updn"}, p.hbar)
      .with_origin({p, Filling::TwoElectrons});
}

// ---------------------------------------------------------------------------
// Eigensystems

Eigensystem eigensystem(const CMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw std::invalid_argument("eigensystem needs a non-empty square matrix");
  }
  const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-12) {
    throw InvariantError("eigensystem: matrix is not Hermitian (deviation " +
                         std::to_string(dev) + ")");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw InvariantError("Hermitian eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigensystem eigensystem(const Hamiltonian& h) { return eigensystem(h.entries()); }

Eigensystem eigensystem_2x2(const CMatrix& h) {
  if (h.rows() != 2 || h.cols() != 2) throw std::invalid_argument("eigensystem_2x2 needs 2x2");
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const Complex b = h(0, 1);
  const double mean = 0.5 * (a + d);
  const double half_gap = std::hypot(0.5 * (a - d), std::abs(b));

  Eigensystem es;
  es.eigenvalues.resize(2);
  es.eigenvalues << mean - half_gap, mean + half_gap;
  es.eigenvectors.resize(2, 2);
  if (half_gap == 0.0) {
    es.eigenvectors.setIdentity();
    return es;
  }
  // Rotation angle theta with tan(theta) = |b| / ((a - d)/2), phase of b carried on one component.
  const double theta = std::atan2(std::abs(b), 0.5 * (a - d));
  const Complex phase = std::abs(b) > 0.0 ? b / std::abs(b) : Complex(1.0);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  // Upper eigenvector (E+) = (c, s conj(phase)), lower (E-) = (-s phase, c).
  es.eigenvectors(0, 1) = c;
  es.eigenvectors(1, 1) = s * std::conj(phase);
  es.eigenvectors(0, 0) = -s * phase;
  es.eigenvectors(1, 0) = c;
  return es;
}

}  // namespace wpd
