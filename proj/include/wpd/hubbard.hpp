// hubbard.hpp
//
// Two-site Hubbard Hamiltonians
//
//   H = -T sum_{i != j, s} c+_{is} c_{js} + sum_{i,s} eps_i n_{is} + U sum_i n_{i up} n_{i dn}
//
// for one electron (basis |up;0>, |0;up>) and two electrons of opposite spin
// (basis |updn;0>, |up;dn>, |dn;up>, |0;updn>).
//
// The two-electron basis states are defined as
//
//   |1> = c+_{1up} c+_{1dn} |0>      |2> = c+_{1up} c+_{2dn} |0>
//   |3> = c+_{2up} c+_{1dn} |0>      |4> = c+_{2up} c+_{2dn} |0>
//
// and matrix elements follow from the anticommutation relations. The result is
//
//        | 2e1+U   -T      -T      0     |
//   H =  | -T      e1+e2   0       -T    |
//        | -T      0       e1+e2   -T    |
//        | 0       -T      -T      2e2+U |
//
// With T = 0 the basis is the eigenbasis; states 1 and 4 are degenerate when
// e1 = e2, so rho_14 does not rotate. With U = 0 the spectrum is
// 2e + {-2T, 0, 0, 2T}.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wpd/densmat.hpp"

namespace wpd {

struct HubbardParams {
  std::array<double, 2> epsilon{0.0, 0.0};
  double hopping = 0.0;      // T >= 0
  double interaction = 0.0;  // U
  double hbar = 1.0;         // > 0

  // Throws std::invalid_argument on T < 0 or hbar <= 0.
  void check() const;

  bool uniform_epsilon() const { return epsilon[0] == epsilon[1]; }

  // omega_12 = 2T / hbar, the one-electron level splitting frequency.
  double omega12() const { return 2.0 * hopping / hbar; }
};

enum class Filling { OneElectron = 1, TwoElectrons = 2 };

class Hamiltonian {
 public:
  // Throws InvariantError when entries are not Hermitian within 1e-12.
  Hamiltonian(CMatrix entries, std::vector<std::string> labels, double hbar = 1.0);

  const CMatrix& entries() const { return entries_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  double hbar() const { return hbar_; }

  // Set by hamiltonian_1e / hamiltonian_2e; lets callers recognize closed-form regimes.
  struct Origin {
    HubbardParams params;
    Filling filling;
  };
  const std::optional<Origin>& origin() const { return origin_; }
  Hamiltonian with_origin(Origin origin) const;

 private:
  CMatrix entries_;
  std::vector<std::string> labels_;
  double hbar_;
  std::optional<Origin> origin_;
};

struct Eigensystem {
  Eigen::VectorXd eigenvalues;  // ascending
  CMatrix eigenvectors;         // columns, orthonormal
};

Hamiltonian hamiltonian_1e(const HubbardParams& p);
Hamiltonian hamiltonian_2e(const HubbardParams& p);

// Hermitian eigendecomposition. Throws InvariantError for non-Hermitian input.
Eigensystem eigensystem(const Hamiltonian& h);
Eigensystem eigensystem(const CMatrix& h);

// Closed-form diagonalization of a 2x2 Hermitian matrix.
Eigensystem eigensystem_2x2(const CMatrix& h);

namespace fock {

// Second-quantized operators on a handful of fermionic modes. States are
// occupation bitmasks in the canonical order c+_{m0} c+_{m1} ... |0> with
// m0 < m1 < ...; signs follow the Jordan-Wigner convention.
using Occupation = unsigned;

struct SignedState {
  int sign = 0;  // 0 means the operator annihilated the state
  Occupation occupation = 0;
};

SignedState create(int mode, SignedState s);
SignedState annihilate(int mode, SignedState s);

// Apply c+_{m_0} c+_{m_1} ... (leftmost applied last) to the vacuum.
SignedState product_state(const std::vector<int>& creation_order);

}  // namespace fock

}  // namespace wpd
