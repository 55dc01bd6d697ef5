// densmat.hpp
// State vectors, ensembles and density matrices over a small labeled basis.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace wpd {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Thrown when a numerical object violates one of its invariants
// (Hermiticity, unit trace, positivity, normalization).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Default tolerances for constructing and validating density matrices.
struct Tolerances {
  double hermiticity = 1e-12;
  double trace = 1e-12;
  double psd = 1e-10;

  // Slack for states produced by long numerical integrations.
  static Tolerances evolved() { return {1e-9, 1e-9, 1e-9}; }
};

inline constexpr double kNormalizationTolerance = 1e-9;

// Labels "1".."n" used when a caller does not name the basis.
std::vector<std::string> default_labels(std::size_t n);

class StateVector {
 public:
  StateVector(CVector amplitudes, std::vector<std::string> labels);
  explicit StateVector(CVector amplitudes);
  StateVector(std::initializer_list<Complex> amplitudes);

  const CVector& amplitudes() const { return amplitudes_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = kNormalizationTolerance) const;

  // Copy rescaled to unit norm. Throws std::invalid_argument for the zero vector.
  StateVector normalized() const;

 private:
  CVector amplitudes_;
  std::vector<std::string> labels_;
};

// Diagnostics for a candidate density matrix.
struct ValidationReport {
  double hermiticity_deviation = 0.0;  // max |m_ij - conj(m_ji)|
  double trace_deviation = 0.0;        // |Tr m - 1|
  double min_eigenvalue = 0.0;         // of (m + m^dagger)/2
  bool hermitian = false;
  bool unit_trace = false;
  bool positive = false;

  bool ok() const { return hermitian && unit_trace && positive; }
  std::string describe() const;
};

// Throws std::invalid_argument for non-square input.
ValidationReport validate(const CMatrix& m, const Tolerances& tol = {});

class DensityMatrix {
 public:
  // Checked construction: throws InvariantError if validate() fails.
  DensityMatrix(CMatrix entries, std::vector<std::string> labels, const Tolerances& tol = {});
  explicit DensityMatrix(CMatrix entries, const Tolerances& tol = {});

  // No validation; for results of operations that already guarantee the invariants.
  static DensityMatrix unchecked(CMatrix entries, std::vector<std::string> labels);

  const CMatrix& entries() const { return entries_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  Complex operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  struct UncheckedTag {};
  DensityMatrix(UncheckedTag, CMatrix entries, std::vector<std::string> labels);

  CMatrix entries_;
  std::vector<std::string> labels_;
};

struct EnsembleMember {
  double weight;
  StateVector state;
};

class Ensemble {
 public:
  // Weights must be nonnegative and sum to one within 1e-12; all states must
  // share one dimension.
  explicit Ensemble(std::vector<EnsembleMember> members);

  const std::vector<EnsembleMember>& members() const { return members_; }

 private:
  std::vector<EnsembleMember> members_;
};

// rho_ij = psi_i conj(psi_j). Rejects |‖psi‖ - 1| > 1e-9.
DensityMatrix pure_density(const StateVector& psi);

// Sum_m P_m |psi_m><psi_m|.
DensityMatrix mixed_density(const Ensemble& ensemble);

// Tr(rho^2).
double purity(const DensityMatrix& rho);

// Eigenvalues of the Hermitian part, ascending.
Eigen::VectorXd spectrum(const DensityMatrix& rho);

}  // namespace wpd
