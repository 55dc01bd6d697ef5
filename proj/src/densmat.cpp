#include "wpd/densmat.hpp"

#include <cmath>
#include <sstream>

namespace wpd {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(CVector amplitudes, std::vector<std::string> labels)
    : amplitudes_(std::move(amplitudes)), labels_(std::move(labels)) {
  if (amplitudes_.size() < 2) {
    throw std::invalid_argument("state vector needs at least 2 amplitudes");
  }
  if (labels_.size() != dim()) {
    throw std::invalid_argument("state vector: " + std::to_string(labels_.size()) +
                                " labels for " + std::to_string(dim()) + " amplitudes");
  }
}

StateVector::StateVector(CVector amplitudes)
    : StateVector(amplitudes, default_labels(static_cast<std::size_t>(amplitudes.size()))) {}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector(Eigen::Map<const CVector>(amplitudes.begin(),
                                            static_cast<Eigen::Index>(amplitudes.size()))) {}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  return StateVector(amplitudes_ / n, labels_);
}

// ---------------------------------------------------------------------------
// Validation

std::string ValidationReport::describe() const {
  std::ostringstream os;
  os.precision(3);
  os << "hermiticity deviation " << hermiticity_deviation << (hermitian ? " (ok)" : " (FAIL)")
     << ", trace deviation " << trace_deviation << (unit_trace ? " (ok)" : " (FAIL)")
     << ", min eigenvalue " << min_eigenvalue << (positive ? " (ok)" : " (FAIL)");
  return os.str();
}

ValidationReport validate(const CMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("density matrix must be square, got " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()));
  }
  if (m.rows() == 0) throw std::invalid_argument("density matrix must be non-empty");

  ValidationReport r;
  r.hermiticity_deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  r.trace_deviation = std::abs(m.trace() - Complex(1.0, 0.0));

  const CMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = solver.eigenvalues().minCoeff();

  r.hermitian = r.hermiticity_deviation <= tol.hermiticity;
  r.unit_trace = r.trace_deviation <= tol.trace;
  r.positive = r.min_eigenvalue >= -tol.psd;
  return r;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(CMatrix entries, std::vector<std::string> labels,
                             const Tolerances& tol)
    : entries_(std::move(entries)), labels_(std::move(labels)) {
  const ValidationReport report = validate(entries_, tol);
  if (labels_.size() != dim()) {
    throw std::invalid_argument("density matrix: " + std::to_string(labels_.size()) +
                                " labels for dimension " + std::to_string(dim()));
  }
  if (!report.ok()) throw InvariantError("invalid density matrix: " + report.describe());
}

DensityMatrix::DensityMatrix(CMatrix entries, const Tolerances& tol)
    : DensityMatrix(entries, default_labels(static_cast<std::size_t>(entries.rows())), tol) {}

DensityMatrix::DensityMatrix(UncheckedTag, CMatrix entries, std::vector<std::string> labels)
    : entries_(std::move(entries)), labels_(std::move(labels)) {}

DensityMatrix DensityMatrix::unchecked(CMatrix entries, std::vector<std::string> labels) {
  return DensityMatrix(UncheckedTag{}, std::move(entries), std::move(labels));
}

// ---------------------------------------------------------------------------
// Ensemble

Ensemble::Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("ensemble must have at least one member");
  const std::size_t n = members_.front().state.dim();
  double total = 0.0;
  for (const auto& m : members_) {
    if (!(m.weight >= 0.0)) throw std::invalid_argument("ensemble weights must be nonnegative");
    if (m.state.dim() != n) {
      throw std::invalid_argument("ensemble members have mismatched dimensions (" +
                                  std::to_string(n) + " vs " + std::to_string(m.state.dim()) + ")");
    }
    total += m.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("ensemble weights sum to " + std::to_string(total) + ", not 1");
  }
}

// ---------------------------------------------------------------------------

DensityMatrix pure_density(const StateVector& psi) {
  if (!psi.is_normalized()) {
    throw InvariantError("state is not normalized: norm deviates from 1 by " +
                         std::to_string(std::abs(psi.norm() - 1.0)));
  }
  // Absorb the admitted norm slack so the trace lands within construction tolerance.
  const CVector v = psi.amplitudes() / psi.norm();
  return DensityMatrix(v * v.adjoint(), psi.labels());
}

DensityMatrix mixed_density(const Ensemble& ensemble) {
  const auto& members = ensemble.members();
  const auto n = static_cast<Eigen::Index>(members.front().state.dim());
  CMatrix rho = CMatrix::Zero(n, n);
  for (const auto& m : members) {
    if (!m.state.is_normalized()) {
      throw InvariantError("ensemble member is not normalized");
    }
    const CVector v = m.state.amplitudes() / m.state.norm();
    rho.noalias() += m.weight * (v * v.adjoint());
  }
  return DensityMatrix(std::move(rho), members.front().state.labels());
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum_ij rho_ij rho_ji = sum_ij |rho_ij|^2 for Hermitian rho.
  return (rho.entries() * rho.entries()).trace().real();
}

Eigen::VectorXd spectrum(const DensityMatrix& rho) {
  const CMatrix sym = 0.5 * (rho.entries() + rho.entries().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace wpd
