// dynamics.hpp
//
// Unitary evolution of density matrices, d rho/dt = (-i/hbar)[H, rho], by
// three independent routes:
//
//   eigen   rho(t) = U rho(0) U^dagger with U = exp(-iHt/hbar) from the
//           Hermitian eigendecomposition of H.
//   closed  explicit time dependence for the solvable Hubbard regimes: one
//           electron (any T), two electrons with T = 0, two electrons with U = 0.
//   rk4     classical fourth-order Runge-Kutta on the commutator equation.
//
// Closed forms assume equal site energies; the common energy drops out of
// every commutator. One-electron phases are omega_12 t with
// omega_12 = (E_2 - E_1)/hbar = 2T/hbar.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "wpd/densmat.hpp"
#include "wpd/hubbard.hpp"
#include "wpd/measures.hpp"

namespace wpd {

// A closed form was requested for a Hamiltonian outside its solvable regime.
class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TimeAxis {
  Omega12,  // grid values are the dimensionless phase omega_12 t
  Absolute  // grid values are times in the units fixed by hbar and the energies
};

struct TimeGrid {
  double start = 0.0;
  double step = 1.0;
  std::size_t count = 1;
  TimeAxis axis = TimeAxis::Omega12;

  // Throws std::invalid_argument unless step > 0 and count >= 1.
  void check() const;
  double at(std::size_t k) const { return start + static_cast<double>(k) * step; }
  // Evenly spaced grid including both endpoints.
  static TimeGrid span(double start, double stop, std::size_t count,
                       TimeAxis axis = TimeAxis::Omega12);
};

enum class Method { Eigen, Closed, Rk4 };

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

enum class ClosedRegime { OneElectron, TwoElectronAtomic, TwoElectronFree };

// Which closed form, if any, applies to a Hubbard Hamiltonian.
std::optional<ClosedRegime> closed_form_regime(const Hamiltonian& h);

// ---------------------------------------------------------------------------
// Exact eigenpropagation

class EigenPropagator {
 public:
  explicit EigenPropagator(const Hamiltonian& h);

  // Throws std::invalid_argument on dimension mismatch.
  DensityMatrix evolve(const DensityMatrix& rho0, double t) const;

 private:
  Eigensystem es_;
  double hbar_;
  double reference_energy_;
};

DensityMatrix evolve_eigen(const Hamiltonian& h, const DensityMatrix& rho0, double t);

// ---------------------------------------------------------------------------
// Closed forms

// One electron on two sites. Requires n == 2.
DensityMatrix closed_form_1e(const DensityMatrix& rho0, double omega12, double t);

// Two electrons, T = 0. Off-diagonals pick up exp(-+iUt/hbar) while the
// singly occupied pair (2,3) and the doubly occupied pair (1,4) keep their
// coherence fixed. Requires n == 4.
DensityMatrix closed_form_2e_caseI(const DensityMatrix& rho0, double u, double hbar, double t);

// Two electrons, U = 0. Every element is sum_{m=-2..2} c_m exp(i m omega_12 t),
// omega_12 = 2T/hbar. The coefficient matrices are obtained once by projecting
// rho(0) onto the three eigenspaces of the hopping Hamiltonian.
class FreePairPropagator {
 public:
  FreePairPropagator(const DensityMatrix& rho0, double hopping, double hbar);

  double omega12() const { return omega12_; }
  // Coefficient matrix of exp(i m omega_12 t), m in [-2, 2].
  const CMatrix& harmonic(int m) const;
  DensityMatrix evaluate(double t) const;

 private:
  std::array<CMatrix, 5> harmonics_;
  std::vector<std::string> labels_;
  double omega12_;
};

DensityMatrix closed_form_2e_caseII(const DensityMatrix& rho0, double hopping, double hbar,
                                    double t);

// ---------------------------------------------------------------------------
// Runge-Kutta oracle

// 0.001 of the shortest oscillation period present in rho(t), 2 pi hbar / (E_max - E_min).
double default_rk4_step(const Hamiltonian& h);

// Integrates with ceil(|t|/dt) equal steps. Throws std::invalid_argument for
// dt <= 0 or a dimension mismatch, InvariantError if the trace drifts by more
// than 1e-9.
DensityMatrix evolve_rk4(const Hamiltonian& h, const DensityMatrix& rho0, double t, double dt);

// ---------------------------------------------------------------------------
// Observable traces

struct ObservableTrace {
  TimeGrid grid;
  std::vector<MeasureKind> kinds;
  std::map<MeasureKind, std::vector<double>> series;
  std::optional<std::vector<DensityMatrix>> snapshots;

  const std::vector<double>& operator[](MeasureKind k) const { return series.at(k); }
};

struct TraceOptions {
  double initial_time = 0.0;           // time of rho0, in grid units
  std::optional<double> rk4_step;      // absolute time; default_rk4_step when unset
  bool keep_snapshots = false;
};

// Convert a grid value to absolute time for h. Omega12 axes need T > 0.
double absolute_time(const Hamiltonian& h, TimeAxis axis, double value);

// Single-point dispatch over the three methods.
class Evolver {
 public:
  Evolver(const Hamiltonian& h, const DensityMatrix& rho0, Method method,
          std::optional<double> rk4_step = std::nullopt);

  // t is absolute time elapsed since rho0.
  DensityMatrix at(double t) const;

 private:
  Hamiltonian h_;
  DensityMatrix rho0_;
  Method method_;
  std::optional<EigenPropagator> eigen_;
  std::optional<FreePairPropagator> free_pair_;
  std::optional<ClosedRegime> regime_;
  double rk4_step_ = 0.0;
};

// Throws RegimeError when method == Closed outside the closed-form regimes and
// InvariantError when an evolved state fails validation.
ObservableTrace trace_observables(const Hamiltonian& h, const DensityMatrix& rho0,
                                  const TimeGrid& grid, const std::vector<MeasureKind>& kinds,
                                  Method method, const TraceOptions& options = {});

// Max elementwise deviation between the evolved matrices of every pair of
// methods, per grid point.
std::vector<double> method_deviation(const Hamiltonian& h, const DensityMatrix& rho0,
                                     const TimeGrid& grid, const std::vector<Method>& methods,
                                     const TraceOptions& options = {});

}  // namespace wpd
