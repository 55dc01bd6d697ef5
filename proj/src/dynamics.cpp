#include "wpd/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wpd {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_same_dim(const Hamiltonian& h, const DensityMatrix& rho) {
  if (h.dim() != rho.dim()) {
    throw std::invalid_argument("dimension mismatch: Hamiltonian is " + std::to_string(h.dim()) +
                                "x" + std::to_string(h.dim()) + ", density matrix is " +
                                std::to_string(rho.dim()) + "x" + std::to_string(rho.dim()));
  }
}

void require_dim(const DensityMatrix& rho, std::size_t n, const char* what) {
  if (rho.dim() != n) {
    throw std::invalid_argument(std::string(what) + " needs n = " + std::to_string(n) +
                                ", got n = " + std::to_string(rho.dim()));
  }
}

DensityMatrix finish(CMatrix m, const std::vector<std::string>& labels) {
  return DensityMatrix(std::move(m), labels, Tolerances::evolved());
}

}  // namespace

void TimeGrid::check() const {
  if (!(step > 0.0)) throw std::invalid_argument("time grid step must be > 0");
  if (count < 1) throw std::invalid_argument("time grid count must be >= 1");
}

TimeGrid TimeGrid::span(double start, double stop, std::size_t count, TimeAxis axis) {
  if (count < 2) throw std::invalid_argument("span needs at least 2 points");
  return {start, (stop - start) / static_cast<double>(count - 1), count, axis};
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Eigen: return "eigen";
    case Method::Closed: return "closed";
    case Method::Rk4: return "rk4";
  }
  throw std::logic_error("unknown Method");
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::Eigen, Method::Closed, Method::Rk4}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::optional<ClosedRegime> closed_form_regime(const Hamiltonian& h) {
  const auto& origin = h.origin();
  if (!origin || !origin->params.uniform_epsilon()) return std::nullopt;
  const HubbardParams& p = origin->params;
  if (origin->filling == Filling::OneElectron) return ClosedRegime::OneElectron;
  if (p.hopping == 0.0) return ClosedRegime::TwoElectronAtomic;
  if (p.interaction == 0.0) return ClosedRegime::TwoElectronFree;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Eigenpropagation

EigenPropagator::EigenPropagator(const Hamiltonian& h)
    : es_(eigensystem(h)), hbar_(h.hbar()), reference_energy_(es_.eigenvalues.mean()) {}

DensityMatrix EigenPropagator::evolve(const DensityMatrix& rho0, double t) const {
  if (static_cast<Eigen::Index>(rho0.dim()) != es_.eigenvalues.size()) {
    throw std::invalid_argument("dimension mismatch between Hamiltonian and density matrix");
  }
  if (t == 0.0) return rho0;
  // Phases relative to the mean level; a global phase cancels in U rho U^dagger.
  const Eigen::VectorXd shifted = es_.eigenvalues.array() - reference_energy_;
  const CVector phases = (-kI * (t / hbar_) * shifted.cast<Complex>()).array().exp();
  const CMatrix u = es_.eigenvectors * phases.asDiagonal() * es_.eigenvectors.adjoint();
  return finish(u * rho0.entries() * u.adjoint(), rho0.labels());
}

DensityMatrix evolve_eigen(const Hamiltonian& h, const DensityMatrix& rho0, double t) {
  require_same_dim(h, rho0);
  return EigenPropagator(h).evolve(rho0, t);
}

// ---------------------------------------------------------------------------
// Closed forms

DensityMatrix closed_form_1e(const DensityMatrix& rho0, double omega12, double t) {
  require_dim(rho0, 2, "closed_form_1e");
  const Complex r11 = rho0(0, 0), r22 = rho0(1, 1);
  const Complex r12 = rho0(0, 1), r21 = rho0(1, 0);
  const double c = std::cos(omega12 * t);
  const double s = std::sin(omega12 * t);

  CMatrix m(2, 2);
  m(0, 0) = 0.5 * (r11 + r22 + (r11 - r22) * c - kI * (r12 - r21) * s);
  m(1, 1) = 0.5 * (r11 + r22 + (r22 - r11) * c + kI * (r12 - r21) * s);
  m(0, 1) = 0.5 * (r12 + r21 + (r12 - r21) * c - kI * (r11 - r22) * s);
  m(1, 0) = std::conj(m(0, 1));
  return finish(std::move(m), rho0.labels());
}

DensityMatrix closed_form_2e_caseI(const DensityMatrix& rho0, double u, double hbar, double t) {
  require_dim(rho0, 4, "closed_form_2e_caseI");
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be > 0");
  const Complex forward = std::exp(-kI * u * t / hbar);
  const Complex backward = std::conj(forward);

  CMatrix m = rho0.entries();
  // Zero-based indices: 0 = updn;0, 1 = up;dn, 2 = dn;up, 3 = 0;updn.
  m(0, 1) *= forward;
  m(0, 2) *= forward;
  // m(0, 3): both doubly occupied states sit at 2e + U, no relative phase.
  // m(1, 2): both singly occupied states sit at 2e.
  m(1, 3) *= backward;
  m(2, 3) *= backward;
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
  }
  return finish(std::move(m), rho0.labels());
}

FreePairPropagator::FreePairPropagator(const DensityMatrix& rho0, double hopping, double hbar)
    : labels_(rho0.labels()), omega12_(2.0 * hopping / hbar) {
  require_dim(rho0, 4, "closed_form_2e_caseII");
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be > 0");

  // Eigenspaces of the U = 0 hopping matrix, labeled by E / 2T in {-1, 0, +1}.
  Eigen::Vector4cd bonding, antibonding;
  bonding << 0.5, 0.5, 0.5, 0.5;
  antibonding << 0.5, -0.5, -0.5, 0.5;
  std::array<CMatrix, 3> projector;
  projector[0] = bonding * bonding.adjoint();
  projector[2] = antibonding * antibonding.adjoint();
  projector[1] = CMatrix::Identity(4, 4) - projector[0] - projector[2];

  // P_a rho P_b evolves as exp(-i (E_a - E_b) t / hbar) = exp(i (k_b - k_a) omega_12 t).
  for (auto& h : harmonics_) h = CMatrix::Zero(4, 4);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const int m = b - a;
      harmonics_[static_cast<std::size_t>(m + 2)] +=
          projector[static_cast<std::size_t>(a)] * rho0.entries() *
          projector[static_cast<std::size_t>(b)];
    }
  }
}

const CMatrix& FreePairPropagator::harmonic(int m) const {
  if (m < -2 || m > 2) throw std::out_of_range("harmonic index must be in [-2, 2]");
  return harmonics_[static_cast<std::size_t>(m + 2)];
}

DensityMatrix FreePairPropagator::evaluate(double t) const {
  CMatrix m = CMatrix::Zero(4, 4);
  for (int k = -2; k <= 2; ++k) {
    m += std::exp(kI * (static_cast<double>(k) * omega12_ * t)) * harmonic(k);
  }
  return finish(std::move(m), labels_);
}

DensityMatrix closed_form_2e_caseII(const DensityMatrix& rho0, double hopping, double hbar,
                                    double t) {
  return FreePairPropagator(rho0, hopping, hbar).evaluate(t);
}

// ---------------------------------------------------------------------------
// RK4

namespace {

template <typename M>
M rk4_march(const M& h, M rho, double hbar, double dt, long steps) {
  const Complex scale = -kI / hbar;
  // For Hermitian H and rho, rho H = (H rho)^dagger, so [H, rho] = A - A^dagger.
  auto rhs = [&](const M& r) -> M {
    const M a = h * r;
    return scale * (a - a.adjoint());
  };
  for (long k = 0; k < steps; ++k) {
    const M k1 = rhs(rho);
    const M k2 = rhs(rho + (0.5 * dt) * k1);
    const M k3 = rhs(rho + (0.5 * dt) * k2);
    const M k4 = rhs(rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

}  // namespace

double default_rk4_step(const Hamiltonian& h) {
  const Eigensystem es = eigensystem(h);
  const double width = es.eigenvalues.maxCoeff() - es.eigenvalues.minCoeff();
  if (width <= 0.0) return std::numeric_limits<double>::infinity();
  return 0.001 * 2.0 * std::numbers::pi * h.hbar() / width;
}

DensityMatrix evolve_rk4(const Hamiltonian& h, const DensityMatrix& rho0, double t, double dt) {
  require_same_dim(h, rho0);
  if (!(dt > 0.0)) throw std::invalid_argument("RK4 step must be > 0");
  if (t == 0.0) return rho0;

  const long steps = std::isinf(dt) ? 1L : std::max(1L, static_cast<long>(std::ceil(std::abs(t) / dt)));
  const double step = t / static_cast<double>(steps);

  // Removing the trace of H leaves the commutator unchanged and keeps large
  // site energies from amplifying rounding.
  const auto n = static_cast<Eigen::Index>(h.dim());
  const CMatrix centered = h.entries() - (h.entries().trace() / static_cast<double>(n)) *
                                             CMatrix::Identity(n, n);

  CMatrix out;
  switch (n) {
    case 2:
      out = rk4_march<Eigen::Matrix2cd>(centered, rho0.entries(), h.hbar(), step, steps);
      break;
    case 4:
      out = rk4_march<Eigen::Matrix4cd>(centered, rho0.entries(), h.hbar(), step, steps);
      break;
    default:
      out = rk4_march<CMatrix>(centered, rho0.entries(), h.hbar(), step, steps);
  }

  const double drift = std::abs(out.trace() - rho0.entries().trace());
  if (drift > 1e-9) {
    throw InvariantError("RK4 trace drift " + std::to_string(drift) + " exceeds 1e-9");
  }
  return finish(std::move(out), rho0.labels());
}

// ---------------------------------------------------------------------------
// Traces

double absolute_time(const Hamiltonian& h, TimeAxis axis, double value) {
  if (axis == TimeAxis::Absolute) return value;
  const auto& origin = h.origin();
  if (!origin) throw std::invalid_argument("omega_12 t axis needs a Hubbard Hamiltonian");
  const double omega = origin->params.omega12();
  if (omega == 0.0) {
    throw std::invalid_argument("omega_12 t axis is undefined for T = 0; use absolute time");
  }
  return value / omega;
}

Evolver::Evolver(const Hamiltonian& h, const DensityMatrix& rho0, Method method,
                 std::optional<double> rk4_step)
    : h_(h), rho0_(rho0), method_(method) {
  require_same_dim(h_, rho0_);
  switch (method_) {
    case Method::Eigen:
      eigen_.emplace(h_);
      break;
    case Method::Closed:
      regime_ = closed_form_regime(h_);
      if (!regime_) {
        throw RegimeError(
            "no closed form for this Hamiltonian: closed forms cover one electron, or two "
            "electrons with T = 0 or U = 0, all with equal site energies");
      }
      if (*regime_ == ClosedRegime::TwoElectronFree) {
        free_pair_.emplace(rho0_, h_.origin()->params.hopping, h_.hbar());
      }
      break;
    case Method::Rk4:
      rk4_step_ = rk4_step.value_or(default_rk4_step(h_));
      if (!(rk4_step_ > 0.0)) throw std::invalid_argument("RK4 step must be > 0");
      break;
  }
}

DensityMatrix Evolver::at(double t) const {
  switch (method_) {
    case Method::Eigen: return eigen_->evolve(rho0_, t);
    case Method::Rk4: return evolve_rk4(h_, rho0_, t, rk4_step_);
    case Method::Closed: {
      const HubbardParams& p = h_.origin()->params;
      switch (*regime_) {
        case ClosedRegime::OneElectron: return closed_form_1e(rho0_, p.omega12(), t);
        case ClosedRegime::TwoElectronAtomic:
          return closed_form_2e_caseI(rho0_, p.interaction, p.hbar, t);
        case ClosedRegime::TwoElectronFree: return free_pair_->evaluate(t);
      }
    }
  }
  throw std::logic_error("unreachable");
}

ObservableTrace trace_observables(const Hamiltonian& h, const DensityMatrix& rho0,
                                  const TimeGrid& grid, const std::vector<MeasureKind>& kinds,
                                  Method method, const TraceOptions& options) {
  grid.check();
  const Evolver evolver(h, rho0, method, options.rk4_step);
  const double t0 = absolute_time(h, grid.axis, options.initial_time);

  ObservableTrace trace;
  trace.grid = grid;
  trace.kinds = kinds;
  for (MeasureKind k : kinds) trace.series[k].resize(grid.count);
  if (options.keep_snapshots) trace.snapshots.emplace();

  // Every point is a pure function of its own time; nothing carries between points.
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double t = absolute_time(h, grid.axis, grid.at(i)) - t0;
    DensityMatrix rho = evolver.at(t);
    for (MeasureKind k : kinds) trace.series[k][i] = evaluate(k, rho);
    if (trace.snapshots) trace.snapshots->push_back(std::move(rho));
  }
  return trace;
}

std::vector<double> method_deviation(const Hamiltonian& h, const DensityMatrix& rho0,
                                     const TimeGrid& grid, const std::vector<Method>& methods,
                                     const TraceOptions& options) {
  grid.check();
  std::vector<Evolver> evolvers;
  for (Method m : methods) evolvers.emplace_back(h, rho0, m, options.rk4_step);
  const double t0 = absolute_time(h, grid.axis, options.initial_time);

  std::vector<double> out(grid.count, 0.0);
  std::vector<CMatrix> states(evolvers.size());
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double t = absolute_time(h, grid.axis, grid.at(i)) - t0;
    for (std::size_t e = 0; e < evolvers.size(); ++e) states[e] = evolvers[e].at(t).entries();
    double worst = 0.0;
    for (std::size_t a = 0; a < states.size(); ++a) {
      for (std::size_t b = a + 1; b < states.size(); ++b) {
        worst = std::max(worst, (states[a] - states[b]).cwiseAbs().maxCoeff());
      }
    }
    out[i] = worst;
  }
  return out;
}

}  // namespace wpd
