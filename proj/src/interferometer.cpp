#include "wpd/interferometer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace wpd {

namespace {

constexpr double kQuadratureTolerance = 1e-9;
constexpr unsigned kQuadratureDepth = 10;
// Gaussian tails beyond this many standard deviations carry < 1e-30 of the mass.
constexpr double kGaussianCutoff = 12.0;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Complex integrate_phase(auto density, double lo, double hi) {
  using boost::math::quadrature::gauss_kronrod;
  auto integrand = [&](double phi) -> Complex { return density(phi) * std::polar(1.0, phi); };
  return gauss_kronrod<double, 61>::integrate(integrand, lo, hi, kQuadratureDepth,
                                              kQuadratureTolerance);
}

}  // namespace

PhaseDistribution::PhaseDistribution(Variant v) : v_(std::move(v)) {
  std::visit(overloaded{
                 [](const phase::Delta&) {},
                 [](const phase::Uniform& u) {
                   if (!(u.hi > u.lo)) throw std::invalid_argument("uniform phase needs hi > lo");
                 },
                 [](const phase::Gaussian& g) {
                   if (!(g.sigma >= 0.0)) throw std::invalid_argument("gaussian sigma must be >= 0");
                 },
                 [](const phase::Discrete& d) {
                   if (d.points.empty()) throw std::invalid_argument("discrete phase law is empty");
                   double total = 0.0;
                   for (const auto& [w, phi] : d.points) {
                     if (!(w >= 0.0)) throw std::invalid_argument("discrete weights must be >= 0");
                     total += w;
                   }
                   if (std::abs(total - 1.0) > 1e-12) {
                     throw std::invalid_argument("discrete weights sum to " +
                                                 std::to_string(total) + ", not 1");
                   }
                 },
             },
             v_);
}

bool PhaseDistribution::symmetric_about_zero() const {
  return std::visit(overloaded{
                        [](const phase::Delta& d) { return d.phi0 == 0.0; },
                        [](const phase::Uniform& u) { return u.lo == -u.hi; },
                        [](const phase::Gaussian& g) { return g.mean == 0.0; },
                        [](const phase::Discrete& d) {
                          // every (w, phi) must be matched by (w, -phi)
                          for (const auto& [w, phi] : d.points) {
                            double mirrored = 0.0, here = 0.0;
                            for (const auto& [w2, phi2] : d.points) {
                              if (phi2 == -phi) mirrored += w2;
                              if (phi2 == phi) here += w2;
                            }
                            if (mirrored != here) return false;
                          }
                          return true;
                        },
                    },
                    v_);
}

DensityMatrix maximally_coherent(int n) {
  if (n < 2) throw std::invalid_argument("maximally coherent state needs n >= 2");
  const CMatrix m = CMatrix::Constant(n, n, Complex(1.0 / n, 0.0));
  return DensityMatrix(m);
}

double nslit_visibility_formula(int n) {
  if (n < 2) throw std::invalid_argument("n-slit formula needs n >= 2");
  const double pairs = 0.5 * n * (n - 1);
  return pairs / (2.0 + pairs);
}

double double_slit_intensity(double mag1, double mag2, double alpha12) {
  if (mag1 < 0.0 || mag2 < 0.0) throw std::invalid_argument("magnitudes must be >= 0");
  const double value = mag1 * mag1 + mag2 * mag2 + 2.0 * mag1 * mag2 * std::cos(alpha12);
  return std::max(0.0, value);
}

double fringe_visibility(const FringePair& f) {
  if (f.i_min < 0.0 || f.i_max < f.i_min) {
    throw std::invalid_argument("fringe intensities need i_max >= i_min >= 0");
  }
  const double total = f.i_max + f.i_min;
  if (total == 0.0) throw std::invalid_argument("fringe intensities are both zero");
  return (f.i_max - f.i_min) / total;
}

double transition_visibility(const StateVector& a, const StateVector& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw std::invalid_argument("transition visibility is defined for two-level states");
  }
  const double cross = std::abs(a[0] * b[0] * a[1] * b[1]);
  if (cross == 0.0) return 0.0;
  const double direct = std::norm(a[0]) * std::norm(b[0]) + std::norm(a[1]) * std::norm(b[1]);
  return cross / (direct + cross);
}

Complex dephasing_factor(const PhaseDistribution& dist) {
  const Complex d = std::visit(
      overloaded{
          [](const phase::Delta& p) { return std::polar(1.0, p.phi0); },
          [](const phase::Uniform& p) {
            const double density = 1.0 / (p.hi - p.lo);
            return integrate_phase([density](double) { return density; }, p.lo, p.hi);
          },
          [](const phase::Gaussian& p) {
            if (p.sigma == 0.0) return std::polar(1.0, p.mean);
            const double norm = 1.0 / (p.sigma * std::sqrt(2.0 * std::numbers::pi));
            auto density = [&](double phi) {
              const double z = (phi - p.mean) / p.sigma;
              return norm * std::exp(-0.5 * z * z);
            };
            return integrate_phase(density, p.mean - kGaussianCutoff * p.sigma,
                                   p.mean + kGaussianCutoff * p.sigma);
          },
          [](const phase::Discrete& p) {
            Complex sum{0.0, 0.0};
            for (const auto& [w, phi] : p.points) sum += w * std::polar(1.0, phi);
            return sum;
          },
      },
      dist.variant());
  // Rounding can push a near-delta law a hair past the unit circle.
  const double mag = std::abs(d);
  return mag > 1.0 ? d / mag : d;
}

DensityMatrix apply_dephasing(const DensityMatrix& rho, Complex d) {
  if (std::abs(d) > 1.0) {
    throw std::invalid_argument("dephasing factor must satisfy |d| <= 1, got " +
                                std::to_string(std::abs(d)));
  }
  // The map is a Schur product with M (1 on the diagonal, d above, conj(d)
  // below). It keeps every state positive iff M is. For two paths that is
  // |d| <= 1; for more paths a complex d can fail.
  const Eigen::Index n = rho.entries().rows();
  if (n > 2) {
    CMatrix schur = CMatrix::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        schur(i, j) = d;
        schur(j, i) = std::conj(d);
      }
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(schur, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-12) {
      throw std::invalid_argument("dephasing factor does not give a positive map on " +
                                  std::to_string(n) + " paths");
    }
  }
  CMatrix m = rho.entries();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      m(i, j) *= d;
      m(j, i) *= std::conj(d);
    }
  }
  return DensityMatrix(std::move(m), rho.labels(), Tolerances::evolved());
}

}  // namespace wpd
