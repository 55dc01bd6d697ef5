// interferometer.hpp
// n-path states, fringe formulas, transition visibility and phase-averaged dephasing.

#pragma once

#include <utility>
#include <type_traits>
#include <variant>
#include <vector>

#include "wpd/densmat.hpp"

namespace wpd {

namespace phase {

struct Delta {
  double phi0 = 0.0;
};
struct Uniform {
  double lo = 0.0;
  double hi = 0.0;
};
struct Gaussian {
  double mean = 0.0;
  double sigma = 0.0;
};
struct Discrete {
  std::vector<std::pair<double, double>> points;  // (weight, phi)
};

}  // namespace phase

// Probability law of a random relative phase (radians).
class PhaseDistribution {
 public:
  using Variant = std::variant<phase::Delta, phase::Uniform, phase::Gaussian, phase::Discrete>;

  // Throws std::invalid_argument when hi <= lo, sigma < 0, or discrete weights
  // are negative or do not sum to 1 within 1e-12.
  PhaseDistribution(Variant v);  // NOLINT(google-explicit-constructor)
  template <typename Law>
    requires std::is_constructible_v<Variant, Law>
  PhaseDistribution(Law law) : PhaseDistribution(Variant(std::move(law))) {}  // NOLINT

  const Variant& variant() const { return v_; }
  // Symmetric about phi = 0, so the phase average is real.
  bool symmetric_about_zero() const;

 private:
  Variant v_;
};

struct FringePair {
  double i_max = 0.0;
  double i_min = 0.0;
};

// (1/n) times the all-ones matrix, the density of (1/sqrt n) sum_i |i>.
DensityMatrix maximally_coherent(int n);

// (n/2)(n-1) / (2 + (n/2)(n-1)). Note: for n > 2 this disagrees with
// visibility_v(maximally_coherent(n)) = (n-1)/(n+1); at n = 4 it gives 3/4
// against 3/5. Kept as stated for comparison.
double nslit_visibility_formula(int n);

// |psi_1|^2 + |psi_2|^2 + 2|psi_1 psi_2| cos(alpha_12). The cross term vanishes at
// alpha_12 = pi/2; alpha_12 = pi gives the fully destructive minimum.
double double_slit_intensity(double mag1, double mag2, double alpha12);

// (I_max - I_min) / (I_max + I_min).
double fringe_visibility(const FringePair& f);

// |a1 b1 a2 b2| / (|a1|^2|b1|^2 + |a2|^2|b2|^2 + |a1 b1 a2 b2|), bounded by 1/3.
// The denominator carries a single cross-term magnitude.
double transition_visibility(const StateVector& a, const StateVector& b);

// D = integral P(phi) exp(i phi) dphi. Continuous laws use adaptive
// Gauss-Kronrod quadrature at relative tolerance 1e-9; discrete laws are summed.
Complex dephasing_factor(const PhaseDistribution& dist);

// Multiplies rho_ij (i < j) by d and rho_ji by conj(d). Throws
// std::invalid_argument for |d| > 1, and for n > 2 when the factor would not
// keep every state positive (e.g. real d < -1/(n-1), most complex d).
DensityMatrix apply_dephasing(const DensityMatrix& rho, Complex d);

}  // namespace wpd
