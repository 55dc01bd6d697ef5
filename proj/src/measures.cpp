#include "wpd/measures.hpp"

#include <cmath>
#include <stdexcept>

namespace wpd {

namespace {

void require_two_level(const DensityMatrix& rho, const char* what) {
  if (rho.dim() != 2) {
    throw std::invalid_argument(std::string(what) + " is defined only for n = 2, got n = " +
                                std::to_string(rho.dim()));
  }
}

}  // namespace

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::CoherenceL1: return "CoherenceL1";
    case MeasureKind::VisibilityV: return "VisibilityV";
    case MeasureKind::VisibilityVC: return "VisibilityVC";
    case MeasureKind::Predictability: return "Predictability";
    case MeasureKind::Purity: return "Purity";
    case MeasureKind::DualityGap: return "DualityGap";
  }
  throw std::logic_error("unknown MeasureKind");
}

std::optional<MeasureKind> parse_measure_kind(std::string_view name) {
  for (MeasureKind k : kAllMeasureKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

double coherence_l1(const DensityMatrix& rho) {
  const CMatrix& m = rho.entries();
  double c = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) c += std::abs(m(i, j));
    }
  }
  return c;
}

double visibility_v(const DensityMatrix& rho) {
  const double half_c = 0.5 * coherence_l1(rho);
  const double diag = rho.entries().diagonal().real().sum();
  return half_c / (diag + half_c);
}

double visibility_vc(const DensityMatrix& rho) {
  const std::size_t n = rho.dim();
  if (n < 2) throw std::invalid_argument("V_C needs n >= 2");
  return coherence_l1(rho) / static_cast<double>(n - 1);
}

double predictability(const DensityMatrix& rho) {
  require_two_level(rho, "predictability");
  return std::abs(rho(0, 0).real() - rho(1, 1).real());
}

double duality_gap(const DensityMatrix& rho) {
  require_two_level(rho, "duality gap");
  const double p = predictability(rho);
  const double v = visibility_vc(rho);
  return 1.0 - p * p - v * v;
}

double evaluate(MeasureKind kind, const DensityMatrix& rho) {
  switch (kind) {
    case MeasureKind::CoherenceL1: return coherence_l1(rho);
    case MeasureKind::VisibilityV: return visibility_v(rho);
    case MeasureKind::VisibilityVC: return visibility_vc(rho);
    case MeasureKind::Predictability: return predictability(rho);
    case MeasureKind::Purity: return purity(rho);
    case MeasureKind::DualityGap: return duality_gap(rho);
  }
  throw std::logic_error("unknown MeasureKind");
}

}  // namespace wpd
