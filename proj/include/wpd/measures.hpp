// measures.hpp
//
// Scalar quantifiers of wave and particle character of a density matrix.
//
//   C    l1 coherence: sum of |rho_ij| over i != j.
//   V    normalized coherence, (C/2) / (Tr rho + C/2) = C / (2 + C).
//        For a maximally coherent n-path state C = n - 1, so V = (n-1)/(n+1):
//        1/3 for two paths, 3/5 for four.
//   V_C  coherence scaled by its maximum n - 1. For n = 2 this is 2|rho_12|,
//        the conventional two-beam fringe visibility.
//   P    predictability |rho_11 - rho_22| (two-level systems only).
//
// The duality gap 1 - P^2 - V_C^2 is nonnegative for every two-level state and
// vanishes for pure states. It is built on V_C rather than V: V never exceeds
// 1/3 for n = 2 and could not saturate the relation.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wpd/densmat.hpp"

namespace wpd {

enum class MeasureKind { CoherenceL1, VisibilityV, VisibilityVC, Predictability, Purity, DualityGap };

inline constexpr MeasureKind kAllMeasureKinds[] = {
    MeasureKind::CoherenceL1,    MeasureKind::VisibilityV, MeasureKind::VisibilityVC,
    MeasureKind::Predictability, MeasureKind::Purity,      MeasureKind::DualityGap};

std::string_view to_string(MeasureKind kind);
std::optional<MeasureKind> parse_measure_kind(std::string_view name);

double coherence_l1(const DensityMatrix& rho);
double visibility_v(const DensityMatrix& rho);

// Throws std::invalid_argument for n < 2.
double visibility_vc(const DensityMatrix& rho);

// Both throw std::invalid_argument unless n == 2.
double predictability(const DensityMatrix& rho);
double duality_gap(const DensityMatrix& rho);

double evaluate(MeasureKind kind, const DensityMatrix& rho);

}  // namespace wpd
