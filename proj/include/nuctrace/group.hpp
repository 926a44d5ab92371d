#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nuctrace/besov.hpp"
#include "nuctrace/fourier.hpp"
#include "nuctrace/series.hpp"

namespace nuctrace {

enum class GroupKind { torus, su2 };

/// One class of the unitary dual. Torus points carry `xi`; SU(2) points carry
/// two_l = 2l. Casimir normalization: torus lambda = |xi|^2, SU(2) lambda = l(l+1).
struct DualPoint {
  LatticePoint xi{0, 0};
  int two_l = 0;
  int d = 1;
  double lambda = 0.0;
  double bracket = 1.0;  ///< (1 + lambda)^{1/2}

  double l() const { return two_l / 2.0; }
};

struct GroupDual {
  GroupKind group = GroupKind::torus;
  int dim = 1;                 ///< manifold dimension: n for T^n, 3 for SU(2)
  int cutoff = 0;              ///< lattice radius, or 2 l_max for SU(2)
  bool integer_only = false;   ///< SU(2): integer l only (the SO(3) classes)
  std::vector<DualPoint> points;

  /// Smallest bracket among dual points left out by the truncation; shells
  /// entirely below it are complete.
  double excluded_bracket() const;
  std::string label(const DualPoint& p) const;
  std::string name() const;
};

GroupDual enumerate_torus_dual(int n, int radius);
/// l = 0, 1/2, ..., l_max (or integer l only); l_max given as 2 l_max.
GroupDual enumerate_su2_dual(int two_l_max, bool integer_only = false);

struct HeatTrace {
  double value;
  TailMonitor monitor;  ///< unit shells |xi|_inf = k (torus) or 2l = k (SU(2))
};

/// sum d^2 exp(-t lambda).
HeatTrace heat_trace(const GroupDual& dual, double t);

struct BesselTrace {
  double value;            ///< partial sum plus tail correction
  double partial_sum;
  double tail_correction;  ///< midpoint-rule integral of the omitted terms; 0 when unavailable
  double tail_bound;       ///< integral-test bound on the omitted terms (+inf if divergent)
  bool divergent;          ///< alpha <= group dimension
  std::string tail_rule;
};

/// sum d^2 <xi>^{-alpha}.
BesselTrace bessel_trace(const GroupDual& dual, double alpha);

/// sum d Tr[s(xi) I_d] = sum d^2 s(xi) for scalar multiples of the identity.
Complex multiplier_trace(const GroupDual& dual, const std::function<Complex(const DualPoint&)>& scalar);

/// Rows (N, ||f - S_N f||_B) with S_N keeping <xi> <= N.
std::vector<std::pair<double, double>> partial_sum_convergence(const PeriodicFunction& f, const BesovParams& besov,
                                                               const std::vector<double>& n_values,
                                                               BlockWeight weight = BlockWeight::abs);

}  // namespace nuctrace
