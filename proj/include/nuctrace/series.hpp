#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nuctrace {

/// Outcome of a convergence monitor on a series of nonnegative terms.
struct TailMonitor {
  std::string rule;
  bool certified = false;
  double tail = 0.0;                 ///< +inf when not certified
  std::vector<double> shell_sums;
  std::vector<double> ratios;        ///< shell_sums[k] / shell_sums[k-1]
};

inline constexpr double kGeometricRatio = 0.9;
inline constexpr int kGeometricWindow = 4;

/// Certified when at least `min_shells` shells are present and the last
/// `window` ratios are all <= `ratio`; the tail is then bounded by
/// S_last * rho / (1 - rho) with rho the largest of those ratios.
/// A 0/0 ratio counts as 0.
TailMonitor geometric_monitor(std::vector<double> shell_sums, int min_shells = kGeometricWindow + 1,
                              double ratio = kGeometricRatio, int window = kGeometricWindow);

/// Integral-test bound on sum_{xi in Z^n, |xi|_inf > R} <xi>^s for s < -n:
/// shells hold at most 2n 3^{n-1} k^{n-1} points (exactly 2 for n = 1 and 8k
/// for n = 2) and <xi>^s <= k^s on shell k. Returns +inf for s >= -n.
double power_tail_bound(int n, double s, int radius);

/// sum_{|xi|_inf <= R} <xi>^s over Z^n, grouped by |xi|^2 (any n >= 1).
double lattice_power_sum(int n, double s, int radius);

/// Partial sums of sum_{Z^n} <xi>^s on doubling radii with the integral-test tail.
struct PowerSeriesWitness {
  std::string series;
  std::string rule;
  std::vector<std::pair<int, double>> partial_sums;
  double tail = 0.0;
  bool certified = false;
};

PowerSeriesWitness power_series_witness(int n, double s);

/// Largest radius used by power_series_witness for dimension n.
int witness_radius_cap(int n);

}  // namespace nuctrace
