#include "nuctrace/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nuctrace/errors.hpp"
#include "nuctrace/summation.hpp"

namespace nuctrace {

namespace {
constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}
}  // namespace

TailMonitor geometric_monitor(std::vector<double> shell_sums, int min_shells, double ratio, int window) {
  TailMonitor out;
  std::ostringstream rule;
  rule << "geometric shells: last " << window << " ratios <= " << ratio << " over >= " << min_shells << " shells";
  out.rule = rule.str();
  out.shell_sums = std::move(shell_sums);
  for (std::size_t k = 1; k < out.shell_sums.size(); ++k) {
    const double prev = out.shell_sums[k - 1];
    const double cur = out.shell_sums[k];
    if (cur == 0.0) {
      out.ratios.push_back(0.0);
    } else {
      out.ratios.push_back(prev == 0.0 ? kInfinity : cur / prev);
    }
  }
  out.tail = kInfinity;
  if (static_cast<int>(out.shell_sums.size()) < min_shells || static_cast<int>(out.ratios.size()) < window) return out;
  double rho = 0.0;
  for (std::size_t k = out.ratios.size() - window; k < out.ratios.size(); ++k) rho = std::max(rho, out.ratios[k]);
  if (rho <= ratio) {
    out.certified = true;
    out.tail = out.shell_sums.back() * rho / (1.0 - rho);
  }
  return out;
}

double power_tail_bound(int n, double s, int radius) {
  require(n >= 1, "power_tail_bound: dimension must be >= 1");
  require(radius >= 1, "power_tail_bound: radius must be >= 1");
  if (s >= -n) return kInfinity;
  const double shell_constant = n == 1 ? 2.0 : (n == 2 ? 8.0 : 2.0 * n * std::pow(3.0, n - 1));
  return shell_constant * std::pow(static_cast<double>(radius), s + n) / (-s - n);
}

double lattice_power_sum(int n, double s, int radius) {
  require(n >= 1, "lattice_power_sum: dimension must be >= 1");
  require(radius >= 0, "lattice_power_sum: radius must be >= 0");
  if (n == 1) {
    CompensatedSum acc;
    acc.add(1.0);
    for (int k = 1; k <= radius; ++k) acc.add(2.0 * std::pow(1.0 + static_cast<double>(k) * k, s / 2.0));
    return acc.value();
  }
  // counts[t] = #{xi in box : |xi|^2 = t}, built one coordinate at a time
  const std::size_t r2 = static_cast<std::size_t>(radius) * radius;
  std::vector<double> counts(1, 1.0);
  for (int dim = 1; dim <= n; ++dim) {
    std::vector<double> next(counts.size() + r2, 0.0);
    for (std::size_t t = 0; t < counts.size(); ++t) {
      if (counts[t] == 0.0) continue;
      for (int j = 0; j <= radius; ++j) next[t + static_cast<std::size_t>(j) * j] += counts[t] * (j == 0 ? 1.0 : 2.0);
    }
    counts = std::move(next);
  }
  CompensatedSum acc;
  for (std::size_t t = 0; t < counts.size(); ++t)
    if (counts[t] != 0.0) acc.add(counts[t] * std::pow(1.0 + static_cast<double>(t), s / 2.0));
  return acc.value();
}

int witness_radius_cap(int n) { return n == 1 ? 4096 : (n == 2 ? 256 : 64); }

PowerSeriesWitness power_series_witness(int n, double s) {
  PowerSeriesWitness out;
  out.series = "sum over Z^" + std::to_string(n) + " of <xi>^(" + fmt(s) + ")";
  out.rule = "integral test: tail over |xi|_inf > R bounded by c_n R^(s+n)/(-s-n), finite iff s < -n";
  const int cap = witness_radius_cap(n);
  for (int radius = 16; radius <= cap; radius *= 2) out.partial_sums.emplace_back(radius, lattice_power_sum(n, s, radius));
  out.tail = power_tail_bound(n, s, cap);
  out.certified = std::isfinite(out.tail);
  return out;
}

}  // namespace nuctrace
