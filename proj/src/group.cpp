#include "nuctrace/group.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>

#include "nuctrace/summation.hpp"

namespace nuctrace {

double GroupDual::excluded_bracket() const {
  if (group == GroupKind::torus) return japanese_bracket({cutoff + 1, 0});
  const double l = (points.empty() ? 0.0 : points.back().l()) + (integer_only ? 1.0 : 0.5);
  return std::sqrt(1.0 + l * (l + 1.0));
}

std::string GroupDual::label(const DualPoint& p) const {
  if (group == GroupKind::su2) return p.two_l % 2 == 0 ? std::to_string(p.two_l / 2) : std::to_string(p.two_l) + "/2";
  if (dim == 1) return std::to_string(p.xi[0]);
  return "(" + std::to_string(p.xi[0]) + "," + std::to_string(p.xi[1]) + ")";
}

std::string GroupDual::name() const { return group == GroupKind::su2 ? "su2" : "torus"; }

GroupDual enumerate_torus_dual(int n, int radius) {
  require(radius >= 0, "torus cutoff must be >= 0");
  const FrequencyLattice lattice(n, radius);
  GroupDual dual{GroupKind::torus, n, radius, false, {}};
  dual.points.reserve(lattice.size());
  for (std::size_t j = 0; j < lattice.size(); ++j) {
    DualPoint p;
    p.xi = lattice.point(j);
    p.lambda = static_cast<double>(squared_norm(p.xi));
    p.bracket = japanese_bracket(p.xi);
    dual.points.push_back(p);
  }
  // by lambda, ties in lattice (label) order
  std::stable_sort(dual.points.begin(), dual.points.end(),
                   [](const DualPoint& a, const DualPoint& b) { return squared_norm(a.xi) < squared_norm(b.xi); });
  return dual;
}

GroupDual enumerate_su2_dual(int two_l_max, bool integer_only) {
  require(two_l_max >= 0, "SU(2) cutoff l_max must be >= 0");
  GroupDual dual{GroupKind::su2, 3, two_l_max, integer_only, {}};
  for (int two_l = 0; two_l <= two_l_max; two_l += integer_only ? 2 : 1) {
    DualPoint p;
    p.two_l = two_l;
    p.d = two_l + 1;
    const double l = two_l / 2.0;
    p.lambda = l * (l + 1.0);
    p.bracket = std::sqrt(1.0 + p.lambda);
    dual.points.push_back(p);
  }
  return dual;
}

namespace {

// unit shell of a dual point: |xi|_inf on the torus, the l-index on SU(2)
int unit_shell(const GroupDual& dual, const DualPoint& p) {
  if (dual.group == GroupKind::torus) return max_norm(p.xi);
  return dual.integer_only ? p.two_l / 2 : p.two_l;
}

}  // namespace

HeatTrace heat_trace(const GroupDual& dual, double t) {
  require(t > 0.0, "heat trace needs t > 0 (got " + std::to_string(t) + ")");
  CompensatedSum total;
  int shells = 0;
  for (const auto& p : dual.points) shells = std::max(shells, unit_shell(dual, p) + 1);
  std::vector<CompensatedSum> shell_acc(shells);
  for (const auto& p : dual.points) {
    const double term = static_cast<double>(p.d) * p.d * std::exp(-t * p.lambda);
    total.add(term);
    shell_acc[unit_shell(dual, p)].add(term);
  }
  std::vector<double> shell_sums;
  for (const auto& s : shell_acc) shell_sums.push_back(s.value());
  return {total.value(), geometric_monitor(std::move(shell_sums))};
}

BesselTrace bessel_trace(const GroupDual& dual, double alpha) {
  require(std::isfinite(alpha), "alpha must be finite");
  CompensatedSum partial;
  for (const auto& p : dual.points) partial.add(static_cast<double>(p.d) * p.d * std::pow(p.bracket, -alpha));

  BesselTrace out{partial.value(), partial.value(), 0.0, kInf, alpha <= dual.dim, ""};
  if (out.divergent) {
    out.tail_rule = "divergent: alpha <= " + std::to_string(dual.dim);
    return out;
  }
  boost::math::quadrature::exp_sinh<double> integrator;
  if (dual.group == GroupKind::torus) {
    const int n = dual.dim;
    out.tail_bound = power_tail_bound(n, -alpha, std::max(dual.cutoff, 1));
    if (n == 1) {
      const double start = dual.cutoff + 0.5;
      out.tail_correction =
          2.0 * integrator.integrate([alpha](double x) { return std::pow(1.0 + x * x, -alpha / 2.0); }, start, kInf);
      out.tail_rule = "midpoint integral 2*int_{N+1/2}^inf <x>^-alpha dx; integral-test bound on the omitted terms";
    } else {
      out.tail_rule = "no correction for n >= 2; integral-test bound on the omitted terms";
    }
  } else {
    const double h = dual.integer_only ? 1.0 : 0.5;
    const double l_max = dual.points.back().l();
    auto f = [alpha](double l) { return (2.0 * l + 1.0) * (2.0 * l + 1.0) * std::pow(1.0 + l * (l + 1.0), -alpha / 2.0); };
    out.tail_correction = integrator.integrate(f, l_max + h / 2.0, kInf) / h;
    out.tail_bound = 4.0 / h * std::pow(l_max + 0.5, 3.0 - alpha) / (alpha - 3.0);
    out.tail_rule = "midpoint integral (1/h)*int_{l_max+h/2}^inf (2l+1)^2 <l>^-alpha dl; bound 4/h (l_max+1/2)^(3-alpha)/(alpha-3)";
  }
  out.value = out.partial_sum + out.tail_correction;
  return out;
}

Complex multiplier_trace(const GroupDual& dual, const std::function<Complex(const DualPoint&)>& scalar) {
  CompensatedComplexSum s;
  for (const auto& p : dual.points) s.add(static_cast<double>(p.d) * p.d * scalar(p));
  return s.value();
}

std::vector<std::pair<double, double>> partial_sum_convergence(const PeriodicFunction& f, const BesovParams& besov,
                                                               const std::vector<double>& n_values,
                                                               BlockWeight weight) {
  besov.validate();
  const int radius = max_radius_for_grid(f.grid_size());
  require(radius >= 0, "grid too small for any lattice");
  const FrequencyLattice lattice(f.dim(), radius);
  const FourierCoefficients c = forward_transform(f, lattice);
  std::vector<std::pair<double, double>> rows;
  for (double n : n_values) {
    require(n >= 0.0, "partial-sum cutoffs must be >= 0");
    FourierCoefficients rest = c;
    for (std::size_t j = 0; j < lattice.size(); ++j)
      if (japanese_bracket(lattice.point(j)) <= n) rest.coeffs[j] = 0.0;
    rows.emplace_back(n, besov_norm(rest, f.grid_size(), besov, weight));
  }
  return rows;
}

}  // namespace nuctrace
