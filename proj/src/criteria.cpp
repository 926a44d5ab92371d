#include "nuctrace/criteria.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "kernel_impl.hpp"
#include "nuctrace/summation.hpp"

namespace nuctrace {

double epsilon(double t) {
  require(t > 1.0, "epsilon(t) needs t > 1 (got " + std::to_string(t) + ")");
  return t <= 2.0 ? 0.5 : 1.0 / t;
}

double lr_seminorm(const Eigen::MatrixXcd& A, double r) {
  require(r > 0.0 && r <= 1.0, "l^r seminorm needs 0 < r <= 1");
  CompensatedSum acc;
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i) acc.add(std::pow(std::abs(A(i, j)), r));
  return std::pow(acc.value(), 1.0 / r);
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Clause make_clause(std::string name, double lhs, std::string relation, double rhs, std::string set = "") {
  Clause c{std::move(name), relation, lhs, rhs, false, false, std::move(set)};
  if (relation == "<") c.holds = lhs < rhs;
  else if (relation == "<=") c.holds = lhs <= rhs;
  else if (relation == ">") c.holds = lhs > rhs;
  else if (relation == ">=") c.holds = lhs >= rhs;
  else throw std::logic_error("unknown relation " + relation);
  c.fails_at_equality = !c.holds && lhs == rhs;
  return c;
}

// Collects hypothesis-range failures and throws them together.
class Preconditions {
 public:
  explicit Preconditions(std::string context) : context_(std::move(context)) {}
  void check(bool ok, const std::string& clause) {
    if (!ok) failed_.push_back(clause);
  }
  void raise() const {
    if (failed_.empty()) return;
    std::string msg = context_ + ": parameter range violated:";
    for (const auto& f : failed_) msg += " [" + f + "]";
    throw InvalidArgument(msg);
  }

 private:
  std::string context_;
  std::vector<std::string> failed_;
};

void common_torus_ranges(Preconditions& pre, const TorusCriterionParams& p) {
  pre.check(p.n >= 1, "n >= 1 (got " + std::to_string(p.n) + ")");
  pre.check(p.r > 0.0 && p.r <= 1.0, "0 < r <= 1 (got " + fmt(p.r) + ")");
  pre.check(p.alpha > 0.0 && p.alpha <= 0.5, "0 < alpha <= 1/2 (got " + fmt(p.alpha) + ")");
  pre.check(p.p1 > 1.0 && p.p1 <= 2.0, "1 < p1 <= 2 (got " + fmt(p.p1) + ")");
  pre.check(p.delta >= 0.0 && p.delta <= 1.0, "0 <= delta <= 1 (got " + fmt(p.delta) + ")");
  pre.check(p.p2 >= 1.0, "1 <= p2 <= inf (got " + fmt(p.p2) + ")");
  pre.check(p.q2 >= 1.0, "1 <= q2 <= inf (got " + fmt(p.q2) + ")");
  pre.check(p.k >= 1, "k a positive integer (got " + std::to_string(p.k) + ")");
}

void add_derived(CriterionVerdict& v, const TorusCriterionParams& p) {
  const double inv_p1_conj = 1.0 - 1.0 / p.p1;
  v.derived_params.emplace_back("w1", p.alpha * p.n);
  v.derived_params.emplace_back("p1", p.p1);
  v.derived_params.emplace_back("q1", 1.0 / (p.alpha + inv_p1_conj));
}

SeriesWitness from_power(const PowerSeriesWitness& w) {
  SeriesWitness out;
  out.series = w.series;
  out.rule = w.rule;
  for (const auto& [radius, sum] : w.partial_sums) out.partial_sums.emplace_back(radius, sum);
  out.tail = w.tail;
  out.certified = w.certified;
  return out;
}

void finish(CriterionVerdict& v, const std::vector<Clause>& clauses) {
  for (const auto& c : clauses) {
    v.checked_clauses.push_back(c);
    if (!c.holds) v.violated_clauses.push_back(c);
  }
}

CriterionVerdict t2_set(const TorusCriterionParams& p, T2Set set) {
  CriterionVerdict v;
  v.theorem = "t2";
  add_derived(v, p);
  const double two_k = 2.0 * p.k;
  const double n = p.n;
  if (set == T2Set::nuclear) {
    v.clause_set = "1";
    finish(v, {make_clause("w2 < -n/2", p.w2, "<", -n / 2.0, "1"),
               make_clause("m <= -2k delta", p.m, "<=", -p.delta * two_k, "1"),
               make_clause("k > n/4", p.k, ">", n / 4.0, "1")});
    // l^1 norm of <.>^{w2} * <.>^{-2k} is the product of the two l^1 norms
    const int cap = witness_radius_cap(p.n);
    SeriesWitness w;
    w.series = "(<.>^(" + fmt(p.w2) + ") * <.>^(" + fmt(-two_k) + ")) in l^1 over Z^" + std::to_string(p.n);
    w.rule = "product of integral-test bounds; certified iff w2 < -n and 2k > n";
    double a_last = 0.0, b_last = 0.0;
    for (int radius = 16; radius <= cap; radius *= 2) {
      a_last = lattice_power_sum(p.n, p.w2, radius);
      b_last = lattice_power_sum(p.n, -two_k, radius);
      w.partial_sums.emplace_back(radius, a_last * b_last);
    }
    const double ta = power_tail_bound(p.n, p.w2, cap);
    const double tb = power_tail_bound(p.n, -two_k, cap);
    w.certified = std::isfinite(ta) && std::isfinite(tb);
    w.tail = w.certified ? (a_last + ta) * (b_last + tb) - a_last * b_last : kInf;
    v.witness = w;
    if (v.violated_clauses.empty() && !w.certified) {
      v.warnings.push_back(
          "clause set 1 holds but the convolution witness is not certified: its l^1 norm factors as "
          "sum <xi>^w2 * sum <xi>^-2k, which diverges unless w2 < -n; verdict follows the clauses");
    }
    v.satisfied = v.violated_clauses.empty();
  } else {
    v.clause_set = "2";
    finish(v, {make_clause("w2 <= 0", p.w2, "<=", 0.0, "2"),
               make_clause("m < -n/r - 2k delta", p.m, "<", -n / p.r - p.delta * two_k, "2"),
               make_clause("k > n/2", p.k, ">", n / 2.0, "2")});
    v.witness = from_power(power_series_witness(p.n, p.r * (p.m + p.delta * two_k)));
    v.satisfied = v.violated_clauses.empty() && v.witness.certified;
  }
  return v;
}

}  // namespace

CriterionVerdict check_theorem_t1(const TorusCriterionParams& p) {
  Preconditions pre("t1");
  common_torus_ranges(pre, p);
  pre.check(2 * p.k > p.n, "k > n/2 (got k=" + std::to_string(p.k) + ", n=" + std::to_string(p.n) + ")");
  pre.raise();

  CriterionVerdict v;
  v.theorem = "t1";
  v.clause_set = "1";
  add_derived(v, p);
  const double two_k = 2.0 * p.k;
  const double n = p.n;
  finish(v, {make_clause("0 <= w2", 0.0, "<=", p.w2), make_clause("w2 < 2k - n", p.w2, "<", two_k - n),
             make_clause("m < -n/r - w2 - 2k delta", p.m, "<", -n / p.r - p.w2 - p.delta * two_k)});
  const double s = p.r * (p.w2 + p.m + p.delta * two_k);
  v.derived_params.emplace_back("series_exponent", s);
  v.witness = from_power(power_series_witness(p.n, s));
  v.satisfied = v.violated_clauses.empty() && v.witness.certified;
  return v;
}

CriterionVerdict check_theorem_t3(const TorusCriterionParams& p, const DomainSpace& domain) {
  Preconditions pre("t3");
  pre.check(p.n >= 1, "n >= 1 (got " + std::to_string(p.n) + ")");
  pre.check(p.r > 0.0 && p.r <= 1.0, "0 < r <= 1 (got " + fmt(p.r) + ")");
  pre.check(p.delta >= 0.0 && p.delta <= 1.0, "0 <= delta <= 1 (got " + fmt(p.delta) + ")");
  pre.check(p.p2 >= 1.0, "1 <= p2 <= inf (got " + fmt(p.p2) + ")");
  pre.check(p.q2 >= 1.0, "1 <= q2 <= inf (got " + fmt(p.q2) + ")");
  pre.check(p.k >= 1 && 2 * p.k > p.n, "k > n/2 integer (got k=" + std::to_string(p.k) + ", n=" + std::to_string(p.n) + ")");
  if (domain.kind == DomainSpace::lebesgue) {
    pre.check(domain.exponent >= 1.0 && domain.exponent <= 2.0,
              "domain L^p needs 1 <= p <= 2 (got " + fmt(domain.exponent) + ")");
  } else {
    pre.check(p.n == 1, "Hölder domain needs n = 1 (got " + std::to_string(p.n) + ")");
    pre.check(domain.exponent > 0.0 && domain.exponent < 1.0,
              "Hölder domain needs 0 < s < 1 (got " + fmt(domain.exponent) + ")");
  }
  pre.raise();

  CriterionVerdict v;
  v.theorem = "t3";
  v.clause_set = domain.kind == DomainSpace::lebesgue ? "lebesgue" : "holder";
  v.derived_params.emplace_back(domain.kind == DomainSpace::lebesgue ? "domain_p" : "domain_s", domain.exponent);
  const double two_k = 2.0 * p.k;
  const double n = p.n;
  finish(v, {make_clause("0 <= w2", 0.0, "<=", p.w2), make_clause("w2 < 2k - n", p.w2, "<", two_k - n),
             make_clause("m < -n/r - w2 - 2k delta", p.m, "<", -n / p.r - p.w2 - p.delta * two_k)});
  const bool holder_target = std::isinf(p.p2) && std::isinf(p.q2) && p.w2 > 0.0 && p.w2 < 1.0;
  v.derived_params.emplace_back("holder_to_holder",
                                domain.kind == DomainSpace::holder && p.k == 1 && holder_target ? 1.0 : 0.0);
  const double s = p.r * (p.w2 + p.m + p.delta * two_k);
  v.derived_params.emplace_back("series_exponent", s);
  v.witness = from_power(power_series_witness(p.n, s));
  v.satisfied = v.violated_clauses.empty() && v.witness.certified;
  return v;
}

CriterionVerdict check_theorem_t2(const TorusCriterionParams& p, T2Set set) {
  Preconditions pre("t2");
  common_torus_ranges(pre, p);
  if (set == T2Set::nuclear) pre.check(p.r == 1.0, "clause set 1 concerns nuclearity: r = 1 (got " + fmt(p.r) + ")");
  pre.raise();
  if (set != T2Set::automatic) return t2_set(p, set);

  CriterionVerdict first;
  if (p.r == 1.0) {
    first = t2_set(p, T2Set::nuclear);
    if (first.satisfied) return first;
  }
  CriterionVerdict second = t2_set(p, T2Set::r_nuclear);
  if (second.satisfied || p.r != 1.0) return second;
  // neither set holds: report every failed clause, labelled by set
  CriterionVerdict both = second;
  both.clause_set = "none";
  both.checked_clauses = first.checked_clauses;
  both.checked_clauses.insert(both.checked_clauses.end(), second.checked_clauses.begin(), second.checked_clauses.end());
  both.violated_clauses = first.violated_clauses;
  both.violated_clauses.insert(both.violated_clauses.end(), second.violated_clauses.begin(),
                               second.violated_clauses.end());
  return both;
}

DualSymbol DualSymbol::scalar(std::function<Complex(const DualPoint&)> fn, std::string name) {
  DualSymbol s;
  s.scalar_ = std::move(fn);
  s.name_ = std::move(name);
  return s;
}

DualSymbol DualSymbol::matrix(std::function<Eigen::MatrixXcd(const DualPoint&)> fn, std::string name) {
  DualSymbol s;
  s.matrix_ = std::move(fn);
  s.name_ = std::move(name);
  return s;
}

double DualSymbol::lr_power(const DualPoint& p, double r) const {
  if (scalar_) return p.d * std::pow(std::abs(scalar_(p)), r);
  const Eigen::MatrixXcd a = matrix_(p);
  require(a.rows() == p.d && a.cols() == p.d, "matrix symbol must be d x d at every dual point");
  return std::pow(lr_seminorm(a, r), r);
}

CaseExponents tt1_exponents(int group_dim, const MultiplierCriterionParams& c) {
  const double n = group_dim;
  const double r = c.r;
  switch (c.case_id) {
    case 1: {
      const double q_conj = c.q / (c.q - 1.0);
      return {n * (1.0 / c.p - 1.0 / c.q) * r, 1.0 + r * (1.0 - epsilon(c.p) - epsilon(q_conj))};
    }
    case 2: {
      // p = 1 is admitted by the case; epsilon is taken as 1/2 there
      const double eps_p = c.p == 1.0 ? 0.5 : epsilon(c.p);
      return {n * r / c.p, 1.0 + r * (1.0 - eps_p)};
    }
    case 3:
      return {0.0, 1.0 + r * (1.0 / c.p - 0.5)};
    case 4:
      return {0.0, 1.0 + r * (0.5 - 1.0 / c.p)};
    default:
      throw InvalidArgument("tt1 case must be 1, 2, 3 or 4 (got " + std::to_string(c.case_id) + ")");
  }
}

namespace {

void check_case_range(const MultiplierCriterionParams& c) {
  const std::string got = " (got p=" + fmt(c.p) + ", q=" + fmt(c.q) + ")";
  require(c.r > 0.0 && c.r <= 1.0, "tt1: 0 < r <= 1 required (got r=" + fmt(c.r) + ")");
  switch (c.case_id) {
    case 1:
      require(1.0 < c.p && c.p < c.q && std::isfinite(c.q), "tt1 case 1 requires 1 < p < q < inf" + got);
      break;
    case 2:
      require(c.q == 1.0 && c.p >= 1.0 && std::isfinite(c.p), "tt1 case 2 requires q = 1 and 1 <= p < inf" + got);
      break;
    case 3:
      require(c.p == c.q && c.p > 1.0 && c.p <= 2.0, "tt1 case 3 requires 1 < p = q <= 2" + got);
      break;
    case 4:
      require(c.q == 2.0 && c.p >= 2.0 && std::isfinite(c.p), "tt1 case 4 requires 2 = q <= p < inf" + got);
      break;
    default:
      throw InvalidArgument("tt1 case must be 1, 2, 3 or 4 (got " + std::to_string(c.case_id) + ")");
  }
}

// 4 <xi>^2 as an exact integer
long long bracket_key(const GroupDual& dual, const DualPoint& p) {
  if (dual.group == GroupKind::torus) return 4 * (1 + squared_norm(p.xi));
  return 4 + static_cast<long long>(p.two_l) * (p.two_l + 2);
}

// j with 2^j <= <xi> < 2^{j+1}, i.e. 4^{j+1} <= key < 4^{j+2}
int dyadic_shell(long long key) {
  int j = -1;
  while (key >= 4) {
    key /= 4;
    ++j;
  }
  return j;
}

}  // namespace

CriterionVerdict check_tt1(const GroupDual& dual, const DualSymbol& a, const MultiplierCriterionParams& params) {
  check_case_range(params);
  const CaseExponents e = tt1_exponents(dual.dim, params);

  CriterionVerdict v;
  v.theorem = "tt1";
  v.clause_set = std::to_string(params.case_id);
  v.derived_params.emplace_back("bracket_exponent", e.bracket);
  v.derived_params.emplace_back("dimension_exponent", e.dimension);
  v.derived_params.emplace_back("group_dim", dual.dim);

  const double excluded = dual.excluded_bracket();
  const long long excluded_key = std::llround(4.0 * excluded * excluded);
  // shell j is complete when 2^{j+1} <= excluded bracket
  int complete = 0;
  while ((1LL << (2 * (complete + 2))) <= excluded_key) ++complete;

  std::vector<CompensatedSum> shells(complete);
  CompensatedSum total;
  for (const auto& p : dual.points) {
    const double term = std::pow(p.bracket, e.bracket) * a.lr_power(p, params.r) * std::pow(p.d, e.dimension);
    total.add(term);
    const int j = dyadic_shell(bracket_key(dual, p));
    if (j < complete) shells[j].add(term);
  }
  std::vector<double> sums;
  for (const auto& s : shells) sums.push_back(s.value());
  const TailMonitor monitor = geometric_monitor(sums);

  SeriesWitness w;
  w.series = "case " + std::to_string(params.case_id) + " series over " + dual.name() + " dual of " + a.name();
  w.rule = monitor.rule + " (dyadic bracket shells 2^j <= <xi> < 2^(j+1), complete shells only)";
  CompensatedSum running;
  for (int j = 0; j < complete; ++j) {
    running.add(sums[j]);
    w.partial_sums.emplace_back(std::pow(2.0, j + 1), running.value());
  }
  w.tail = monitor.tail;
  w.certified = monitor.certified;
  w.shell_sums = monitor.shell_sums;
  w.ratios = monitor.ratios;
  v.witness = w;
  v.derived_params.emplace_back("truncated_sum", total.value());

  if (complete < kGeometricWindow + 1) {
    v.warnings.push_back("cutoff too small: only " + std::to_string(complete) +
                         " complete dyadic shells; at least 5 need <xi> up to 32 inside the truncation");
  }
  double worst = 0.0;
  for (std::size_t k = monitor.ratios.size() >= kGeometricWindow ? monitor.ratios.size() - kGeometricWindow : 0;
       k < monitor.ratios.size(); ++k)
    worst = std::max(worst, monitor.ratios[k]);
  Clause converge = make_clause("case series shell ratio <= 0.9 (last 4 dyadic shells)",
                                monitor.ratios.empty() ? kInf : worst, "<=", kGeometricRatio);
  converge.holds = monitor.certified;
  converge.fails_at_equality = false;
  finish(v, {converge});
  v.satisfied = monitor.certified;
  return v;
}

NuclearDecomposition nuclear_decomposition(const Symbol& a, const FrequencyLattice& lattice) {
  require(a.dim() == lattice.dim(), "nuclear_decomposition: dimension mismatch");
  int m;
  if (auto d = a.sampled_domain()) {
    m = d->grid_size;
  } else {
    m = min_grid_size(lattice.radius() + a.x_bandwidth().value_or(0));
  }
  const auto roots = unit_roots(m, +1);
  const std::size_t n_x = a.dim() == 1 ? m : static_cast<std::size_t>(m) * m;
  NuclearDecomposition out{lattice, m, {}, std::vector<double>(lattice.size(), 1.0)};
  out.h.reserve(lattice.size());
  for (std::size_t j = 0; j < lattice.size(); ++j) {
    const LatticePoint xi = lattice.point(j);
    PeriodicFunction h(a.dim(), m);
    for (std::size_t i = 0; i < n_x; ++i) {
      const long long i0 = a.dim() == 1 ? static_cast<long long>(i) : static_cast<long long>(i / m);
      const long long i1 = a.dim() == 1 ? 0 : static_cast<long long>(i % m);
      h[i] = roots[kernels::impl::phase_index(i0 * xi[0] + i1 * xi[1], m)] * a.sample(i, m, xi);
    }
    out.h.push_back(std::move(h));
  }
  return out;
}

PeriodicFunction NuclearDecomposition::reconstruct(const PeriodicFunction& f) const {
  require(f.grid_size() == grid_size, "reconstruct: f must live on the decomposition grid");
  const FourierCoefficients c = forward_transform(f, lattice);
  PeriodicFunction out(f.dim(), grid_size);
  for (std::size_t i = 0; i < out.size(); ++i) {
    CompensatedComplexSum acc;
    for (std::size_t j = 0; j < lattice.size(); ++j) acc.add(c.coeffs[j] * h[j][i]);
    out[i] = acc.value();
  }
  return out;
}

double nuclear_quasinorm_bound(const Symbol& a, double r, const BesovParams& besov, const FrequencyLattice& lattice,
                               BlockWeight weight) {
  require(r > 0.0 && r <= 1.0, "nuclear_quasinorm_bound needs 0 < r <= 1");
  besov.validate();
  const NuclearDecomposition dec = nuclear_decomposition(a, lattice);
  const FrequencyLattice wide(lattice.dim(), max_radius_for_grid(dec.grid_size));
  std::vector<double> terms(lattice.size());
  kernels::impl::for_each_index<true>(static_cast<std::ptrdiff_t>(lattice.size()), [&](std::ptrdiff_t j) {
    terms[j] = std::pow(besov_norm(dec.h[j], besov, wide, weight), r);
  });
  CompensatedSum acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

}  // namespace nuctrace
