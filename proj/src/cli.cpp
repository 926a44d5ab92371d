#include "nuctrace/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "nuctrace/besov.hpp"
#include "nuctrace/criteria.hpp"
#include "nuctrace/group.hpp"
#include "nuctrace/quantization.hpp"
#include "nuctrace/report.hpp"
#include "nuctrace/trace.hpp"

namespace nuctrace::cli {

namespace {

struct CommonOptions {
  std::string format = "json";
  std::string output;
  std::string timestamp;
  std::string block_weight = "abs";
  bool require_convergent = false;
};

struct SymbolOptions {
  std::string family = "bessel";
  double m = -4.0;
  double t = 1.0;
  std::string profile = "bracket";
  double c = 2.0;
  std::string file;
  int dim = 1;
};

// Result of one subcommand before emission.
struct Outcome {
  Report report;
  std::string csv;
  bool numerical_failure = false;
  std::string failure_message;
};

void add_common(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output", o.output, "Write the report to this path instead of stdout");
  sub->add_option("--timestamp", o.timestamp, "Timestamp recorded in the header (default: SOURCE_DATE_EPOCH or null)");
  sub->add_option("--block-weight", o.block_weight, "Dyadic block size measure")->check(CLI::IsMember({"abs", "bracket"}));
  sub->add_flag("--require-convergent", o.require_convergent, "Exit 3 when the series is not certified convergent");
}

void add_symbol(CLI::App* sub, SymbolOptions& s) {
  sub->add_option("--symbol", s.family, "Catalog family or 'file'")
      ->check(CLI::IsMember({"bessel", "heat", "modulated", "character-shift", "constant", "file"}));
  sub->add_option("--m", s.m, "Order m: bessel <xi>^m, and the bracket profile exponent");
  sub->add_option("--t", s.t, "Heat parameter t, and the gaussian profile parameter");
  sub->add_option("--profile", s.profile, "Profile g for modulated/character-shift")
      ->check(CLI::IsMember({"bracket", "gaussian", "none"}));
  sub->add_option("--c", s.c, "Constant c (modulated offset, constant value)");
  sub->add_option("--symbol-file", s.file, "Sampled-symbol JSON file (with --symbol file)");
  sub->add_option("--dim", s.dim, "Torus dimension")->check(CLI::Range(1, 2));
}

Symbol build_symbol(const SymbolOptions& s) {
  const Profile profile = s.profile == "gaussian" ? Profile::gaussian
                          : s.profile == "none"   ? Profile::none
                                                  : Profile::bracket_power;
  const double param = profile == Profile::gaussian ? s.t : s.m;
  if (s.family == "bessel") return Symbol::bessel(s.dim, s.m);
  if (s.family == "heat") return Symbol::heat(s.dim, s.t);
  if (s.family == "modulated") return Symbol::modulated(s.dim, profile, param, s.c);
  if (s.family == "character-shift") return Symbol::character_shift(s.dim, profile, param);
  if (s.family == "constant") return Symbol::constant(s.dim, s.c);
  require(!s.file.empty(), "--symbol file needs --symbol-file PATH");
  Symbol a = read_sampled_symbol(s.file);
  require(a.dim() == s.dim, "symbol file has dim " + std::to_string(a.dim()) + " but --dim is " + std::to_string(s.dim));
  return a;
}

Json symbol_json(const Symbol& a) {
  Json j = Json::object();
  j["name"] = a.name();
  j["dim"] = a.dim();
  j["claimed_order"] = a.claimed_order();
  j["sampled"] = a.is_sampled();
  return j;
}

std::optional<std::string> resolve_timestamp(const CommonOptions& o) {
  if (!o.timestamp.empty()) return o.timestamp;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env && *env) return std::string(env);
  return std::nullopt;
}

Json monitor_json(const TailMonitor& m) {
  Json j = Json::object();
  j["rule"] = m.rule;
  j["certified"] = m.certified;
  j["tail"] = m.tail;
  j["shell_sums"] = m.shell_sums;
  j["ratios"] = m.ratios;
  return j;
}

Json clause_json(const Clause& c) {
  Json j = Json::object();
  j["clause"] = c.name;
  if (!c.set.empty()) j["set"] = c.set;
  j["lhs"] = c.lhs;
  j["relation"] = c.relation;
  j["rhs"] = c.rhs;
  j["holds"] = c.holds;
  j["fails_at_equality"] = c.fails_at_equality;
  return j;
}

Json verdict_json(const CriterionVerdict& v) {
  Json j = Json::object();
  j["theorem"] = v.theorem;
  j["clause_set"] = v.clause_set;
  j["satisfied"] = v.satisfied;
  Json derived = Json::object();
  for (const auto& [k, val] : v.derived_params) derived[k] = val;
  j["derived_params"] = derived;
  Json violated = Json::array();
  for (const auto& c : v.violated_clauses) violated.push_back(clause_json(c));
  j["violated_clauses"] = violated;
  Json checked = Json::array();
  for (const auto& c : v.checked_clauses) checked.push_back(clause_json(c));
  j["checked_clauses"] = checked;
  Json w = Json::object();
  w["series"] = v.witness.series;
  w["rule"] = v.witness.rule;
  Json rows = Json::array();
  for (const auto& [t, s] : v.witness.partial_sums) rows.push_back(Json::array({t, s}));
  w["partial_sums"] = rows;
  w["tail_estimate"] = v.witness.tail;
  w["certified"] = v.witness.certified;
  if (!v.witness.ratios.empty()) {
    w["shell_sums"] = v.witness.shell_sums;
    w["ratios"] = v.witness.ratios;
  }
  j["witness"] = w;
  return j;
}

std::string history_csv(const TraceReport& r) {
  std::string csv = "N,nuclear_re,nuclear_im,spectral_re,spectral_im,abs_diff\n";
  for (const auto& row : r.history) {
    const Complex s = row.spectral.value_or(Complex{std::nan(""), std::nan("")});
    csv += std::to_string(row.radius) + "," + format_double(row.nuclear.real()) + "," +
           format_double(row.nuclear.imag()) + "," + format_double(s.real()) + "," + format_double(s.imag()) + "," +
           format_double(row.spectral ? row.abs_diff : std::nan("")) + "\n";
  }
  return csv;
}

Json history_json(const TraceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.history) {
    Json j = Json::object();
    j["N"] = row.radius;
    j["nuclear"] = complex_json(row.nuclear);
    j["spectral"] = row.spectral ? complex_json(*row.spectral) : Json(nullptr);
    j["abs_diff"] = row.spectral ? Json(row.abs_diff) : Json(nullptr);
    j["increment"] = row.increment;
    j["max_residual"] = row.max_residual;
    j["matrix_norm"] = row.matrix_norm;
    rows.push_back(j);
  }
  return rows;
}

void fill_trace_body(Outcome& o, const Symbol& a, const TraceReport& r) {
  Json& b = o.report.body;
  b["symbol"] = symbol_json(a);
  b["truncation_radius"] = r.truncation_radius;
  b["grid_size"] = a.preferred_grid_size(FrequencyLattice(a.dim(), r.truncation_radius));
  b["nuclear_trace"] = complex_json(r.nuclear_trace);
  b["spectral_trace"] = r.spectral_trace ? complex_json(*r.spectral_trace) : Json(nullptr);
  b["eigenvalues"] = complex_list_json(r.eigenvalues);
  b["tail_estimate"] = r.tail_estimate;
  b["convergent"] = r.convergent;
  b["history"] = history_json(r);
  o.report.diagnostics["tail_rule"] = r.tail_rule;
  o.report.diagnostics["tolerances"] = {{"eigen_residual", "1e-9 * ||A||_F"}, {"iteration_cap", "100 * side"}};
  for (const auto& n : r.notes) o.report.warn(n);
  if (!std::isfinite(r.tail_estimate)) o.report.warn("tail_estimate is infinite (serialized as null)");
  o.csv = history_csv(r);
}


struct TorusFlags {
  int n = 1;
  double r = 1.0;
  double alpha = 0.5;
  double p1 = 2.0;
  int k = 1;
  double delta = 0.0;
  double m = 0.0;
  double w2 = 0.0;
  double p2 = 2.0;
  double q2 = 2.0;
};

struct GroupFlags {
  std::string group = "torus";
  int dim = 1;
  double cutoff = 6;
  bool integer_only = false;
};

void add_group(CLI::App* sub, GroupFlags& g) {
  sub->add_option("--group", g.group, "Compact group")->check(CLI::IsMember({"torus", "su2"}));
  sub->add_option("--dim", g.dim, "Torus dimension")->check(CLI::Range(1, 2));
  sub->add_option("--cutoff", g.cutoff, "Lattice radius (torus) or l_max (su2, half-integers allowed)");
  sub->add_flag("--integer-only", g.integer_only, "SU(2): integer l only");
}

GroupDual build_dual(const GroupFlags& g) {
  if (g.group == "torus") {
    require(g.cutoff >= 0 && g.cutoff == std::floor(g.cutoff), "torus --cutoff must be a non-negative integer");
    return enumerate_torus_dual(g.dim, static_cast<int>(g.cutoff));
  }
  const double two_l = 2.0 * g.cutoff;
  require(two_l >= 0 && two_l == std::floor(two_l), "su2 --cutoff must be a non-negative multiple of 1/2");
  return enumerate_su2_dual(static_cast<int>(two_l), g.integer_only);
}

Json dual_json(const GroupDual& d) {
  Json j = Json::object();
  j["group"] = d.name();
  j["dim"] = d.dim;
  if (d.group == GroupKind::su2) {
    j["l_max"] = d.points.empty() ? 0.0 : d.points.back().l();
    j["integer_only"] = d.integer_only;
  } else {
    j["radius"] = d.cutoff;
  }
  j["points"] = d.points.size();
  return j;
}

std::string kv_csv(const std::vector<std::pair<std::string, double>>& rows) {
  std::string csv = "key,value\n";
  for (const auto& [k, v] : rows) csv += k + "," + format_double(v) + "\n";
  return csv;
}

Outcome cmd_trace(const CommonOptions& common, const SymbolOptions& sym, int radius, bool no_spectrum) {
  const Symbol a = build_symbol(sym);
  Outcome o{make_report("trace", parse_block_weight(common.block_weight), resolve_timestamp(common)), {}, false, {}};
  const TraceReport r = lidskii_compare(a, {radius}, !no_spectrum);
  fill_trace_body(o, a, r);
  if (common.require_convergent && !r.convergent) {
    o.numerical_failure = true;
    o.failure_message = "trace series not certified convergent (--require-convergent)";
  }
  return o;
}

Outcome cmd_lidskii(const CommonOptions& common, const SymbolOptions& sym, const std::vector<int>& radii) {
  const Symbol a = build_symbol(sym);
  Outcome o{make_report("lidskii", parse_block_weight(common.block_weight), resolve_timestamp(common)), {}, false, {}};
  const TraceReport r = lidskii_compare(a, radii, true);
  fill_trace_body(o, a, r);
  if (common.require_convergent && !r.convergent) {
    o.numerical_failure = true;
    o.failure_message = "nuclear-trace history does not stabilize (--require-convergent)";
  }
  return o;
}

struct FunctionFlags {
  std::string input;
  int character = 4;
  int degree = -1;
  int grid = 0;
  int dim = 1;
};

void add_function(CLI::App* sub, FunctionFlags& f) {
  sub->add_option("--input", f.input, "PeriodicFunction JSON file");
  sub->add_option("--character", f.character, "Use f(x) = exp(i 2 pi k x) (when no --input/--degree)");
  sub->add_option("--degree", f.degree, "Use f = sum_{|xi|<=D} <xi>^-2 exp(i 2 pi x xi)");
  sub->add_option("--grid", f.grid, "Grid size M for generated functions (default: smallest admissible, >= 64)");
  sub->add_option("--dim", f.dim, "Dimension for generated functions")->check(CLI::Range(1, 2));
}

std::pair<PeriodicFunction, std::string> build_function(const FunctionFlags& f) {
  if (!f.input.empty()) return {read_periodic_function(f.input), "file:" + f.input};
  const int reach = f.degree >= 0 ? f.degree : std::abs(f.character);
  const int m = f.grid > 0 ? f.grid : std::max(64, min_grid_size(reach));
  require(m >= min_grid_size(reach), "--grid too small for the generated function's degree");
  if (f.degree >= 0) {
    const FrequencyLattice lattice(f.dim, f.degree);
    FourierCoefficients c(lattice);
    for (std::size_t j = 0; j < lattice.size(); ++j)
      if (FrequencyLattice::in_euclidean_ball(lattice.point(j), f.degree) || f.dim == 1)
        c.coeffs[j] = std::pow(japanese_bracket(lattice.point(j)), -2.0);
    return {inverse_transform(c, m), "sum_{|xi|<=" + std::to_string(f.degree) + "} <xi>^-2 e_xi"};
  }
  const int k = f.character;
  PeriodicFunction g = PeriodicFunction::sample(f.dim, m, [k](std::array<double, 2> x) {
    return std::exp(Complex{0.0, 2.0 * std::numbers::pi * k * x[0]});
  });
  return {g, "exp(i 2 pi " + std::to_string(k) + " x1)"};
}

Outcome cmd_besov(const CommonOptions& common, const FunctionFlags& ff, const BesovParams& params, int radius) {
  const BlockWeight weight = parse_block_weight(common.block_weight);
  Outcome o{make_report("besov-norm", weight, resolve_timestamp(common)), {}, false, {}};
  params.validate();
  const auto [f, label] = build_function(ff);
  const int n = radius >= 0 ? radius : max_radius_for_grid(f.grid_size());
  const FrequencyLattice lattice(f.dim(), n);
  const double norm = besov_norm(f, params, lattice, weight);
  const FourierCoefficients c = forward_transform(f, lattice);
  const auto blocks = besov_block_norms(c, f.grid_size(), 0.0, params.p, weight);
  Json& b = o.report.body;
  b["function"] = label;
  b["dim"] = f.dim();
  b["grid_size"] = f.grid_size();
  b["lattice_radius"] = n;
  b["params"] = {{"w", params.w}, {"p", params.p}, {"q", params.q}};
  b["besov_norm"] = norm;
  Json rows = Json::array();
  o.csv = "m,block_lp_norm\n";
  for (const auto& [m, v] : blocks) {
    rows.push_back(Json::array({m, v}));
    o.csv += std::to_string(m) + "," + format_double(v) + "\n";
  }
  b["blocks"] = rows;
  o.report.diagnostics["truncation"] = "coefficients on |xi|_inf <= " + std::to_string(n);
  return o;
}

Outcome cmd_check_class(const CommonOptions& common, const SymbolOptions& sym, int radius, std::vector<int> alpha,
                        std::vector<int> beta, int k, double delta, std::optional<double> claimed_m) {
  const Symbol a = build_symbol(sym);
  Outcome o{make_report("check-class", parse_block_weight(common.block_weight), resolve_timestamp(common)), {}, false, {}};
  alpha.resize(2, 0);
  beta.resize(2, 0);
  const MultiIndex al{alpha[0], alpha[1]};
  const MultiIndex be{beta[0], beta[1]};
  require(a.dim() == 2 || (al[1] == 0 && be[1] == 0), "one-dimensional symbols take single-component --alpha/--beta");
  const FrequencyLattice lattice(a.dim(), radius);
  const OrderEstimate est = estimate_order(a, al, be, lattice);
  const double m = claimed_m.value_or(a.claimed_order());
  const double expected = m - a.claimed_rho() * order_of(al) + a.claimed_delta() * order_of(be);
  Json& b = o.report.body;
  b["symbol"] = symbol_json(a);
  b["lattice_radius"] = radius;
  b["alpha"] = {al[0], al[1]};
  b["beta"] = {be[0], be[1]};
  b["m_hat"] = est.all_zero ? Json("-inf") : Json(est.m_hat);
  b["c_hat"] = est.c_hat;
  b["shells_used"] = est.shells_used;
  b["expected_exponent"] = expected;
  b["consistent"] = est.all_zero || (std::isfinite(expected) ? est.m_hat <= expected + 0.1 : true);
  std::vector<std::pair<std::string, double>> rows{{"m_hat", est.all_zero ? -kInf : est.m_hat},
                                                   {"c_hat", est.c_hat},
                                                   {"expected_exponent", expected}};
  if (k >= 1) {
    const FrequencyLattice decay_lattice(a.dim(), std::min(radius, a.dim() == 1 ? 64 : 16));
    const DecayLemmaResult d = verify_decay_lemma(a, k, m, delta, decay_lattice);
    b["decay_lemma"] = {{"k", k},
                        {"m", m},
                        {"delta", delta},
                        {"radius", decay_lattice.radius()},
                        {"c_est", d.c_est},
                        {"eta_at_sup", {d.eta_at_sup[0], d.eta_at_sup[1]}},
                        {"xi_at_sup", {d.xi_at_sup[0], d.xi_at_sup[1]}},
                        {"conclusion_only", d.conclusion_only}};
    if (d.conclusion_only) o.report.warn("sampled symbol: x-smoothness unverifiable, decay check is conclusion-only");
    rows.emplace_back("c_est", d.c_est);
  }
  o.report.diagnostics["fit"] = "log-log least squares of shell suprema over <xi> >= 2";
  o.csv = kv_csv(rows);
  return o;
}

Outcome cmd_nuclearity(const CommonOptions& common, const std::string& theorem, int case_id, const TorusFlags& tf,
                       const GroupFlags& gf, const SymbolOptions& sym, const MultiplierCriterionParams& mp,
                       const DomainSpace& domain) {
  Outcome o{make_report("nuclearity", parse_block_weight(common.block_weight), resolve_timestamp(common)), {}, false, {}};
  CriterionVerdict v;
  if (theorem == "tt1") {
    const GroupDual dual = build_dual(gf);
    MultiplierCriterionParams p = mp;
    p.case_id = case_id == 0 ? 3 : case_id;
    DualSymbol a = [&] {
      if (sym.family == "bessel") {
        const double m = sym.m;
        return DualSymbol::scalar([m](const DualPoint& x) { return Complex{std::pow(x.bracket, m)}; },
                                  "<xi>^" + format_double(m) + " I");
      }
      if (sym.family == "heat") {
        const double t = sym.t;
        return DualSymbol::scalar([t](const DualPoint& x) { return Complex{std::exp(-t * x.lambda)}; },
                                  "exp(-t lambda) I");
      }
      if (sym.family == "constant") {
        const double c = sym.c;
        return DualSymbol::scalar([c](const DualPoint&) { return Complex{c}; }, "constant I");
      }
      throw InvalidArgument("tt1 takes multiplier symbols: --symbol bessel|heat|constant");
    }();
    v = check_tt1(dual, a, p);
    o.report.body["dual"] = dual_json(dual);
    o.report.body["params"] = {{"r", p.r}, {"p", p.p}, {"q", p.q}, {"case", p.case_id}};
  } else {
    const TorusCriterionParams p{tf.n, tf.r, tf.alpha, tf.p1, tf.k, tf.delta, tf.m, tf.w2, tf.p2, tf.q2};
    if (theorem == "t1") {
      require(case_id == 0 || case_id == 1, "t1 has a single clause set (--case 1)");
      v = check_theorem_t1(p);
    } else if (theorem == "t3") {
      require(case_id == 0 || case_id == 1, "t3 has a single clause set (--case 1)");
      v = check_theorem_t3(p, domain);
      o.report.body["domain"] = {{"space", domain.kind == DomainSpace::lebesgue ? "lebesgue" : "holder"},
                                 {"exponent", domain.exponent}};
    } else {
      require(case_id >= 0 && case_id <= 2, "t2 --case must be 1 or 2");
      v = check_theorem_t2(p, case_id == 1 ? T2Set::nuclear : case_id == 2 ? T2Set::r_nuclear : T2Set::automatic);
    }
    o.report.body["params"] = {{"n", p.n},     {"r", p.r},   {"alpha", p.alpha}, {"p1", p.p1}, {"k", p.k},
                               {"delta", p.delta}, {"m", p.m}, {"w2", p.w2},     {"p2", p.p2}, {"q2", p.q2}};
  }
  o.report.body["verdict"] = verdict_json(v);
  for (const auto& w : v.warnings) o.report.warn(w);
  o.report.diagnostics["strict_inequalities"] = "checked without slack";
  std::vector<std::pair<std::string, double>> rows{{"satisfied", v.satisfied ? 1.0 : 0.0}};
  for (const auto& kv : v.derived_params) rows.push_back(kv);
  rows.emplace_back("tail_estimate", v.witness.tail);
  o.csv = kv_csv(rows);
  if (common.require_convergent && !v.witness.certified) {
    o.numerical_failure = true;
    o.failure_message = "criterion series witness not certified (--require-convergent)";
  }
  return o;
}

Outcome cmd_heat(const CommonOptions& common, const GroupFlags& gf, double t) {
  Outcome o{make_report("heat-trace", parse_block_weight(common.block_weight), resolve_timestamp(common)), {}, false, {}};
  const GroupDual dual = build_dual(gf);
  const HeatTrace h = heat_trace(dual, t);
  Json& b = o.report.body;
  b["dual"] = dual_json(dual);
  b["t"] = t;
  b["heat_trace"] = h.value;
  b["tail_estimate"] = h.monitor.tail;
  b["certified"] = h.monitor.certified;
  o.report.diagnostics["tail_monitor"] = monitor_json(h.monitor);
  if (!h.monitor.certified) o.report.warn("heat trace tail not certified by the geometric shell monitor");
  o.csv = kv_csv({{"heat_trace", h.value}, {"tail_estimate", h.monitor.tail}});
  if (common.require_convergent && !h.monitor.certified) {
    o.numerical_failure = true;
    o.failure_message = "heat-trace tail not certified (--require-convergent)";
  }
  return o;
}

Outcome cmd_bessel(const CommonOptions& common, const GroupFlags& gf, double alpha) {
  Outcome o{make_report("bessel-trace", parse_block_weight(common.block_weight), resolve_timestamp(common)), {}, false, {}};
  const GroupDual dual = build_dual(gf);
  const BesselTrace t = bessel_trace(dual, alpha);
  Json& b = o.report.body;
  b["dual"] = dual_json(dual);
  b["alpha"] = alpha;
  b["bessel_trace"] = t.value;
  b["partial_sum"] = t.partial_sum;
  b["tail_correction"] = t.tail_correction;
  b["tail_bound"] = t.tail_bound;
  b["divergent"] = t.divergent;
  o.report.diagnostics["tail_rule"] = t.tail_rule;
  if (t.divergent) o.report.warn("divergent: alpha <= group dimension; value is a partial sum only");
  o.csv = kv_csv({{"bessel_trace", t.value},
                  {"partial_sum", t.partial_sum},
                  {"tail_correction", t.tail_correction},
                  {"tail_bound", t.tail_bound},
                  {"divergent", t.divergent ? 1.0 : 0.0}});
  if (common.require_convergent && t.divergent) {
    o.numerical_failure = true;
    o.failure_message = "Bessel trace diverges (--require-convergent)";
  }
  return o;
}

Outcome cmd_approx(const CommonOptions& common, const FunctionFlags& ff, const BesovParams& params,
                   const std::vector<double>& n_values) {
  const BlockWeight weight = parse_block_weight(common.block_weight);
  Outcome o{make_report("approx-demo", weight, resolve_timestamp(common)), {}, false, {}};
  const auto [f, label] = build_function(ff);
  const auto rows = partial_sum_convergence(f, params, n_values, weight);
  bool non_increasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i) non_increasing = non_increasing && rows[i].second <= rows[i - 1].second + 1e-12;
  Json table = Json::array();
  o.csv = "N,error\n";
  for (const auto& [n, e] : rows) {
    table.push_back(Json::array({n, e}));
    o.csv += format_double(n) + "," + format_double(e) + "\n";
  }
  Json& b = o.report.body;
  b["function"] = label;
  b["grid_size"] = f.grid_size();
  b["params"] = {{"w", params.w}, {"p", params.p}, {"q", params.q}};
  b["errors"] = table;
  b["non_increasing"] = non_increasing;
  o.report.diagnostics["partial_sum"] = "S_N keeps <xi> <= N";
  return o;
}

Outcome cmd_spectrum(const CommonOptions& common, const SymbolOptions& sym, int radius, bool vectors,
                     const std::string& matrix_path) {
  const Symbol a = build_symbol(sym);
  Outcome o{make_report("spectrum", parse_block_weight(common.block_weight), resolve_timestamp(common)), {}, false, {}};
  const FrequencyLattice lattice(a.dim(), radius);
  const OperatorMatrix A = operator_matrix(a, lattice);
  EigenOptions options;
  options.compute_vectors = vectors;
  const EigenResult e = eigenvalues(A, options);
  if (!matrix_path.empty()) {
    std::ofstream file(matrix_path, std::ios::binary);
    require(static_cast<bool>(file), "cannot write matrix CSV to '" + matrix_path + "'");
    file << matrix_csv(A);
  }
  Json& b = o.report.body;
  b["symbol"] = symbol_json(a);
  b["lattice_radius"] = radius;
  b["side"] = lattice.size();
  b["eigenvalues"] = complex_list_json(e.values);
  b["matrix_trace"] = complex_json(matrix_trace(A));
  b["matrix_norm"] = e.matrix_norm;
  b["max_residual"] = vectors ? Json(e.max_residual) : Json(nullptr);
  o.csv = "index,re,im,abs\n";
  for (std::size_t i = 0; i < e.values.size(); ++i)
    o.csv += std::to_string(i) + "," + format_double(e.values[i].real()) + "," + format_double(e.values[i].imag()) +
             "," + format_double(std::abs(e.values[i])) + "\n";
  return o;
}

void emit(const Outcome& o, const CommonOptions& common, std::ostream& out) {
  const std::string text = common.format == "csv" ? o.csv : dump_json(o.report.to_json());
  if (common.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(common.output, std::ios::binary);
  if (!file) throw InvalidArgument("cannot write to '" + common.output + "'; check the directory exists");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toroidal pseudo-differential operators: traces, Besov norms and nuclearity criteria", "nuctrace"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  CommonOptions common;
  SymbolOptions sym;
  std::function<Outcome()> action;

  auto* trace = app.add_subcommand("trace", "Nuclear and spectral trace of one compression");
  int trace_radius = 16;
  bool no_spectrum = false;
  add_common(trace, common);
  add_symbol(trace, sym);
  trace->add_option("--radius", trace_radius, "Lattice radius N")->check(CLI::NonNegativeNumber);
  trace->add_flag("--no-spectrum", no_spectrum, "Skip the eigenvalue computation");
  trace->callback([&] { action = [&] { return cmd_trace(common, sym, trace_radius, no_spectrum); }; });

  auto* lidskii = app.add_subcommand("lidskii", "Nuclear vs spectral trace across radii");
  std::vector<int> radii{4, 8, 16};
  add_common(lidskii, common);
  add_symbol(lidskii, sym);
  lidskii->add_option("--radii", radii, "Increasing lattice radii")->delimiter(',');
  lidskii->callback([&] { action = [&] { return cmd_lidskii(common, sym, radii); }; });

  auto* besov = app.add_subcommand("besov-norm", "Dyadic Besov norm of a periodic function");
  FunctionFlags besov_f;
  BesovParams besov_p{1.0, 2.0, 2.0};
  int besov_radius = -1;
  add_common(besov, common);
  add_function(besov, besov_f);
  besov->add_option("--w", besov_p.w, "Smoothness w");
  besov->add_option("--p", besov_p.p, "Integrability p in [1, inf]");
  besov->add_option("--q", besov_p.q, "Summability q in [1, inf]");
  besov->add_option("--radius", besov_radius, "Lattice radius (default: largest the grid resolves)");
  besov->callback([&] { action = [&] { return cmd_besov(common, besov_f, besov_p, besov_radius); }; });

  auto* check = app.add_subcommand("check-class", "Empirical symbol order and the Fourier decay bound");
  int check_radius = 64;
  std::vector<int> alpha{0}, beta{0};
  int decay_k = 0;
  double decay_delta = 0.0;
  std::optional<double> claimed_m;
  double claimed_m_value = 0.0;
  add_common(check, common);
  add_symbol(check, sym);
  check->add_option("--radius", check_radius, "Lattice radius (>= 8)");
  check->add_option("--alpha", alpha, "Difference multi-index")->delimiter(',');
  check->add_option("--beta", beta, "x-derivative multi-index")->delimiter(',');
  check->add_option("--k", decay_k, "Decay check order k (0 skips it)");
  check->add_option("--delta", decay_delta, "delta for the decay check");
  auto* claimed_opt = check->add_option("--claimed-m", claimed_m_value, "Claimed order (default: the family's order)");
  check->callback([&] {
    if (claimed_opt->count() > 0) claimed_m = claimed_m_value;
    action = [&] { return cmd_check_class(common, sym, check_radius, alpha, beta, decay_k, decay_delta, claimed_m); };
  });

  auto* nuclearity = app.add_subcommand("nuclearity", "Evaluate a nuclearity criterion");
  std::string theorem;
  int case_id = 0;
  TorusFlags tf;
  GroupFlags nf;
  nf.cutoff = 64;
  MultiplierCriterionParams mp;
  add_common(nuclearity, common);
  nuclearity->add_option("--theorem", theorem, "t1 | t2 | t3 | tt1")->required()->check(CLI::IsMember({"t1", "t2", "t3", "tt1"}));
  nuclearity->add_option("--case", case_id, "Clause set (t2: 1|2, tt1: 1-4)");
  nuclearity->add_option("--n", tf.n, "Torus dimension n");
  nuclearity->add_option("--r", tf.r, "Nuclearity index r in (0,1]");
  nuclearity->add_option("--alpha", tf.alpha, "alpha in (0,1/2]");
  nuclearity->add_option("--p1", tf.p1, "p1 in (1,2]");
  nuclearity->add_option("--k", tf.k, "Smoothness order k");
  nuclearity->add_option("--delta", tf.delta, "delta in [0,1]");
  nuclearity->add_option("--m", tf.m, "Symbol order m (t1/t2); multiplier exponent for tt1 --symbol bessel");
  nuclearity->add_option("--w2", tf.w2, "Target smoothness w2");
  nuclearity->add_option("--p2", tf.p2, "Target p2");
  nuclearity->add_option("--q2", tf.q2, "Target q2");
  std::string domain_space = "lebesgue";
  double domain_exponent = 2.0;
  nuclearity->add_option("--domain", domain_space, "t3 domain space")->check(CLI::IsMember({"lebesgue", "holder"}));
  nuclearity->add_option("--domain-exponent", domain_exponent, "t3 domain: p of L^p, or s of the Hölder space");
  nuclearity->add_option("--group", nf.group, "tt1 group")->check(CLI::IsMember({"torus", "su2"}));
  nuclearity->add_option("--dim", nf.dim, "tt1 torus dimension")->check(CLI::Range(1, 2));
  nuclearity->add_option("--cutoff", nf.cutoff, "tt1 truncation");
  nuclearity->add_flag("--integer-only", nf.integer_only, "SU(2): integer l only");
  nuclearity->add_option("--symbol", sym.family, "tt1 multiplier")->check(CLI::IsMember({"bessel", "heat", "constant"}));
  nuclearity->add_option("--t", sym.t, "tt1 heat parameter");
  nuclearity->add_option("--c", sym.c, "tt1 constant value");
  nuclearity->add_option("--p", mp.p, "tt1 p");
  nuclearity->add_option("--q", mp.q, "tt1 q");
  nuclearity->callback([&] {
    action = [&] {
      SymbolOptions s = sym;
      s.m = tf.m;
      MultiplierCriterionParams p = mp;
      p.r = tf.r;
      const DomainSpace domain{domain_space == "holder" ? DomainSpace::holder : DomainSpace::lebesgue, domain_exponent};
      return cmd_nuclearity(common, theorem, case_id, tf, nf, s, p, domain);
    };
  });

  auto* heat = app.add_subcommand("heat-trace", "sum d^2 exp(-t lambda) over a group dual");
  GroupFlags hf;
  double heat_t = 1.0;
  add_common(heat, common);
  add_group(heat, hf);
  heat->add_option("--t", heat_t, "t > 0");
  heat->callback([&] { action = [&] { return cmd_heat(common, hf, heat_t); }; });

  auto* bessel = app.add_subcommand("bessel-trace", "sum d^2 <xi>^-alpha over a group dual");
  GroupFlags bf;
  bf.cutoff = 100;
  double bessel_alpha = 2.0;
  add_common(bessel, common);
  add_group(bessel, bf);
  bessel->add_option("--alpha", bessel_alpha, "Decay exponent alpha");
  bessel->callback([&] { action = [&] { return cmd_bessel(common, bf, bessel_alpha); }; });

  auto* approx = app.add_subcommand("approx-demo", "Besov error of partial Fourier sums S_N f");
  FunctionFlags approx_f;
  approx_f.degree = 8;
  BesovParams approx_p{0.0, 2.0, 2.0};
  std::vector<double> n_values{1, 2, 4, 8, 9};
  add_common(approx, common);
  add_function(approx, approx_f);
  approx->add_option("--w", approx_p.w, "Smoothness w");
  approx->add_option("--p", approx_p.p, "p in [1, inf]");
  approx->add_option("--q", approx_p.q, "q in [1, inf]");
  approx->add_option("--n-values", n_values, "Cutoffs N")->delimiter(',');
  approx->callback([&] { action = [&] { return cmd_approx(common, approx_f, approx_p, n_values); }; });

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the operator matrix");
  int spectrum_radius = 8;
  bool vectors = false;
  std::string matrix_path;
  add_common(spectrum, common);
  add_symbol(spectrum, sym);
  spectrum->add_option("--radius", spectrum_radius, "Lattice radius N")->check(CLI::NonNegativeNumber);
  spectrum->add_flag("--vectors", vectors, "Compute eigenvectors and residuals");
  spectrum->add_option("--matrix-csv", matrix_path, "Also export the matrix as CSV");
  spectrum->callback([&] { action = [&] { return cmd_spectrum(common, sym, spectrum_radius, vectors, matrix_path); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nrun with --help for usage\n";
    return kExitInvalid;
  }

  try {
    const Outcome o = action();
    emit(o, common, out);
    if (o.numerical_failure) {
      err << "error: " << o.failure_message << "\n";
      return kExitNumerical;
    }
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace nuctrace::cli
