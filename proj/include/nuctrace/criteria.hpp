#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nuctrace/besov.hpp"
#include "nuctrace/group.hpp"
#include "nuctrace/series.hpp"
#include "nuctrace/symbol.hpp"

namespace nuctrace {

/// 1/2 on (1, 2], 1/t on [2, inf).
double epsilon(double t);

/// (sum |a_ij|^r)^{1/r}, 0 < r <= 1.
double lr_seminorm(const Eigen::MatrixXcd& A, double r);

/// One inequality with both sides evaluated.
struct Clause {
  std::string name;       ///< e.g. "m < -n/r - w2 - 2k delta"
  std::string relation;   ///< "<", "<=", ">"
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool fails_at_equality = false;
  std::string set;        ///< clause set label when a theorem has several
};

struct SeriesWitness {
  std::string series;
  std::string rule;
  std::vector<std::pair<double, double>> partial_sums;  ///< (truncation, partial sum)
  double tail = 0.0;
  bool certified = false;
  std::vector<double> shell_sums;
  std::vector<double> ratios;
};

struct CriterionVerdict {
  std::string theorem;
  std::string clause_set;   ///< which hypothesis set was evaluated
  bool satisfied = false;
  std::vector<std::pair<std::string, double>> derived_params;
  SeriesWitness witness;
  std::vector<Clause> checked_clauses;
  std::vector<Clause> violated_clauses;
  std::vector<std::string> warnings;
};

/// Parameters shared by the two torus theorems.
struct TorusCriterionParams {
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

/// w2 >= 0 theorem: 0 <= w2 < 2k - n and m < -n/r - w2 - 2k delta.
CriterionVerdict check_theorem_t1(const TorusCriterionParams& params);

enum class T2Set { automatic, nuclear, r_nuclear };

/// w2 < 0 theorem. Set 1 (nuclear, r = 1): w2 < -n/2, m <= -2k delta, k > n/4.
/// Set 2 (r-nuclear): w2 <= 0, m < -n/r - 2k delta, k > n/2.
CriterionVerdict check_theorem_t2(const TorusCriterionParams& params, T2Set set = T2Set::automatic);

/// Domain of the Lebesgue/Hölder variant: L^p with 1 <= p <= 2 (any n) or
/// Lambda^s = B^s_{inf,inf} with 0 < s < 1 (n = 1 only).
struct DomainSpace {
  enum Kind { lebesgue, holder } kind = lebesgue;
  double exponent = 2.0;  ///< p for lebesgue, s for holder
};

/// Same clauses as t1 with the domain's Fourier-coefficient bound in place of
/// the Besov embedding. With a Hölder domain, k = 1 and a Hölder target
/// (p2 = q2 = inf, 0 < w2 < 1) this is the Hölder-to-Hölder statement
/// m < -1/r - w2 - 2 delta.
CriterionVerdict check_theorem_t3(const TorusCriterionParams& params, const DomainSpace& domain);

/// Symbol on a group dual: either scalar multiples of the identity or full
/// d x d matrices.
class DualSymbol {
 public:
  static DualSymbol scalar(std::function<Complex(const DualPoint&)> fn, std::string name = "scalar");
  static DualSymbol matrix(std::function<Eigen::MatrixXcd(const DualPoint&)> fn, std::string name = "matrix");

  /// ||a(xi)||_{l^r}^r
  double lr_power(const DualPoint& p, double r) const;
  const std::string& name() const { return name_; }

 private:
  std::function<Complex(const DualPoint&)> scalar_;
  std::function<Eigen::MatrixXcd(const DualPoint&)> matrix_;
  std::string name_;
};

struct MultiplierCriterionParams {
  double r = 1.0;
  double p = 2.0;
  double q = 2.0;
  int case_id = 3;
};

/// Multiplier criterion on a group dual, cases 1-4. The case series is summed
/// over the truncation and certified by the geometric monitor on dyadic
/// bracket shells 2^j <= <xi> < 2^{j+1}, using only shells completed by the
/// cutoff.
CriterionVerdict check_tt1(const GroupDual& dual, const DualSymbol& a, const MultiplierCriterionParams& params);

/// Exponent of <xi> and d_xi in the case series term.
struct CaseExponents {
  double bracket;
  double dimension;
};
CaseExponents tt1_exponents(int group_dim, const MultiplierCriterionParams& params);

/// H_xi(x) = exp(i 2 pi <x, xi>) a(x, xi) sampled on `grid_size` points;
/// the functional G_xi is f -> f^(xi), bounded by 1.
struct NuclearDecomposition {
  FrequencyLattice lattice;
  int grid_size;
  std::vector<PeriodicFunction> h;
  std::vector<double> g_bound;

  /// sum_xi f^(xi) H_xi on the decomposition's grid.
  PeriodicFunction reconstruct(const PeriodicFunction& f) const;
};

NuclearDecomposition nuclear_decomposition(const Symbol& a, const FrequencyLattice& lattice);

/// sum_{xi in lattice} ||H_xi||_{B^w_{p,q}}^r.
double nuclear_quasinorm_bound(const Symbol& a, double r, const BesovParams& besov, const FrequencyLattice& lattice,
                               BlockWeight weight = BlockWeight::abs);

}  // namespace nuctrace
