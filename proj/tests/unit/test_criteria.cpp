#include <cmath>

#include "doctest.h"
#include "nuctrace/criteria.hpp"
#include "nuctrace/quantization.hpp"
#include "nuctrace/summation.hpp"

using namespace nuctrace;

namespace {

bool has_violation(const CriterionVerdict& v, const std::string& name) {
  for (const auto& c : v.violated_clauses)
    if (c.name == name) return true;
  return false;
}

const Clause& violation(const CriterionVerdict& v, const std::string& name) {
  for (const auto& c : v.violated_clauses)
    if (c.name == name) return c;
  throw std::runtime_error("no violation " + name);
}

}  // namespace

TEST_CASE("epsilon") {
  CHECK(epsilon(1.5) == 0.5);
  CHECK(epsilon(2.0) == 0.5);
  CHECK(epsilon(4.0) == 0.25);
  CHECK_THROWS_AS(epsilon(1.0), InvalidArgument);
}

TEST_CASE("l^r seminorm") {
  Eigen::MatrixXcd A(2, 2);
  A << 1, 0, 0, 1;
  CHECK(lr_seminorm(A, 0.5) == doctest::Approx(4.0));
  CHECK(lr_seminorm(A, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("t1 derived parameters") {
  TorusCriterionParams p;
  p.m = -4.0;
  const auto v = check_theorem_t1(p);
  CHECK(v.satisfied);
  CHECK(v.witness.certified);
  for (const auto& [k, val] : v.derived_params) {
    if (k == "q1") CHECK(val == doctest::Approx(1.0));
    if (k == "w1") CHECK(val == doctest::Approx(0.5));
  }
}

TEST_CASE("t1 strict inequality fails at equality") {
  TorusCriterionParams p;
  p.m = -1.0;
  const auto v = check_theorem_t1(p);
  CHECK_FALSE(v.satisfied);
  REQUIRE(has_violation(v, "m < -n/r - w2 - 2k delta"));
  CHECK(violation(v, "m < -n/r - w2 - 2k delta").fails_at_equality);
}

TEST_CASE("t1 preconditions are itemized") {
  TorusCriterionParams p;
  p.alpha = 0.7;
  p.p1 = 3.0;
  p.n = 2;
  try {
    check_theorem_t1(p);
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("alpha") != std::string::npos);
    CHECK(msg.find("p1") != std::string::npos);
    CHECK(msg.find("k > n/2") != std::string::npos);
  }
}

TEST_CASE("t3 domains") {
  TorusCriterionParams p;
  p.m = -2.5;
  p.w2 = 0.5;
  p.p2 = kInf;
  p.q2 = kInf;
  const auto v = check_theorem_t3(p, {DomainSpace::holder, 0.3});
  CHECK(v.satisfied);
  CHECK(v.clause_set == "holder");
  bool holder_to_holder = false;
  for (const auto& [k, val] : v.derived_params)
    if (k == "holder_to_holder") holder_to_holder = val == 1.0;
  CHECK(holder_to_holder);
  CHECK_THROWS_AS(check_theorem_t3(p, {DomainSpace::lebesgue, 2.5}), InvalidArgument);
  p.n = 2;
  p.k = 2;
  CHECK_THROWS_AS(check_theorem_t3(p, {DomainSpace::holder, 0.3}), InvalidArgument);
  // monotone in m
  p = TorusCriterionParams{};
  for (double m : {-1.5, -2.0, -4.0}) {
    p.m = m;
    CHECK(check_theorem_t3(p, {DomainSpace::lebesgue, 1.0}).satisfied);
  }
}

TEST_CASE("t2 automatic selection") {
  TorusCriterionParams p;
  p.m = -3.0;
  p.w2 = 0.0;
  const auto v = check_theorem_t2(p);
  CHECK(v.satisfied);
  CHECK(v.clause_set == "2");

  p.m = 0.0;
  const auto none = check_theorem_t2(p);
  CHECK_FALSE(none.satisfied);
  CHECK(none.clause_set == "none");
  CHECK(has_violation(none, "w2 < -n/2"));
  CHECK(has_violation(none, "m < -n/r - 2k delta"));
}

TEST_CASE("t2 set 1 verdict follows clauses, warns on the witness") {
  TorusCriterionParams p;
  p.w2 = -1.0;
  p.m = 0.0;
  const auto v = check_theorem_t2(p, T2Set::nuclear);
  CHECK(v.satisfied);
  CHECK_FALSE(v.witness.certified);
  CHECK(v.warnings.size() == 1);
  p.w2 = -1.5;
  const auto w = check_theorem_t2(p, T2Set::nuclear);
  CHECK(w.witness.certified);
  CHECK(w.warnings.empty());
  p.r = 0.5;
  CHECK_THROWS_AS(check_theorem_t2(p, T2Set::nuclear), InvalidArgument);
}

TEST_CASE("tt1 exponents") {
  const auto e1 = tt1_exponents(3, {1.0, 1.5, 3.0, 1});
  CHECK(e1.bracket == doctest::Approx(1.0));
  CHECK(e1.dimension == doctest::Approx(1.0));
  const auto e2 = tt1_exponents(1, {1.0, 1.0, 1.0, 2});
  CHECK(e2.bracket == doctest::Approx(1.0));
  CHECK(e2.dimension == doctest::Approx(1.5));
  const auto e4 = tt1_exponents(3, {0.5, 4.0, 2.0, 4});
  CHECK(e4.dimension == doctest::Approx(1.125));
}

TEST_CASE("tt1 case ranges are enforced") {
  const auto dual = enumerate_torus_dual(1, 64);
  const auto one = DualSymbol::scalar([](const DualPoint&) { return Complex{1.0}; });
  CHECK_THROWS_AS(check_tt1(dual, one, {1.0, 3.0, 2.0, 1}), InvalidArgument);
  CHECK_THROWS_AS(check_tt1(dual, one, {1.0, 2.0, 2.0, 2}), InvalidArgument);
  CHECK_THROWS_AS(check_tt1(dual, one, {1.0, 1.5, 2.0, 3}), InvalidArgument);
  CHECK_THROWS_AS(check_tt1(dual, one, {1.0, 2.0, 3.0, 4}), InvalidArgument);
  CHECK_THROWS_AS(check_tt1(dual, one, {1.0, 2.0, 2.0, 5}), InvalidArgument);
}

TEST_CASE("tt1 heat multiplier on SU(2) is certified") {
  const auto dual = enumerate_su2_dual(128);
  const auto heat = DualSymbol::scalar([](const DualPoint& p) { return Complex{std::exp(-p.lambda)}; });
  const auto v = check_tt1(dual, heat, {1.0, 2.0, 2.0, 3});
  CHECK(v.satisfied);
  CHECK(v.warnings.empty());
}

TEST_CASE("tt1 warns on small cutoffs") {
  const auto dual = enumerate_torus_dual(1, 10);
  const auto heat = DualSymbol::scalar([](const DualPoint& p) { return Complex{std::exp(-p.lambda)}; });
  const auto v = check_tt1(dual, heat, {1.0, 2.0, 2.0, 3});
  CHECK_FALSE(v.satisfied);
  CHECK_FALSE(v.warnings.empty());
}

TEST_CASE("matrix symbols use the entrywise l^r norm") {
  DualPoint p;
  p.d = 2;
  const auto a = DualSymbol::matrix([](const DualPoint&) { return Eigen::MatrixXcd::Identity(2, 2); });
  CHECK(a.lr_power(p, 0.5) == doctest::Approx(2.0));
  const auto s = DualSymbol::scalar([](const DualPoint&) { return Complex{0.25}; });
  CHECK(s.lr_power(p, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("nuclear decomposition reconstructs T_a f") {
  const auto a = Symbol::modulated(1, Profile::bracket_power, -2.0, 2.0);
  const FrequencyLattice l(1, 6);
  const auto dec = nuclear_decomposition(a, l);
  FourierCoefficients c(l);
  for (std::size_t j = 0; j < c.coeffs.size(); ++j) c.coeffs[j] = Complex{1.0 / (1.0 + j), 0.5};
  const auto f = inverse_transform(c, dec.grid_size);
  const auto g = dec.reconstruct(f);
  const auto direct = apply(a, f, l).output;
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(g[i] - direct[i]) < 1e-13);
}

TEST_CASE("quasi-norm bound of a multiplier") {
  const FrequencyLattice l(1, 16);
  const auto a = Symbol::bessel(1, -4.0);
  CompensatedSum expected;
  for (auto xi : l.points()) expected.add(std::pow(japanese_bracket(xi), -4.0));
  CHECK(nuclear_quasinorm_bound(a, 1.0, {0.0, 2.0, 2.0}, l) == doctest::Approx(expected.value()).epsilon(1e-12));
  // r < 1 raises each term to the power r
  CompensatedSum half;
  for (auto xi : l.points()) half.add(std::pow(japanese_bracket(xi), -2.0));
  CHECK(nuclear_quasinorm_bound(a, 0.5, {0.0, 2.0, 2.0}, l) == doctest::Approx(half.value()).epsilon(1e-12));
}
