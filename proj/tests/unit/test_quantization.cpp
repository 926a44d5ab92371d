#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nuctrace/quantization.hpp"
#include "nuctrace/summation.hpp"

using namespace nuctrace;

TEST_CASE("multiplier quantization multiplies coefficients") {
  const FrequencyLattice l(1, 4);
  FourierCoefficients c(l);
  c.at({2, 0}) = 1.0;
  c.at({-1, 0}) = Complex{0.0, 3.0};
  const auto f = inverse_transform(c, 32);
  const auto r = apply(Symbol::bessel(1, -2.0), f, l);
  CHECK(r.truncated_l2 < 1e-13);
  const auto out = forward_transform(r.output, l);
  CHECK(std::abs(out.at({2, 0}) - 0.2) < 1e-14);
  CHECK(std::abs(out.at({-1, 0}) - Complex{0.0, 1.5}) < 1e-14);
}

TEST_CASE("apply reports the dropped band") {
  FourierCoefficients c(FrequencyLattice(1, 6));
  c.at({5, 0}) = 2.0;
  c.at({1, 0}) = 1.0;
  const auto f = inverse_transform(c, 32);
  const auto r = apply(Symbol::constant(1, 1.0), f, FrequencyLattice(1, 3));
  CHECK(r.truncated_l2 == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("operator matrix entries are symbol coefficients") {
  const auto a = Symbol::modulated(1, Profile::bracket_power, -4.0, 2.0);
  const FrequencyLattice l(1, 4);
  const auto A = operator_matrix(a, l);
  CHECK(A.entries.rows() == 9);
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = 0; j < l.size(); ++j) {
      const LatticePoint eta = l.point(i), xi = l.point(j);
      const Complex expected = symbol_fourier(a, eta - xi, xi);
      CHECK(std::abs(A.entries(i, j) - expected) < 1e-15);
    }
  // trace = 2 sum <xi>^-4 over |xi| <= 4
  CHECK(matrix_trace(A).real() == doctest::Approx(3.2138408304498270).epsilon(1e-14));
}

TEST_CASE("eigenvalues of a multiplier compression") {
  const FrequencyLattice l(1, 6);
  const auto e = eigenvalues(operator_matrix(Symbol::bessel(1, -4.0), l), {true});
  REQUIRE(e.values.size() == l.size());
  std::vector<Complex> expected;
  for (auto xi : l.points()) expected.emplace_back(std::pow(japanese_bracket(xi), -4.0), 0.0);
  canonical_sort(expected);
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(e.values[i] - expected[i]) < 1e-12);
  CHECK(e.max_residual <= 1e-9 * e.matrix_norm);
}

TEST_CASE("eigenvalues of a non-normal matrix") {
  Eigen::MatrixXcd A(3, 3);
  A << 2, 1, 0, 0, 2, 1, 0, 0, Complex{0, 1};
  const auto e = eigenvalues(A, {true});
  CHECK(std::abs(e.values[0] - 2.0) < 1e-7);
  CHECK(std::abs(e.values[1] - 2.0) < 1e-7);
  CHECK(std::abs(e.values[2] - Complex{0, 1}) < 1e-12);
  CHECK(e.max_residual < 1e-9 * e.matrix_norm);
}

TEST_CASE("canonical order: descending modulus, then argument") {
  std::vector<Complex> v{{1, 0}, {0, 2}, {-1, 0}, {0, -1}, {3, 0}};
  canonical_sort(v);
  CHECK(v[0] == Complex{3, 0});
  CHECK(v[1] == Complex{0, 2});
  CHECK(v[2] == Complex{0, -1});
  CHECK(v[3] == Complex{1, 0});
  CHECK(v[4] == Complex{-1, 0});
}

TEST_CASE("eigensolver rejects non-square and non-finite input") {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
  bad(0, 1) = std::nan("");
  CHECK_THROWS_AS(eigenvalues(bad), InvalidArgument);
  CHECK_THROWS_AS(eigenvalues(Eigen::MatrixXcd::Zero(3, 2)), InvalidArgument);
}

TEST_CASE("trace identity across symbols") {
  const FrequencyLattice l(2, 2);
  for (const auto& a : {Symbol::heat(2, 0.2), Symbol::modulated(2, Profile::gaussian, 0.1, 1.0),
                        Symbol::character_shift(2, Profile::bracket_power, -2.0)}) {
    const auto A = operator_matrix(a, l);
    const auto e = eigenvalues(A);
    const Complex tr = matrix_trace(A);
    CHECK(std::abs(compensated_sum(std::span<const Complex>(e.values)) - tr) <= 1e-9 * (1.0 + std::abs(tr)));
  }
}

TEST_CASE("matrix CSV") {
  const auto csv = matrix_csv(operator_matrix(Symbol::constant(1, 1.0), FrequencyLattice(1, 0)));
  CHECK(csv == "eta_index,xi_index,re,im\n0,0,1,0\n");
}
