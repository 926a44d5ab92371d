#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nuctrace/kernels.hpp"
#include "nuctrace/symbol.hpp"

using namespace nuctrace;

TEST_CASE("catalog evaluation") {
  const auto b = Symbol::bessel(1, -2.0);
  CHECK(b({0.3, 0.0}, {3, 0}).real() == doctest::Approx(0.1));
  const auto h = Symbol::heat(2, 0.5);
  CHECK(std::abs(h({0.1, 0.2}, {1, 1}) - std::exp(-1.0)) < 1e-15);
  const auto mod = Symbol::modulated(1, Profile::bracket_power, -4.0, 2.0);
  CHECK(std::abs(mod({0.0, 0.0}, {2, 0}) - 3.0 / 25.0) < 1e-15);
  const auto cs = Symbol::character_shift(1);
  CHECK(std::abs(cs({0.25, 0.0}, {5, 0}) - Complex{0.0, 1.0}) < 1e-15);
}

TEST_CASE("symbol Fourier coefficients of the modulated family") {
  const auto a = Symbol::modulated(1, Profile::bracket_power, -4.0, 2.0);
  const double g = std::pow(1.0 + 9.0, -2.0);
  CHECK(std::abs(symbol_fourier(a, {0, 0}, {3, 0}) - 2.0 * g) < 1e-15);
  CHECK(std::abs(symbol_fourier(a, {1, 0}, {3, 0}) - 0.5 * g) < 1e-15);
  CHECK(std::abs(symbol_fourier(a, {-1, 0}, {3, 0}) - 0.5 * g) < 1e-15);
  CHECK(std::abs(symbol_fourier(a, {2, 0}, {3, 0})) < 1e-15);
}

TEST_CASE("difference operator") {
  const auto b = Symbol::bessel(1, -2.0);
  const auto d = difference_op(b, {1, 0});
  CHECK(d({0.0, 0.0}, {2, 0}).real() == doctest::Approx(1.0 / 10.0 - 1.0 / 5.0));
  const auto d2 = difference_op(b, {2, 0});
  CHECK(d2({0.0, 0.0}, {0, 0}).real() == doctest::Approx(0.2 - 2.0 * 0.5 + 1.0));
}

TEST_CASE("difference of a sampled table shrinks or zero-extends") {
  const FrequencyLattice l(1, 6);
  const auto t = materialize(Symbol::bessel(1, -2.0), 32, l);
  const auto shrunk = difference_op(t, {1, 0});
  REQUIRE(shrunk.sampled_domain().has_value());
  CHECK(shrunk.sampled_domain()->lattice.radius() == 5);
  const auto ext = difference_op(t, {1, 0}, MarginPolicy::zero_extend);
  CHECK(ext.sampled_domain()->lattice.radius() == 6);
  CHECK(ext.sample(0, 32, {6, 0}).real() == doctest::Approx(-1.0 / 37.0));
}

TEST_CASE("x derivatives: exact for catalog, spectral for functions") {
  const auto a = Symbol::modulated(1, Profile::bracket_power, -4.0, 2.0);
  const auto da = x_derivative(a, {1, 0});
  const double x = 0.125;
  const double g = std::pow(2.0, -2.0);
  const double expected = -2.0 * std::numbers::pi * std::sin(2.0 * std::numbers::pi * x) * g;
  CHECK(da({x, 0.0}, {1, 0}).real() == doctest::Approx(expected).epsilon(1e-13));

  const auto f = Symbol::from_function(
      1, [](TorusPoint p, LatticePoint xi) { return Complex{std::cos(2.0 * std::numbers::pi * p[0]) * xi[0], 0.0}; },
      1, 1.0);
  const auto df = x_derivative(f, {1, 0});
  CHECK(df.sample(4, 32, {3, 0}).real() == doctest::Approx(-2.0 * std::numbers::pi * std::sin(std::numbers::pi / 4) * 3.0));
}

TEST_CASE("symbol arithmetic") {
  const auto a = Symbol::bessel(1, -2.0) + Symbol::heat(1, 1.0) * Complex{2.0, 0.0};
  CHECK(a({0.0, 0.0}, {1, 0}).real() == doctest::Approx(0.5 + 2.0 * std::exp(-1.0)));
}

TEST_CASE("estimate_order recovers the Bessel order") {
  for (double m : {-2.0, -4.0, -6.0}) {
    const auto est = estimate_order(Symbol::bessel(1, m), {0, 0}, {0, 0}, FrequencyLattice(1, 64));
    CHECK(est.m_hat == doctest::Approx(m).epsilon(0.02));
  }
  const auto diff = estimate_order(Symbol::bessel(1, -2.0), {1, 0}, {0, 0}, FrequencyLattice(1, 64));
  CHECK(diff.m_hat == doctest::Approx(-3.0).epsilon(0.05));
  const auto zero = estimate_order(Symbol::constant(1, 0.0), {0, 0}, {0, 0}, FrequencyLattice(1, 16));
  CHECK(zero.all_zero);
  CHECK(std::isinf(zero.m_hat));
}

TEST_CASE("decay lemma constant") {
  const auto a = Symbol::modulated(1, Profile::bracket_power, -4.0, 2.0);
  const auto r = verify_decay_lemma(a, 1, -4.0, 0.0, FrequencyLattice(1, 16));
  CHECK(r.c_est == doctest::Approx(2.0));
  CHECK_FALSE(r.conclusion_only);
  const auto t = materialize(a, 64, FrequencyLattice(1, 8));
  CHECK(verify_decay_lemma(t, 1, -4.0, 0.0, FrequencyLattice(1, 8)).conclusion_only);
}

TEST_CASE("serial and parallel symbol kernels are bit-identical") {
  const auto a = Symbol::modulated(2, Profile::gaussian, 0.3, 1.5) + Symbol::character_shift(2, Profile::bracket_power, -1.0);
  const FrequencyLattice l(2, 3);
  const int m = a.preferred_grid_size(l);
  CHECK(kernels::serial::symbol_columns(a, l, 6, m) == kernels::parallel::symbol_columns(a, l, 6, m));
  FourierCoefficients c(l);
  for (std::size_t j = 0; j < c.coeffs.size(); ++j) c.coeffs[j] = Complex{std::sin(1.0 + j), std::cos(2.0 * j)};
  CHECK(kernels::serial::apply_symbol(a, c, m) == kernels::parallel::apply_symbol(a, c, m));
}
