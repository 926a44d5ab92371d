#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nuctrace/besov.hpp"

using namespace nuctrace;

namespace {

PeriodicFunction character(int k, int m) {
  return PeriodicFunction::sample(1, m, [k](std::array<double, 2> x) {
    return std::exp(Complex{0.0, 2.0 * std::numbers::pi * k * x[0]});
  });
}

}  // namespace

TEST_CASE("block index") {
  CHECK(block_index({0, 0}) == 0);
  CHECK(block_index({1, 0}) == 0);
  CHECK(block_index({2, 0}) == 1);
  CHECK(block_index({3, 0}) == 1);
  CHECK(block_index({4, 0}) == 2);
  CHECK(block_index({3, 3}) == 2);  // |xi|^2 = 18
  CHECK(block_index({1, 1}) == 0);
  CHECK(block_index({0, 0}, BlockWeight::bracket) == 0);
  CHECK(block_index({1, 0}, BlockWeight::bracket) == 0);  // <xi> = sqrt 2
  CHECK(block_index({2, 0}, BlockWeight::bracket) == 1);
  CHECK(block_index({4, 0}, BlockWeight::bracket) == 2);
  CHECK(block_index({7, 0}, BlockWeight::bracket) == 2);
  CHECK(block_index({8, 0}, BlockWeight::bracket) == 3);
}

TEST_CASE("character norms") {
  const auto f = character(4, 64);
  CHECK(besov_norm(f, {1.0, 2.0, 2.0}, FrequencyLattice(1, 15)) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(besov_norm(f, {0.5, kInf, 1.0}, FrequencyLattice(1, 15)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(besov_norm(character(0, 32), {3.0, 1.0, kInf}, FrequencyLattice(1, 7)) == doctest::Approx(1.0));
}

TEST_CASE("B^0_{2,2} is L^2") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    FourierCoefficients c(FrequencyLattice(2, 5));
    for (auto& v : c.coeffs) v = Complex{g(rng), g(rng)};
    const auto f = inverse_transform(c, min_grid_size(5));
    CHECK(besov_norm(f, {0.0, 2.0, 2.0}, c.lattice) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((BesovParams{0.0, 0.5, 2.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((BesovParams{0.0, 2.0, 0.0}.validate()), InvalidArgument);
  CHECK_NOTHROW((BesovParams{-1.0, kInf, kInf}.validate()));
  CHECK(parse_block_weight("bracket") == BlockWeight::bracket);
  CHECK_THROWS_AS(parse_block_weight("euclid"), InvalidArgument);
}

TEST_CASE("block table") {
  FourierCoefficients c(FrequencyLattice(1, 8));
  c.at({1, 0}) = 1.0;
  c.at({5, 0}) = 1.0;
  const auto rows = besov_block_norms(c, 40, 1.0, 2.0);
  // one row per dyadic block of the lattice, empty or not
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].first == 0);
  CHECK(rows[0].second == doctest::Approx(1.0));
  CHECK(rows[1].second < 1e-14);
  CHECK(rows[2].first == 2);
  CHECK(rows[2].second == doctest::Approx(4.0));
  CHECK(rows[3].second < 1e-14);
}

TEST_CASE("Holder norm of a character") {
  const auto f = character(1, 64);
  // |e(x+h) - e(x)| = 2 sin(pi h), maximized over grid steps h = k/64
  double expected = 0.0;
  for (int k = 1; k <= 32; ++k) {
    const double h = k / 64.0;
    expected = std::max(expected, 2.0 * std::sin(std::numbers::pi * h) / std::sqrt(h));
  }
  expected += 1.0;
  CHECK(holder_norm(f, 0.5) == doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS(holder_norm(character(1, 32), 0.5), InvalidArgument);
}

TEST_CASE("Fourier-to-Besov embedding ratio is bounded") {
  FourierCoefficients c(FrequencyLattice(1, 12));
  for (std::size_t j = 0; j < c.coeffs.size(); ++j) c.coeffs[j] = 1.0 / (1.0 + c.lattice.point(j)[0] * c.lattice.point(j)[0]);
  const auto f = inverse_transform(c, 64);
  const auto r = fourier_embedding_ratio(f, 2.0, 0.5, c.lattice);
  CHECK(r.beta == doctest::Approx(1.0));
  CHECK(r.ratio > 0.0);
  // l^1 over a block is at most sqrt(#block) times its l^2 norm
  CHECK(r.ratio <= std::sqrt(3.0));
}
