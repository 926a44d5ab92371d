#include <cmath>

#include "doctest.h"
#include "nuctrace/series.hpp"

using namespace nuctrace;

TEST_CASE("geometric monitor") {
  const auto good = geometric_monitor({1.0, 0.5, 0.25, 0.125, 0.0625});
  CHECK(good.certified);
  CHECK(good.tail == doctest::Approx(0.0625));
  const auto slow = geometric_monitor({1.0, 0.95, 0.9, 0.86, 0.82});
  CHECK_FALSE(slow.certified);
  CHECK(std::isinf(slow.tail));
  CHECK_FALSE(geometric_monitor({1.0, 0.1, 0.01, 0.001}).certified);
  const auto zeros = geometric_monitor({1.0, 0.0, 0.0, 0.0, 0.0});
  CHECK(zeros.certified);
  CHECK(zeros.tail == 0.0);
}

TEST_CASE("power tail bound") {
  CHECK(power_tail_bound(1, -4.0, 16) == doctest::Approx(2.0 / (3.0 * 16 * 16 * 16)));
  CHECK(power_tail_bound(2, -4.0, 10) == doctest::Approx(8.0 / (2.0 * 100)));
  CHECK(std::isinf(power_tail_bound(1, -1.0, 10)));
  CHECK(std::isinf(power_tail_bound(2, -1.5, 10)));
  // the true tail sits below the bound
  const double tail = lattice_power_sum(1, -4.0, 4096) - lattice_power_sum(1, -4.0, 16);
  CHECK(tail < power_tail_bound(1, -4.0, 16));
  CHECK(tail > 0.4 * power_tail_bound(1, -4.0, 16));
}

TEST_CASE("lattice power sums") {
  CHECK(lattice_power_sum(1, -4.0, 16) == doctest::Approx(1.6135264632816448).epsilon(1e-15));
  CHECK(lattice_power_sum(1, -4.0, 32) == doctest::Approx(1.6136545616245823).epsilon(1e-15));
  // n = 2, radius 1: 1 + 4 * 2^-1 + 4 * 3^-1
  CHECK(lattice_power_sum(2, -2.0, 1) == doctest::Approx(1.0 + 2.0 + 4.0 / 3.0));
  CHECK(lattice_power_sum(3, 0.0, 2) == doctest::Approx(125.0));
}

TEST_CASE("power series witness") {
  const auto w = power_series_witness(1, -3.0);
  CHECK(w.certified);
  CHECK(w.partial_sums.front().first == 16);
  CHECK(w.partial_sums.back().first == witness_radius_cap(1));
  CHECK_FALSE(power_series_witness(2, -2.0).certified);
  CHECK(witness_radius_cap(2) == 256);
  CHECK(witness_radius_cap(3) == 64);
}
