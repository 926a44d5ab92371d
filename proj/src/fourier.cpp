#include "nuctrace/fourier.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "nuctrace/kernels.hpp"
#include "nuctrace/summation.hpp"

namespace nuctrace {

PeriodicFunction::PeriodicFunction(int dim, int grid_size) : dim_(dim), grid_size_(grid_size) {
  require(dim == 1 || dim == 2, "periodic function dimension must be 1 or 2");
  require(grid_size >= 1, "grid size must be positive");
  values_.assign(dim == 1 ? grid_size : static_cast<std::size_t>(grid_size) * grid_size, Complex{});
}

PeriodicFunction::PeriodicFunction(int dim, int grid_size, std::vector<Complex> values)
    : PeriodicFunction(dim, grid_size) {
  require(values.size() == values_.size(),
          "expected " + std::to_string(values_.size()) + " samples (grid_size^dim), got " +
              std::to_string(values.size()));
  values_ = std::move(values);
}

std::array<double, 2> PeriodicFunction::grid_point(std::size_t index) const {
  const double h = 1.0 / grid_size_;
  if (dim_ == 1) return {static_cast<double>(index) * h, 0.0};
  return {static_cast<double>(index / grid_size_) * h, static_cast<double>(index % grid_size_) * h};
}

FourierCoefficients::FourierCoefficients(FrequencyLattice l, std::vector<Complex> c)
    : lattice(l), coeffs(std::move(c)) {
  require(coeffs.size() == lattice.size(), "coefficient count does not match the lattice");
}

std::vector<Complex> unit_roots(int grid_size, int sign) {
  std::vector<Complex> roots(grid_size);
  // w^{M-k} is stored as the exact conjugate of w^k.
  for (int k = 0; 2 * k <= grid_size; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / grid_size;
    roots[k] = {std::cos(angle), sign * std::sin(angle)};
    if (k > 0 && k < grid_size - k) roots[grid_size - k] = std::conj(roots[k]);
  }
  if (grid_size % 2 == 0) roots[grid_size / 2] = -1.0;
  return roots;
}

namespace {

void check_margin(int grid_size, const FrequencyLattice& lattice) {
  require(grid_size >= min_grid_size(lattice.radius()),
          "aliasing precondition violated: grid_size " + std::to_string(grid_size) +
              " < 2(2N+1) = " + std::to_string(min_grid_size(lattice.radius())) + " for lattice radius " +
              std::to_string(lattice.radius()));
}

}  // namespace

FourierCoefficients forward_transform(const PeriodicFunction& f, const FrequencyLattice& lattice) {
  require(f.dim() == lattice.dim(), "dimension mismatch: function dim " + std::to_string(f.dim()) +
                                        ", lattice dim " + std::to_string(lattice.dim()));
  check_margin(f.grid_size(), lattice);
  return FourierCoefficients(lattice, kernels::parallel::forward_dft(f, lattice));
}

PeriodicFunction inverse_transform(const FourierCoefficients& c, int grid_size) {
  check_margin(grid_size, c.lattice);
  return PeriodicFunction(c.lattice.dim(), grid_size, kernels::parallel::inverse_dft(c, grid_size));
}

double lp_norm(const PeriodicFunction& f, double p) {
  require(p >= 1.0, "L^p norm needs p >= 1 (got " + std::to_string(p) + ")");
  if (std::isinf(p)) {
    double best = 0.0;
    for (const auto& v : f.values()) best = std::max(best, std::abs(v));
    return best;
  }
  CompensatedSum acc;
  for (const auto& v : f.values()) acc.add(p == 2.0 ? std::norm(v) : std::pow(std::abs(v), p));
  return std::pow(acc.value() / static_cast<double>(f.size()), 1.0 / p);
}

double sequence_norm(const std::vector<Complex>& c, double p) {
  require(p > 0.0, "sequence norm needs p > 0");
  if (std::isinf(p)) {
    double best = 0.0;
    for (const auto& v : c) best = std::max(best, std::abs(v));
    return best;
  }
  CompensatedSum acc;
  for (const auto& v : c) acc.add(p == 2.0 ? std::norm(v) : std::pow(std::abs(v), p));
  return std::pow(acc.value(), 1.0 / p);
}

}  // namespace nuctrace
