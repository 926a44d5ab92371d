#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "nuctrace/errors.hpp"

namespace nuctrace {

// A point of Z^n for n = 1 or 2. One-dimensional points keep the second
// coordinate at zero so norms can be computed without knowing the dimension.
using LatticePoint = std::array<int, 2>;
using MultiIndex = std::array<int, 2>;

inline LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a[0] + b[0], a[1] + b[1]}; }
inline LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a[0] - b[0], a[1] - b[1]}; }

inline long long squared_norm(LatticePoint p) {
  return static_cast<long long>(p[0]) * p[0] + static_cast<long long>(p[1]) * p[1];
}

inline int max_norm(LatticePoint p) { return std::max(std::abs(p[0]), std::abs(p[1])); }

/// <xi> = (1 + |xi|^2)^{1/2} with the Euclidean norm.
inline double japanese_bracket(LatticePoint xi) {
  return std::sqrt(1.0 + static_cast<double>(squared_norm(xi)));
}

inline int order_of(MultiIndex alpha) { return alpha[0] + alpha[1]; }

/// Max-norm ball {xi in Z^dim : |xi|_inf <= radius}, ordered lexicographically
/// with every coordinate running from -radius to radius (first coordinate
/// slowest).
class FrequencyLattice {
 public:
  FrequencyLattice(int dim, int radius) : dim_(dim), radius_(radius) {
    require(dim == 1 || dim == 2, "lattice dimension must be 1 or 2");
    require(radius >= 0, "lattice radius must be non-negative");
  }

  int dim() const { return dim_; }
  int radius() const { return radius_; }
  int side() const { return 2 * radius_ + 1; }
  std::size_t size() const { return dim_ == 1 ? side() : static_cast<std::size_t>(side()) * side(); }

  LatticePoint point(std::size_t index) const {
    const int s = side();
    if (dim_ == 1) return {static_cast<int>(index) - radius_, 0};
    return {static_cast<int>(index / s) - radius_, static_cast<int>(index % s) - radius_};
  }

  bool contains(LatticePoint xi) const {
    if (dim_ == 1 && xi[1] != 0) return false;
    return max_norm(xi) <= radius_;
  }

  std::size_t index_of(LatticePoint xi) const {
    require(contains(xi), "lattice point outside the truncated lattice");
    if (dim_ == 1) return static_cast<std::size_t>(xi[0] + radius_);
    return static_cast<std::size_t>(xi[0] + radius_) * side() + static_cast<std::size_t>(xi[1] + radius_);
  }

  std::vector<LatticePoint> points() const {
    std::vector<LatticePoint> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = point(i);
    return out;
  }

  /// Euclidean-ball filter; the lattice itself always stays rectangular.
  static bool in_euclidean_ball(LatticePoint xi, double radius) {
    return static_cast<double>(squared_norm(xi)) <= radius * radius;
  }

  friend bool operator==(const FrequencyLattice&, const FrequencyLattice&) = default;

 private:
  int dim_;
  int radius_;
};

/// Smallest grid size M with M >= 2(2N+1), the anti-aliasing margin used by
/// every transform in the library.
inline int min_grid_size(int radius) { return 2 * (2 * radius + 1); }

/// Largest lattice radius N satisfying the anti-aliasing margin on M points.
inline int max_radius_for_grid(int grid_size) { return (grid_size - 2) / 4; }

}  // namespace nuctrace
