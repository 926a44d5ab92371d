#pragma once

#include <complex>
#include <limits>
#include <vector>

#include "nuctrace/lattice.hpp"

namespace nuctrace {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Samples of a function on the uniform grid x_i = i/M of the period-1 torus
/// T^dim. Values are x-lexicographic: index = i0 * M + i1 in two dimensions.
class PeriodicFunction {
 public:
  PeriodicFunction(int dim, int grid_size);
  PeriodicFunction(int dim, int grid_size, std::vector<Complex> values);

  /// Samples `fn(x)` with x = (i0/M, i1/M).
  template <class Fn>
  static PeriodicFunction sample(int dim, int grid_size, Fn&& fn) {
    PeriodicFunction f(dim, grid_size);
    for (std::size_t i = 0; i < f.values_.size(); ++i) f.values_[i] = fn(f.grid_point(i));
    return f;
  }

  int dim() const { return dim_; }
  int grid_size() const { return grid_size_; }
  std::size_t size() const { return values_.size(); }
  std::array<double, 2> grid_point(std::size_t index) const;

  const std::vector<Complex>& values() const { return values_; }
  std::vector<Complex>& values() { return values_; }
  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }

 private:
  int dim_;
  int grid_size_;
  std::vector<Complex> values_;
};

/// One coefficient per lattice point, aligned with the lattice ordering.
struct FourierCoefficients {
  FrequencyLattice lattice;
  std::vector<Complex> coeffs;

  explicit FourierCoefficients(FrequencyLattice l) : lattice(l), coeffs(l.size()) {}
  FourierCoefficients(FrequencyLattice l, std::vector<Complex> c);

  Complex at(LatticePoint xi) const { return coeffs[lattice.index_of(xi)]; }
  Complex& at(LatticePoint xi) { return coeffs[lattice.index_of(xi)]; }
};

/// coeffs[xi] = M^{-dim} sum_i f(x_i) exp(-i 2 pi <x_i, xi>).
/// Requires M >= 2(2N+1); exact to rounding for trigonometric polynomials of
/// degree at most N.
FourierCoefficients forward_transform(const PeriodicFunction& f, const FrequencyLattice& lattice);

/// f(x_i) = sum_xi exp(i 2 pi <x_i, xi>) c[xi].
PeriodicFunction inverse_transform(const FourierCoefficients& c, int grid_size);

/// L^p norm on the probability-measure torus by the rectangle rule; p = inf
/// gives the grid maximum.
double lp_norm(const PeriodicFunction& f, double p);

/// l^p norm of a coefficient sequence, p in (0, inf]. Used for Parseval
/// checks and the Fourier-side norm in the embedding ratio.
double sequence_norm(const std::vector<Complex>& c, double p);

/// Roots of unity exp(sign * i 2 pi k / M), k = 0..M-1.
std::vector<Complex> unit_roots(int grid_size, int sign);

}  // namespace nuctrace
