#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nuctrace/fourier.hpp"

namespace nuctrace {

using TorusPoint = std::array<double, 2>;

namespace detail {
class SymbolNode;
}

/// Grid and lattice on which a sampled symbol table is defined.
struct SampledDomain {
  int grid_size;
  FrequencyLattice lattice;
};

/// Frequency profile g(xi) used by the modulated and character-shift families.
enum class Profile { none, bracket_power, gaussian };

/// How difference operators treat sampled tables at the lattice edge.
enum class MarginPolicy {
  shrink,      ///< drop the lattice radius by the largest component of alpha
  zero_extend  ///< keep the lattice and read missing values as zero
};

/// A toroidal symbol a(x, xi) on T^n x Z^n, n = 1 or 2.
///
/// Either an expression over closed-form catalog families (evaluable at any
/// (x, xi)) or a sampled table on a grid x lattice. Carries the claimed class
/// parameters (m, rho, delta) as metadata; rho is never consulted by any
/// criterion.
class Symbol {
 public:
  /// <xi>^m
  static Symbol bessel(int dim, double m);
  /// exp(-t |xi|^2)
  static Symbol heat(int dim, double t);
  /// (c + cos 2 pi x_1) g(xi)
  static Symbol modulated(int dim, Profile g, double g_param, double c);
  /// exp(i 2 pi x_1) g(xi)
  static Symbol character_shift(int dim, Profile g = Profile::none, double g_param = 0.0);
  static Symbol constant(int dim, Complex c);
  /// Arbitrary closed form. `x_bandwidth` bounds the x-frequencies of
  /// fn(., xi); x-derivatives are taken spectrally from that bound.
  static Symbol from_function(int dim, std::function<Complex(TorusPoint, LatticePoint)> fn,
                              int x_bandwidth, double claimed_order, std::string name = "function");
  /// Table indexed x-major, lattice-minor: values[i * |lattice| + j].
  static Symbol sampled(int dim, int grid_size, FrequencyLattice lattice, std::vector<Complex> values);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }

  double claimed_order() const { return order_; }
  double claimed_rho() const { return rho_; }
  double claimed_delta() const { return delta_; }
  Symbol with_claims(double order, double rho, double delta) const;

  bool is_sampled() const;
  /// Domain of the underlying table, if any part of the expression is sampled.
  std::optional<SampledDomain> sampled_domain() const;
  /// Upper bound on |eta| for which the x-Fourier coefficients can be nonzero;
  /// nullopt for sampled tables (limited only by their grid).
  std::optional<int> x_bandwidth() const;

  /// a(x, xi) at an arbitrary torus point. Throws for sampled tables.
  Complex operator()(TorusPoint x, LatticePoint xi) const;
  /// a(x_i, xi) at grid point i of an M-point grid (x-lexicographic).
  Complex sample(std::size_t grid_index, int grid_size, LatticePoint xi) const;

  /// Quadrature grid size used for symbol Fourier coefficients over `lattice`:
  /// the table's own grid for sampled symbols, otherwise the smallest size
  /// that resolves every difference eta - xi of the lattice without aliasing.
  int preferred_grid_size(const FrequencyLattice& lattice) const;

  Symbol operator+(const Symbol& other) const;
  Symbol operator*(Complex factor) const;

  const detail::SymbolNode& node() const { return *node_; }

 private:
  Symbol(int dim, std::shared_ptr<const detail::SymbolNode> node, std::string name, double order);

  friend Symbol difference_op(const Symbol&, MultiIndex, MarginPolicy);
  friend Symbol x_derivative(const Symbol&, MultiIndex);
  friend Symbol materialize(const Symbol&, int, const FrequencyLattice&);

  int dim_;
  std::shared_ptr<const detail::SymbolNode> node_;
  std::string name_;
  double order_;
  double rho_ = 1.0;
  double delta_ = 0.0;
};

/// Forward difference Delta_xi^alpha, (Delta_j a)(x, xi) = a(x, xi + e_j) - a(x, xi),
/// composed per coordinate.
Symbol difference_op(const Symbol& a, MultiIndex alpha, MarginPolicy policy = MarginPolicy::shrink);

/// d_x^beta a. Exact for catalog entries, spectral for sampled tables and
/// closed-form functions.
Symbol x_derivative(const Symbol& a, MultiIndex beta);

/// Samples `a` on grid x lattice into a table.
Symbol materialize(const Symbol& a, int grid_size, const FrequencyLattice& lattice);

/// a^(eta, xi) = int_T^n exp(-i 2 pi <x, eta>) a(x, xi) dx by the rectangle
/// rule on `grid_size` points (0 selects the preferred size).
Complex symbol_fourier(const Symbol& a, LatticePoint eta, LatticePoint xi, int grid_size = 0);

struct OrderEstimate {
  double m_hat;      ///< fitted slope; -inf when every sample vanishes
  double c_hat;      ///< exp(intercept) of the log-log fit
  int shells_used;
  bool all_zero;
};

/// Least-squares fit of log sup_x |Delta^alpha d_x^beta a(x, xi)| against
/// log <xi>, one point per max-norm shell with <xi> >= 2.
OrderEstimate estimate_order(const Symbol& a, MultiIndex alpha, MultiIndex beta,
                             const FrequencyLattice& lattice);

struct DecayLemmaResult {
  double c_est;
  LatticePoint eta_at_sup;
  LatticePoint xi_at_sup;
  /// True for sampled symbols: their x-smoothness cannot be checked, only
  /// the boundedness of the conclusion.
  bool conclusion_only;
};

/// sup over eta, xi in lattice of |a^(eta, xi)| <eta>^{2k} <xi>^{-(m + 2k delta)}.
DecayLemmaResult verify_decay_lemma(const Symbol& a, int k, double m, double delta,
                                    const FrequencyLattice& lattice);

}  // namespace nuctrace
