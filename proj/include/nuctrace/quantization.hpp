#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "nuctrace/fourier.hpp"
#include "nuctrace/symbol.hpp"

namespace nuctrace {

/// A[eta, xi] = a^(eta - xi, xi) over the lattice, i.e. the compression
/// P_N T_a P_N in the character basis.
struct OperatorMatrix {
  FrequencyLattice lattice;
  Eigen::MatrixXcd entries;
};

struct ApplyResult {
  PeriodicFunction output;
  /// l^2 norm of the input's coefficients between the lattice and the grid's
  /// resolvable band, i.e. what the truncation dropped.
  double truncated_l2;
};

/// (T_a f)(x_i) = sum_xi exp(i 2 pi <x_i, xi>) a(x_i, xi) f^(xi).
ApplyResult apply(const Symbol& a, const PeriodicFunction& f, const FrequencyLattice& lattice);

OperatorMatrix operator_matrix(const Symbol& a, const FrequencyLattice& lattice);

/// Sum of the diagonal in lattice order, compensated.
Complex matrix_trace(const OperatorMatrix& A);

inline constexpr std::size_t kMaxEigenSide = 4096;

struct EigenOptions {
  bool compute_vectors = false;
  int max_iterations_per_eigenvalue = 100;
};

struct EigenResult {
  /// Canonical order: descending |lambda|, ties by argument.
  std::vector<Complex> values;
  /// ||A v - lambda v|| per returned pair; empty unless vectors were requested.
  std::vector<double> residuals;
  double matrix_norm = 0.0;  ///< Frobenius norm of A
  double max_residual = 0.0;
};

/// All eigenvalues of a dense complex matrix: diagonal balancing, Hessenberg
/// reduction, shifted QR. Throws NumericalFailure on non-convergence.
EigenResult eigenvalues(const Eigen::MatrixXcd& A, const EigenOptions& options = {});
inline EigenResult eigenvalues(const OperatorMatrix& A, const EigenOptions& options = {}) {
  return eigenvalues(A.entries, options);
}

/// Sorts in place into the canonical order.
void canonical_sort(std::vector<Complex>& values);

/// CSV rows eta_index,xi_index,re,im for every entry.
std::string matrix_csv(const OperatorMatrix& A);

}  // namespace nuctrace
