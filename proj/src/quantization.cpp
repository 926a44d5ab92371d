#include "nuctrace/quantization.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "nuctrace/kernels.hpp"
#include "nuctrace/summation.hpp"

namespace nuctrace {

ApplyResult apply(const Symbol& a, const PeriodicFunction& f, const FrequencyLattice& lattice) {
  require(a.dim() == f.dim() && f.dim() == lattice.dim(), "apply: symbol, function and lattice dimensions differ");
  const FourierCoefficients c = forward_transform(f, lattice);
  const double total = lp_norm(f, 2.0);
  const double kept = sequence_norm(c.coeffs, 2.0);
  const double dropped = std::sqrt(std::max(0.0, total * total - kept * kept));
  PeriodicFunction out(f.dim(), f.grid_size(), kernels::parallel::apply_symbol(a, c, f.grid_size()));
  return {std::move(out), dropped};
}

OperatorMatrix operator_matrix(const Symbol& a, const FrequencyLattice& lattice) {
  require(a.dim() == lattice.dim(), "operator_matrix: symbol and lattice dimensions differ");
  const int m = a.preferred_grid_size(lattice);
  const int n = lattice.radius();
  // differences eta - xi beyond (M-1)/2 are not resolved by the grid and read as zero
  const int reach = std::min(2 * n, (m - 1) / 2);
  const FrequencyLattice diffs(lattice.dim(), reach);
  const Eigen::MatrixXcd columns = kernels::parallel::symbol_columns(a, lattice, reach, m);
  const auto side = static_cast<Eigen::Index>(lattice.size());
  Eigen::MatrixXcd entries = Eigen::MatrixXcd::Zero(side, side);
  for (Eigen::Index j = 0; j < side; ++j) {
    const LatticePoint xi = lattice.point(j);
    for (Eigen::Index r = 0; r < side; ++r) {
      const LatticePoint d = lattice.point(r) - xi;
      if (diffs.contains(d)) entries(r, j) = columns(static_cast<Eigen::Index>(diffs.index_of(d)), j);
    }
  }
  return {lattice, std::move(entries)};
}

Complex matrix_trace(const OperatorMatrix& A) {
  CompensatedComplexSum s;
  for (Eigen::Index i = 0; i < A.entries.rows(); ++i) s.add(A.entries(i, i));
  return s.value();
}

void canonical_sort(std::vector<Complex>& values) {
  double scale = 1.0;
  for (const auto& v : values) scale = std::max(scale, std::abs(v));
  // magnitudes equal to ~12 digits count as ties and fall back to the argument
  auto key = [scale](Complex v) { return std::llround(std::abs(v) / scale * 1e12); };
  std::stable_sort(values.begin(), values.end(), [&](Complex x, Complex y) {
    const auto kx = key(x);
    const auto ky = key(y);
    if (kx != ky) return kx > ky;
    const double ax = std::arg(x);
    const double ay = std::arg(y);
    if (ax != ay) return ax < ay;
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
}

namespace {

// Diagonal scaling by powers of two so that row and column norms are
// comparable (the classic balancing sweep without permutations).
Eigen::VectorXd balance(Eigen::MatrixXcd& A) {
  const Eigen::Index n = A.rows();
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  constexpr double radix = 2.0;
  bool converged = false;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(A(j, i));
        r += std::abs(A(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        d(i) *= f;
        A.row(i) /= f;
        A.col(i) *= f;
      }
    }
  }
  return d;
}

}  // namespace

EigenResult eigenvalues(const Eigen::MatrixXcd& A, const EigenOptions& options) {
  require(A.rows() == A.cols(), "eigenvalues: matrix must be square");
  const auto side = static_cast<std::size_t>(A.rows());
  require(side <= kMaxEigenSide, "eigenvalues: side " + std::to_string(side) + " exceeds the guard of " +
                                     std::to_string(kMaxEigenSide));
  require(A.allFinite(), "eigenvalues: matrix has non-finite entries");
  EigenResult result;
  result.matrix_norm = A.norm();
  if (side == 0) return result;

  Eigen::MatrixXcd balanced = A;
  const Eigen::VectorXd d = balance(balanced);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
  solver.setMaxIterations(static_cast<Eigen::Index>(options.max_iterations_per_eigenvalue) * A.rows());
  solver.compute(balanced, options.compute_vectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigenvalues: shifted QR did not converge within " +
                           std::to_string(options.max_iterations_per_eigenvalue * A.rows()) +
                           " iterations on the full " + std::to_string(side) + "x" + std::to_string(side) + " block");
  }

  std::vector<Complex> values(solver.eigenvalues().data(), solver.eigenvalues().data() + side);
  if (!options.compute_vectors) {
    canonical_sort(values);
    result.values = std::move(values);
    return result;
  }

  std::vector<std::size_t> order(side);
  for (std::size_t i = 0; i < side; ++i) order[i] = i;
  std::vector<Complex> sorted = values;
  canonical_sort(sorted);
  // map sorted values back to their solver index (first unused exact match)
  std::vector<bool> used(side, false);
  for (std::size_t k = 0; k < side; ++k) {
    for (std::size_t i = 0; i < side; ++i) {
      if (!used[i] && values[i] == sorted[k]) {
        used[i] = true;
        order[k] = i;
        break;
      }
    }
  }
  for (std::size_t k = 0; k < side; ++k) {
    Eigen::VectorXcd v = d.asDiagonal() * solver.eigenvectors().col(static_cast<Eigen::Index>(order[k]));
    v.normalize();
    const double res = (A * v - sorted[k] * v).norm();
    result.residuals.push_back(res);
    result.max_residual = std::max(result.max_residual, res);
  }
  result.values = std::move(sorted);
  return result;
}

std::string matrix_csv(const OperatorMatrix& A) {
  std::string out = "eta_index,xi_index,re,im\n";
  char buf[128];
  for (Eigen::Index r = 0; r < A.entries.rows(); ++r) {
    for (Eigen::Index c = 0; c < A.entries.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g,%.17g\n", static_cast<long>(r), static_cast<long>(c),
                    A.entries(r, c).real(), A.entries(r, c).imag());
      out += buf;
    }
  }
  return out;
}

}  // namespace nuctrace
