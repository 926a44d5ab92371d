#pragma once

// Shared bodies of the serial and OpenMP kernels. `Parallel` only decides
// whether the outer loop over independent outputs is distributed; the
// per-entry reductions are identical.

#include <exception>
#include <mutex>

#include "nuctrace/kernels.hpp"
#include "nuctrace/summation.hpp"

namespace nuctrace::kernels::impl {

inline std::size_t phase_index(long long a, int m) {
  const long long r = a % m;
  return static_cast<std::size_t>(r < 0 ? r + m : r);
}

template <bool Parallel, class Fn>
void for_each_index(std::ptrdiff_t n, Fn&& fn) {
  if constexpr (Parallel) {
    std::exception_ptr error;
    std::mutex guard;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(guard);
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
  }
}

// sum_{i<M} roots[(i k) mod M] data[i * stride]
inline Complex dft_entry(const Complex* data, std::size_t stride, int m, int k,
                         const std::vector<Complex>& roots) {
  CompensatedComplexSum acc;
  for (int i = 0; i < m; ++i) acc.add(roots[phase_index(static_cast<long long>(i) * k, m)] * data[i * stride]);
  return acc.value();
}

// Forward transform of M^dim samples onto the max-norm ball of `radius`,
// without normalization. Rows first, then columns.
template <bool Parallel>
void forward_samples(const Complex* samples, int dim, int m, int radius, const std::vector<Complex>& roots,
                     Complex* out) {
  const int side = 2 * radius + 1;
  if (dim == 1) {
    for_each_index<Parallel>(side, [&](std::ptrdiff_t j) {
      out[j] = dft_entry(samples, 1, m, static_cast<int>(j) - radius, roots);
    });
    return;
  }
  std::vector<Complex> rows(static_cast<std::size_t>(m) * side);
  for_each_index<Parallel>(m, [&](std::ptrdiff_t i0) {
    for (int j1 = 0; j1 < side; ++j1)
      rows[i0 * side + j1] = dft_entry(samples + i0 * m, 1, m, j1 - radius, roots);
  });
  for_each_index<Parallel>(static_cast<std::ptrdiff_t>(side) * side, [&](std::ptrdiff_t idx) {
    const int j0 = static_cast<int>(idx / side);
    const int j1 = static_cast<int>(idx % side);
    out[idx] = dft_entry(rows.data() + j1, side, m, j0 - radius, roots);
  });
}

template <bool Parallel>
std::vector<Complex> forward_dft(const PeriodicFunction& f, const FrequencyLattice& lattice) {
  const int m = f.grid_size();
  const auto roots = unit_roots(m, -1);
  std::vector<Complex> out(lattice.size());
  forward_samples<Parallel>(f.values().data(), f.dim(), m, lattice.radius(), roots, out.data());
  const double scale = f.dim() == 1 ? 1.0 / m : 1.0 / (static_cast<double>(m) * m);
  for (auto& c : out) c *= scale;
  return out;
}

template <bool Parallel>
std::vector<Complex> inverse_dft(const FourierCoefficients& c, int m) {
  const int dim = c.lattice.dim();
  const int radius = c.lattice.radius();
  const int side = c.lattice.side();
  const auto roots = unit_roots(m, +1);
  auto synth = [&](const Complex* data, std::size_t stride, int i) {
    CompensatedComplexSum acc;
    for (int j = 0; j < side; ++j)
      acc.add(roots[phase_index(static_cast<long long>(i) * (j - radius), m)] * data[j * stride]);
    return acc.value();
  };
  if (dim == 1) {
    std::vector<Complex> out(m);
    for_each_index<Parallel>(m, [&](std::ptrdiff_t i) { out[i] = synth(c.coeffs.data(), 1, static_cast<int>(i)); });
    return out;
  }
  // g[j0][i1] = sum_{xi1} w^{i1 xi1} c[j0, xi1]
  std::vector<Complex> partial(static_cast<std::size_t>(side) * m);
  for_each_index<Parallel>(side, [&](std::ptrdiff_t j0) {
    for (int i1 = 0; i1 < m; ++i1) partial[j0 * m + i1] = synth(c.coeffs.data() + j0 * side, 1, i1);
  });
  std::vector<Complex> out(static_cast<std::size_t>(m) * m);
  for_each_index<Parallel>(static_cast<std::ptrdiff_t>(m) * m, [&](std::ptrdiff_t idx) {
    const int i0 = static_cast<int>(idx / m);
    const int i1 = static_cast<int>(idx % m);
    out[idx] = synth(partial.data() + i1, m, i0);
  });
  return out;
}

template <bool Parallel>
Eigen::MatrixXcd symbol_columns(const Symbol& a, const FrequencyLattice& xi_lattice, int eta_radius, int m) {
  const int dim = xi_lattice.dim();
  const FrequencyLattice eta_lattice(dim, eta_radius);
  const auto roots = unit_roots(m, -1);
  const std::size_t n_samples = dim == 1 ? m : static_cast<std::size_t>(m) * m;
  const double scale = 1.0 / static_cast<double>(n_samples);
  Eigen::MatrixXcd out(eta_lattice.size(), xi_lattice.size());
  for_each_index<Parallel>(static_cast<std::ptrdiff_t>(xi_lattice.size()), [&](std::ptrdiff_t j) {
    const LatticePoint xi = xi_lattice.point(j);
    std::vector<Complex> samples(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) samples[i] = a.sample(i, m, xi);
    std::vector<Complex> column(eta_lattice.size());
    forward_samples<false>(samples.data(), dim, m, eta_radius, roots, column.data());
    for (std::size_t r = 0; r < column.size(); ++r) out(r, j) = column[r] * scale;
  });
  return out;
}

template <bool Parallel>
std::vector<Complex> apply_symbol(const Symbol& a, const FourierCoefficients& c, int m) {
  const FrequencyLattice& lattice = c.lattice;
  const int dim = lattice.dim();
  const auto roots = unit_roots(m, +1);
  const std::size_t n_samples = dim == 1 ? m : static_cast<std::size_t>(m) * m;
  std::vector<Complex> out(n_samples);
  for_each_index<Parallel>(static_cast<std::ptrdiff_t>(n_samples), [&](std::ptrdiff_t i) {
    const long long i0 = dim == 1 ? i : i / m;
    const long long i1 = dim == 1 ? 0 : i % m;
    CompensatedComplexSum acc;
    for (std::size_t j = 0; j < lattice.size(); ++j) {
      const LatticePoint xi = lattice.point(j);
      if (c.coeffs[j] == Complex{}) continue;
      const Complex w = roots[phase_index(i0 * xi[0] + i1 * xi[1], m)];
      acc.add(w * a.sample(static_cast<std::size_t>(i), m, xi) * c.coeffs[j]);
    }
    out[i] = acc.value();
  });
  return out;
}

}  // namespace nuctrace::kernels::impl
