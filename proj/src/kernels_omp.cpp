#include "kernel_impl.hpp"

namespace nuctrace::kernels::parallel {

std::vector<Complex> forward_dft(const PeriodicFunction& f, const FrequencyLattice& lattice) {
  return impl::forward_dft<true>(f, lattice);
}

std::vector<Complex> inverse_dft(const FourierCoefficients& c, int grid_size) {
  return impl::inverse_dft<true>(c, grid_size);
}

Eigen::MatrixXcd symbol_columns(const Symbol& a, const FrequencyLattice& xi_lattice, int eta_radius,
                                int grid_size) {
  return impl::symbol_columns<true>(a, xi_lattice, eta_radius, grid_size);
}

std::vector<Complex> apply_symbol(const Symbol& a, const FourierCoefficients& c, int grid_size) {
  return impl::apply_symbol<true>(a, c, grid_size);
}

}  // namespace nuctrace::kernels::parallel
