#include "kernel_impl.hpp"

namespace nuctrace::kernels::serial {

std::vector<Complex> forward_dft(const PeriodicFunction& f, const FrequencyLattice& lattice) {
  return impl::forward_dft<false>(f, lattice);
}

std::vector<Complex> inverse_dft(const FourierCoefficients& c, int grid_size) {
  return impl::inverse_dft<false>(c, grid_size);
}

Eigen::MatrixXcd symbol_columns(const Symbol& a, const FrequencyLattice& xi_lattice, int eta_radius,
                                int grid_size) {
  return impl::symbol_columns<false>(a, xi_lattice, eta_radius, grid_size);
}

std::vector<Complex> apply_symbol(const Symbol& a, const FourierCoefficients& c, int grid_size) {
  return impl::apply_symbol<false>(a, c, grid_size);
}

}  // namespace nuctrace::kernels::serial
