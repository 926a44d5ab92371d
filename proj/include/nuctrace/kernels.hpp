#pragma once

#include <Eigen/Dense>

#include "nuctrace/fourier.hpp"
#include "nuctrace/symbol.hpp"

// Data-parallel inner loops. Every kernel exists twice: `serial` is the
// reference implementation and `parallel` distributes independent outputs
// over OpenMP threads. Each output entry is reduced by the same serial
// compensated loop in both, so results are bit-identical.
namespace nuctrace::kernels {

namespace serial {

std::vector<Complex> forward_dft(const PeriodicFunction& f, const FrequencyLattice& lattice);
std::vector<Complex> inverse_dft(const FourierCoefficients& c, int grid_size);

/// Column j holds a^(eta, xi_j) for eta in the max-norm ball of radius
/// `eta_radius` (lattice order), xi_j the j-th point of `xi_lattice`.
Eigen::MatrixXcd symbol_columns(const Symbol& a, const FrequencyLattice& xi_lattice, int eta_radius,
                                int grid_size);

/// (T_a f)(x_i) = sum_xi exp(i 2 pi <x_i, xi>) a(x_i, xi) c[xi].
std::vector<Complex> apply_symbol(const Symbol& a, const FourierCoefficients& c, int grid_size);

}  // namespace serial

namespace parallel {

std::vector<Complex> forward_dft(const PeriodicFunction& f, const FrequencyLattice& lattice);
std::vector<Complex> inverse_dft(const FourierCoefficients& c, int grid_size);
Eigen::MatrixXcd symbol_columns(const Symbol& a, const FrequencyLattice& xi_lattice, int eta_radius,
                                int grid_size);
std::vector<Complex> apply_symbol(const Symbol& a, const FourierCoefficients& c, int grid_size);

}  // namespace parallel

}  // namespace nuctrace::kernels
