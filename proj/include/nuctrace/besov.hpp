#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nuctrace/fourier.hpp"

namespace nuctrace {

/// Besov parameters in the Banach range: p, q in [1, inf].
struct BesovParams {
  double w = 0.0;
  double p = 2.0;
  double q = 2.0;

  void validate() const;
};

/// Which size measures a frequency when assigning dyadic blocks:
/// |xi| (Euclidean) or <xi>.
enum class BlockWeight { abs, bracket };

std::string to_string(BlockWeight weight);
BlockWeight parse_block_weight(const std::string& name);

/// Block m holds 2^m <= size(xi) < 2^{m+1}; under `abs` the origin joins block 0.
struct DyadicBlock {
  int index;
  std::vector<LatticePoint> frequencies;
};

int block_index(LatticePoint xi, BlockWeight weight = BlockWeight::abs);

/// Nonempty blocks of the coefficient set with their partial inverse
/// transforms on a `grid_size`-point grid, ascending in m.
std::vector<std::pair<DyadicBlock, PeriodicFunction>> dyadic_blocks(const FourierCoefficients& c, int grid_size,
                                                                    BlockWeight weight = BlockWeight::abs);

/// (sum_m 2^{m w q} ||block_m||_{L^p}^q)^{1/q}, sup over m for q = inf.
double besov_norm(const PeriodicFunction& f, const BesovParams& params, const FrequencyLattice& lattice,
                  BlockWeight weight = BlockWeight::abs);

/// Same norm starting from coefficients; blocks are synthesized on `grid_size` points.
double besov_norm(const FourierCoefficients& c, int grid_size, const BesovParams& params,
                  BlockWeight weight = BlockWeight::abs);

/// Per-block table (m, 2^{m w} ||block_m||_{L^p}) for export.
std::vector<std::pair<int, double>> besov_block_norms(const FourierCoefficients& c, int grid_size, double w, double p,
                                                      BlockWeight weight = BlockWeight::abs);

/// Grid Hölder norm sup |f(x+h) - f(x)| |h|^{-w} + sup |f| over grid pairs,
/// h the torus distance. A lower bound for the continuous norm.
double holder_norm(const PeriodicFunction& f, double w);

struct EmbeddingRatio {
  double ratio;
  double beta;           ///< (alpha + 1/p1')^{-1}
  double fourier_norm;   ///< ||f^||_{l^beta}
  double besov_norm;     ///< ||f||_{B^{alpha n}_{p1, beta}}
};

/// ||f^||_{l^beta} / ||f||_{B^{alpha n}_{p1, beta}} on the given lattice.
EmbeddingRatio fourier_embedding_ratio(const PeriodicFunction& f, double p1, double alpha,
                                       const FrequencyLattice& lattice, BlockWeight weight = BlockWeight::abs);

}  // namespace nuctrace
