#include "nuctrace/besov.hpp"

#include <algorithm>
#include <map>

#include "nuctrace/summation.hpp"

namespace nuctrace {

void BesovParams::validate() const {
  require(std::isfinite(w), "Besov weight w must be finite");
  require(p >= 1.0, "Besov p must lie in [1, inf] (got " + std::to_string(p) + ")");
  require(q >= 1.0, "Besov q must lie in [1, inf] (got " + std::to_string(q) + ")");
}

std::string to_string(BlockWeight weight) { return weight == BlockWeight::abs ? "abs" : "bracket"; }

BlockWeight parse_block_weight(const std::string& name) {
  if (name == "abs") return BlockWeight::abs;
  if (name == "bracket") return BlockWeight::bracket;
  throw InvalidArgument("block weight must be 'abs' or 'bracket' (got '" + name + "')");
}

int block_index(LatticePoint xi, BlockWeight weight) {
  // largest m with 4^m <= size^2, exact in integers
  long long s = squared_norm(xi) + (weight == BlockWeight::bracket ? 1 : 0);
  if (s == 0) return 0;
  int m = 0;
  while (s >= 4) {
    s /= 4;
    ++m;
  }
  return m;
}

namespace {

std::map<int, std::vector<std::size_t>> group_blocks(const FourierCoefficients& c, BlockWeight weight) {
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t j = 0; j < c.lattice.size(); ++j) groups[block_index(c.lattice.point(j), weight)].push_back(j);
  return groups;
}

PeriodicFunction synthesize(const FourierCoefficients& c, const std::vector<std::size_t>& members, int grid_size) {
  FourierCoefficients part(c.lattice);
  for (std::size_t j : members) part.coeffs[j] = c.coeffs[j];
  return inverse_transform(part, grid_size);
}

// Accepts any q > 0; the public entry points restrict to the Banach range.
double besov_norm_unchecked(const FourierCoefficients& c, int grid_size, double w, double p, double q,
                            BlockWeight weight) {
  const auto rows = besov_block_norms(c, grid_size, w, p, weight);
  if (std::isinf(q)) {
    double best = 0.0;
    for (const auto& row : rows) best = std::max(best, row.second);
    return best;
  }
  CompensatedSum acc;
  for (const auto& row : rows) acc.add(std::pow(row.second, q));
  return std::pow(acc.value(), 1.0 / q);
}

}  // namespace

std::vector<std::pair<DyadicBlock, PeriodicFunction>> dyadic_blocks(const FourierCoefficients& c, int grid_size,
                                                                    BlockWeight weight) {
  std::vector<std::pair<DyadicBlock, PeriodicFunction>> out;
  for (const auto& [m, members] : group_blocks(c, weight)) {
    DyadicBlock block{m, {}};
    for (std::size_t j : members) block.frequencies.push_back(c.lattice.point(j));
    out.emplace_back(std::move(block), synthesize(c, members, grid_size));
  }
  return out;
}

std::vector<std::pair<int, double>> besov_block_norms(const FourierCoefficients& c, int grid_size, double w, double p,
                                                      BlockWeight weight) {
  std::vector<std::pair<int, double>> rows;
  for (const auto& [m, members] : group_blocks(c, weight)) {
    bool any = false;
    for (std::size_t j : members) any = any || c.coeffs[j] != Complex{};
    const double norm = any ? lp_norm(synthesize(c, members, grid_size), p) : 0.0;
    rows.emplace_back(m, std::pow(2.0, m * w) * norm);
  }
  return rows;
}

double besov_norm(const FourierCoefficients& c, int grid_size, const BesovParams& params, BlockWeight weight) {
  params.validate();
  return besov_norm_unchecked(c, grid_size, params.w, params.p, params.q, weight);
}

double besov_norm(const PeriodicFunction& f, const BesovParams& params, const FrequencyLattice& lattice,
                  BlockWeight weight) {
  params.validate();
  return besov_norm(forward_transform(f, lattice), f.grid_size(), params, weight);
}

double holder_norm(const PeriodicFunction& f, double w) {
  require(f.dim() == 1, "holder_norm is defined for dim = 1 only");
  require(w > 0.0 && w < 1.0, "Hölder exponent must lie in (0,1) (got " + std::to_string(w) + ")");
  const int m = f.grid_size();
  require(m >= 64, "holder_norm needs grid_size >= 64");
  double quotient = 0.0;
  double sup = 0.0;
  for (int i = 0; i < m; ++i) {
    sup = std::max(sup, std::abs(f[i]));
    for (int j = 1; j < m; ++j) {
      const double h = static_cast<double>(std::min(j, m - j)) / m;
      quotient = std::max(quotient, std::abs(f[(i + j) % m] - f[i]) / std::pow(h, w));
    }
  }
  return quotient + sup;
}

EmbeddingRatio fourier_embedding_ratio(const PeriodicFunction& f, double p1, double alpha,
                                       const FrequencyLattice& lattice, BlockWeight weight) {
  require(p1 > 1.0 && p1 <= 2.0, "fourier_embedding_ratio needs 1 < p1 <= 2");
  require(alpha > 0.0, "fourier_embedding_ratio needs alpha > 0");
  const double p1_conj = p1 / (p1 - 1.0);
  const double beta = 1.0 / (alpha + 1.0 / p1_conj);
  const FourierCoefficients c = forward_transform(f, lattice);
  const double top = sequence_norm(c.coeffs, beta);
  // beta may drop below 1: the quasi-norm range is needed here
  const double bottom = besov_norm_unchecked(c, f.grid_size(), alpha * f.dim(), p1, beta, weight);
  if (bottom == 0.0) throw InvalidArgument("fourier_embedding_ratio: f has zero Besov norm");
  return {top / bottom, beta, top, bottom};
}

}  // namespace nuctrace
