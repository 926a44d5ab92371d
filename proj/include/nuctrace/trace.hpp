#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nuctrace/quantization.hpp"
#include "nuctrace/symbol.hpp"

namespace nuctrace {

/// sum_{xi in lattice} a^(0, xi). Depends on the symbol and the lattice only.
Complex nuclear_trace(const Symbol& a, const FrequencyLattice& lattice);

struct SpectralTrace {
  Complex trace;
  EigenResult eigen;
};

/// Eigenvalues of the compression and their sum (compensated, canonical order).
SpectralTrace spectral_trace(const Symbol& a, const FrequencyLattice& lattice, bool with_residuals = true);

struct TraceHistoryRow {
  int radius;
  Complex nuclear;
  std::optional<Complex> spectral;
  double abs_diff;          ///< |nuclear - spectral|, 0 when the spectrum was skipped
  double increment;         ///< |nuclear(N_i) - nuclear(N_{i-1})|, NaN on the first row
  double max_residual;
  double matrix_norm;
};

struct TraceReport {
  Complex nuclear_trace;
  std::optional<Complex> spectral_trace;
  std::vector<Complex> eigenvalues;
  int truncation_radius = 0;
  double tail_estimate = 0.0;   ///< +inf when no bound is available
  std::string tail_rule;
  std::vector<TraceHistoryRow> history;
  bool convergent = false;
  std::vector<std::string> notes;
};

/// Nuclear and spectral traces at each radius (increasing).
TraceReport lidskii_compare(const Symbol& a, const std::vector<int>& radii, bool with_spectrum = true);

/// Integral-test bound on sum_{|xi|_inf > N} sup_x |a(x, xi)| assuming the
/// envelope C <xi>^{order_hint}, C fitted over the outer half N/2 <= |xi|_inf <= N.
double tail_estimate(const Symbol& a, const FrequencyLattice& lattice, double order_hint);

}  // namespace nuctrace
