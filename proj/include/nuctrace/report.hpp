#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nuctrace/besov.hpp"
#include "nuctrace/fourier.hpp"
#include "nuctrace/symbol.hpp"

namespace nuctrace {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "nuctrace";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

/// Deterministic serialization: insertion-ordered keys, doubles as %.17g,
/// non-finite doubles as null, two-space indent, LF line endings.
std::string dump_json(const Json& value);

/// %.17g, or "inf"/"-inf"/"nan" for CSV cells.
std::string format_double(double v);

Json complex_json(Complex z);
Json complex_list_json(const std::vector<Complex>& values);

/// header / body / diagnostics, always all three.
struct Report {
  Json header = Json::object();
  Json body = Json::object();
  Json diagnostics = Json::object();

  void warn(const std::string& message);
  Json to_json() const;
};

Report make_report(const std::string& command, BlockWeight weight, const std::optional<std::string>& timestamp);

/// PeriodicFunction file: {"dim", "grid_size", "values": [[re, im], ...]}.
PeriodicFunction periodic_function_from_json(const Json& j);
Json periodic_function_to_json(const PeriodicFunction& f);
PeriodicFunction read_periodic_function(const std::string& path);

/// Sampled-symbol file: {"dim", "grid_size", "lattice_radius", "values"}, x-major, lattice-minor.
Symbol sampled_symbol_from_json(const Json& j);
Json sampled_symbol_to_json(const Symbol& a);
Symbol read_sampled_symbol(const std::string& path);

}  // namespace nuctrace
