#include "nuctrace/report.hpp"

#include <cmath>
#include <cstdio>

namespace nuctrace {

namespace {

void dump_value(const Json& v, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dump_value(it.value(), out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // arrays of scalars stay on one line
      bool flat = true;
      for (const auto& e : v) flat = flat && !e.is_structured();
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          dump_value(v[i], out, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump_value(v[i], out, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out += buf;
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

std::string dump_json(const Json& value) {
  std::string out;
  dump_value(value, out, 0);
  out += "\n";
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json complex_list_json(const std::vector<Complex>& values) {
  Json arr = Json::array();
  for (const auto& z : values) arr.push_back(complex_json(z));
  return arr;
}

void Report::warn(const std::string& message) {
  if (!diagnostics.contains("warnings")) diagnostics["warnings"] = Json::array();
  diagnostics["warnings"].push_back(message);
}

Json Report::to_json() const {
  Json j = Json::object();
  j["header"] = header;
  j["body"] = body;
  Json diag = diagnostics;
  if (!diag.contains("warnings")) diag["warnings"] = Json::array();
  j["diagnostics"] = diag;
  return j;
}

Report make_report(const std::string& command, BlockWeight weight, const std::optional<std::string>& timestamp) {
  Report r;
  r.header["tool"] = kToolName;
  r.header["version"] = kToolVersion;
  r.header["schema_version"] = kSchemaVersion;
  r.header["command"] = command;
  r.header["conventions"] = {
      {"fourier", "f^(xi) = int exp(-i 2 pi <x, xi>) f(x) dx on the period-1 torus"},
      {"lattice", "max-norm ball |xi|_inf <= N, lexicographic, first coordinate slowest"},
      {"grid", "x_i = i/M, rectangle rule"},
      {"casimir", "torus lambda = |xi|^2; SU(2) lambda = l(l+1); <xi> = (1 + lambda)^(1/2)"},
      {"eigenvalue_order", "descending |lambda|, ties by argument"}};
  r.header["block_weight"] = to_string(weight);
  r.header["timestamp"] = timestamp ? Json(*timestamp) : Json(nullptr);
  return r;
}

namespace {

std::vector<Complex> read_values(const Json& j, std::size_t expected, const std::string& what) {
  if (!j.contains("values") || !j["values"].is_array())
    throw InvalidArgument(what + ": missing \"values\" array; expected [[re, im], ...]");
  const Json& arr = j["values"];
  if (arr.size() != expected)
    throw InvalidArgument(what + ": expected " + std::to_string(expected) + " values, got " +
                          std::to_string(arr.size()));
  std::vector<Complex> out;
  out.reserve(expected);
  for (const auto& e : arr) {
    if (e.is_number()) {
      out.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      out.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      throw InvalidArgument(what + ": each value must be [re, im] or a real number");
    }
  }
  return out;
}

int read_int(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw InvalidArgument(what + ": missing integer field \"" + std::string(key) + "\"");
  return j[key].get<int>();
}

Json parse_file(const std::string& path, const std::string& what) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw InvalidArgument(what + ": cannot open '" + path + "'; check the path");
  std::string text;
  char buf[65536];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, fp)) > 0) text.append(buf, n);
  std::fclose(fp);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(what + ": '" + path + "' is not valid JSON (" + e.what() + ")");
  }
}

}  // namespace

PeriodicFunction periodic_function_from_json(const Json& j) {
  const std::string what = "periodic function";
  if (!j.is_object()) throw InvalidArgument(what + ": top level must be an object");
  const int dim = read_int(j, "dim", what);
  const int m = read_int(j, "grid_size", what);
  if ((dim != 1 && dim != 2) || m < 1) throw InvalidArgument(what + ": dim must be 1 or 2 and grid_size >= 1");
  const std::size_t expected = dim == 1 ? m : static_cast<std::size_t>(m) * m;
  return PeriodicFunction(dim, m, read_values(j, expected, what));
}

Json periodic_function_to_json(const PeriodicFunction& f) {
  Json j = Json::object();
  j["dim"] = f.dim();
  j["grid_size"] = f.grid_size();
  j["values"] = complex_list_json(f.values());
  return j;
}

PeriodicFunction read_periodic_function(const std::string& path) {
  return periodic_function_from_json(parse_file(path, "periodic function"));
}

Symbol sampled_symbol_from_json(const Json& j) {
  const std::string what = "sampled symbol";
  if (!j.is_object()) throw InvalidArgument(what + ": top level must be an object");
  const int dim = read_int(j, "dim", what);
  const int m = read_int(j, "grid_size", what);
  const int radius = read_int(j, "lattice_radius", what);
  if ((dim != 1 && dim != 2) || m < 1 || radius < 0)
    throw InvalidArgument(what + ": dim must be 1 or 2, grid_size >= 1, lattice_radius >= 0");
  const FrequencyLattice lattice(dim, radius);
  const std::size_t n_x = dim == 1 ? m : static_cast<std::size_t>(m) * m;
  return Symbol::sampled(dim, m, lattice, read_values(j, n_x * lattice.size(), what));
}

Json sampled_symbol_to_json(const Symbol& a) {
  const auto domain = a.sampled_domain();
  require(domain.has_value(), "only sampled symbols can be exported as tables");
  const int m = domain->grid_size;
  const std::size_t n_x = a.dim() == 1 ? m : static_cast<std::size_t>(m) * m;
  std::vector<Complex> values;
  values.reserve(n_x * domain->lattice.size());
  for (std::size_t i = 0; i < n_x; ++i)
    for (std::size_t k = 0; k < domain->lattice.size(); ++k) values.push_back(a.sample(i, m, domain->lattice.point(k)));
  Json j = Json::object();
  j["dim"] = a.dim();
  j["grid_size"] = m;
  j["lattice_radius"] = domain->lattice.radius();
  j["values"] = complex_list_json(values);
  return j;
}

Symbol read_sampled_symbol(const std::string& path) { return sampled_symbol_from_json(parse_file(path, "sampled symbol")); }

}  // namespace nuctrace
