#include "nuctrace/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nuctrace/kernels.hpp"
#include "nuctrace/summation.hpp"

namespace nuctrace {
namespace detail {

class SymbolNode {
 public:
  virtual ~SymbolNode() = default;
  virtual Complex eval(TorusPoint x, LatticePoint xi) const = 0;
  virtual Complex sample(std::size_t grid_index, int grid_size, int dim, LatticePoint xi) const {
    const double h = 1.0 / grid_size;
    if (dim == 1) return eval({static_cast<double>(grid_index) * h, 0.0}, xi);
    return eval({static_cast<double>(grid_index / grid_size) * h, static_cast<double>(grid_index % grid_size) * h},
                xi);
  }
  virtual std::optional<int> x_bandwidth() const = 0;
  virtual std::optional<SampledDomain> domain() const { return std::nullopt; }
  virtual std::shared_ptr<const SymbolNode> derivative(MultiIndex beta) const = 0;
};

}  // namespace detail

namespace {

using detail::SymbolNode;
using NodePtr = std::shared_ptr<const SymbolNode>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double profile_value(Profile g, double param, LatticePoint xi) {
  switch (g) {
    case Profile::none:
      return 1.0;
    case Profile::bracket_power:
      return std::pow(japanese_bracket(xi), param);
    case Profile::gaussian:
      return std::exp(-param * static_cast<double>(squared_norm(xi)));
  }
  return 1.0;
}

enum class Family { bessel, heat, modulated, character_shift, constant };

// Closed-form family with an exact x-derivative order attached. All
// catalog x-dependence is through x_1, so any derivative in x_2 vanishes.
class CatalogNode final : public SymbolNode {
 public:
  CatalogNode(Family family, Profile g, double param, Complex c, MultiIndex beta = {0, 0})
      : family_(family), g_(g), param_(param), c_(c), beta_(beta) {}

  Complex eval(TorusPoint x, LatticePoint xi) const override {
    const Complex xf = x_factor(x[0]);
    if (xf == Complex{}) return {};
    return xf * xi_factor(xi);
  }

  std::optional<int> x_bandwidth() const override {
    return (family_ == Family::modulated || family_ == Family::character_shift) ? 1 : 0;
  }

  NodePtr derivative(MultiIndex beta) const override {
    return std::make_shared<CatalogNode>(family_, g_, param_, c_,
                                         MultiIndex{beta_[0] + beta[0], beta_[1] + beta[1]});
  }

 private:
  Complex x_factor(double x1) const {
    if (beta_[1] > 0) return {};
    const int k = beta_[0];
    switch (family_) {
      case Family::modulated:
        if (k == 0) return c_ + std::cos(kTwoPi * x1);
        return std::pow(kTwoPi, k) * std::cos(kTwoPi * x1 + k * std::numbers::pi / 2.0);
      case Family::character_shift:
        return std::pow(Complex{0.0, kTwoPi}, k) * std::exp(Complex{0.0, kTwoPi * x1});
      default:
        return k == 0 ? Complex{1.0} : Complex{};
    }
  }

  Complex xi_factor(LatticePoint xi) const {
    switch (family_) {
      case Family::bessel:
        return std::pow(japanese_bracket(xi), param_);
      case Family::heat:
        return std::exp(-param_ * static_cast<double>(squared_norm(xi)));
      case Family::constant:
        return c_;
      default:
        return profile_value(g_, param_, xi);
    }
  }

  Family family_;
  Profile g_;
  double param_;
  Complex c_;
  MultiIndex beta_;
};

// Closed form supplied by the caller. Derivatives come from the exact
// trigonometric interpolant of fn(., xi) on 2B+1 points per coordinate.
class FunctionNode final : public SymbolNode {
 public:
  using Fn = std::function<Complex(TorusPoint, LatticePoint)>;
  FunctionNode(int dim, Fn fn, int bandwidth, MultiIndex beta = {0, 0})
      : dim_(dim), fn_(std::move(fn)), bandwidth_(bandwidth), beta_(beta) {}

  Complex eval(TorusPoint x, LatticePoint xi) const override {
    if (beta_ == MultiIndex{0, 0}) return fn_(x, xi);
    if (bandwidth_ == 0 || (dim_ == 1 && beta_[1] > 0)) return {};
    const int q = 2 * bandwidth_ + 1;
    const int b = bandwidth_;
    const int n1 = dim_ == 1 ? 1 : q;
    const int b1 = dim_ == 1 ? 0 : b;
    // coefficients c[k0][k1] of fn(., xi), then sum c * (i2pi k)^beta e^{i2pi<k,x>}
    CompensatedComplexSum total;
    for (int k0 = -b; k0 <= b; ++k0) {
      for (int k1 = -b1; k1 <= b1; ++k1) {
        const Complex weight = std::pow(Complex{0.0, kTwoPi * k0}, beta_[0]) *
                               std::pow(Complex{0.0, kTwoPi * k1}, beta_[1]);
        if (weight == Complex{}) continue;
        CompensatedComplexSum coeff;
        for (int i0 = 0; i0 < q; ++i0) {
          for (int i1 = 0; i1 < n1; ++i1) {
            const TorusPoint y{static_cast<double>(i0) / q, dim_ == 1 ? 0.0 : static_cast<double>(i1) / q};
            const double angle = -kTwoPi * (y[0] * k0 + y[1] * k1);
            coeff.add(fn_(y, xi) * std::exp(Complex{0.0, angle}));
          }
        }
        const double norm = dim_ == 1 ? q : static_cast<double>(q) * q;
        const Complex ck = coeff.value() / norm;
        total.add(ck * weight * std::exp(Complex{0.0, kTwoPi * (x[0] * k0 + x[1] * k1)}));
      }
    }
    return total.value();
  }

  std::optional<int> x_bandwidth() const override { return bandwidth_; }

  NodePtr derivative(MultiIndex beta) const override {
    return std::make_shared<FunctionNode>(dim_, fn_, bandwidth_,
                                          MultiIndex{beta_[0] + beta[0], beta_[1] + beta[1]});
  }

 private:
  int dim_;
  Fn fn_;
  int bandwidth_;
  MultiIndex beta_;
};

class SampledNode final : public SymbolNode {
 public:
  SampledNode(int dim, SampledDomain domain, std::vector<Complex> values, bool zero_extend = false)
      : dim_(dim), domain_(domain), values_(std::move(values)), zero_extend_(zero_extend) {}

  Complex eval(TorusPoint, LatticePoint) const override {
    throw InvalidArgument("sampled symbols can only be evaluated on their own grid");
  }

  Complex sample(std::size_t grid_index, int grid_size, int, LatticePoint xi) const override {
    require(grid_size == domain_.grid_size, "sampled symbol lives on a " + std::to_string(domain_.grid_size) +
                                                "-point grid; requested " + std::to_string(grid_size));
    if (!domain_.lattice.contains(xi)) {
      require(zero_extend_, "lattice point outside the sampled symbol's lattice (radius " +
                                std::to_string(domain_.lattice.radius()) + ")");
      return {};
    }
    return values_[grid_index * domain_.lattice.size() + domain_.lattice.index_of(xi)];
  }

  std::optional<int> x_bandwidth() const override { return std::nullopt; }
  std::optional<SampledDomain> domain() const override { return domain_; }
  NodePtr derivative(MultiIndex beta) const override;

  const std::vector<Complex>& values() const { return values_; }
  int dim() const { return dim_; }

 private:
  int dim_;
  SampledDomain domain_;
  std::vector<Complex> values_;
  bool zero_extend_;
};

class LinearNode final : public SymbolNode {
 public:
  LinearNode(std::vector<std::pair<Complex, NodePtr>> terms) : terms_(std::move(terms)) {}

  Complex eval(TorusPoint x, LatticePoint xi) const override {
    Complex s{};
    for (const auto& [w, n] : terms_) s += w * n->eval(x, xi);
    return s;
  }
  Complex sample(std::size_t grid_index, int grid_size, int dim, LatticePoint xi) const override {
    Complex s{};
    for (const auto& [w, n] : terms_) s += w * n->sample(grid_index, grid_size, dim, xi);
    return s;
  }
  std::optional<int> x_bandwidth() const override {
    int b = 0;
    for (const auto& term : terms_) {
      auto nb = term.second->x_bandwidth();
      if (!nb) return std::nullopt;
      b = std::max(b, *nb);
    }
    return b;
  }
  std::optional<SampledDomain> domain() const override {
    for (const auto& term : terms_)
      if (auto d = term.second->domain()) return d;
    return std::nullopt;
  }
  NodePtr derivative(MultiIndex beta) const override {
    std::vector<std::pair<Complex, NodePtr>> out;
    for (const auto& [w, n] : terms_) out.emplace_back(w, n->derivative(beta));
    return std::make_shared<LinearNode>(std::move(out));
  }

 private:
  std::vector<std::pair<Complex, NodePtr>> terms_;
};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Delta^alpha a(x, xi) = sum_{gamma <= alpha} (-1)^{|alpha - gamma|} C(alpha, gamma) a(x, xi + gamma)
class DifferenceNode final : public SymbolNode {
 public:
  DifferenceNode(NodePtr child, MultiIndex alpha) : child_(std::move(child)), alpha_(alpha) {}

  Complex eval(TorusPoint x, LatticePoint xi) const override {
    return combine([&](LatticePoint p) { return child_->eval(x, p); }, xi);
  }
  Complex sample(std::size_t grid_index, int grid_size, int dim, LatticePoint xi) const override {
    return combine([&](LatticePoint p) { return child_->sample(grid_index, grid_size, dim, p); }, xi);
  }
  std::optional<int> x_bandwidth() const override { return child_->x_bandwidth(); }
  std::optional<SampledDomain> domain() const override { return child_->domain(); }
  NodePtr derivative(MultiIndex beta) const override {
    return std::make_shared<DifferenceNode>(child_->derivative(beta), alpha_);
  }

 private:
  template <class Eval>
  Complex combine(Eval&& eval, LatticePoint xi) const {
    Complex s{};
    for (int g0 = 0; g0 <= alpha_[0]; ++g0) {
      for (int g1 = 0; g1 <= alpha_[1]; ++g1) {
        const int sign = ((alpha_[0] - g0) + (alpha_[1] - g1)) % 2 == 0 ? 1 : -1;
        const double w = sign * binomial(alpha_[0], g0) * binomial(alpha_[1], g1);
        s += w * eval(LatticePoint{xi[0] + g0, xi[1] + g1});
      }
    }
    return s;
  }

  NodePtr child_;
  MultiIndex alpha_;
};

// Spectral derivative of an M-periodic sample vector along one axis.
// Frequencies k in (-M/2, M/2]; the Nyquist mode is dropped for odd orders.
void spectral_derivative_axis(std::vector<Complex>& data, int dim, int m, int axis, int order) {
  if (order == 0) return;
  const auto fwd = unit_roots(m, -1);
  const auto inv = unit_roots(m, +1);
  const std::size_t lines = dim == 1 ? 1 : m;
  std::vector<Complex> line(m), spec(m);
  for (std::size_t l = 0; l < lines; ++l) {
    auto at = [&](int i) -> Complex& {
      if (dim == 1) return data[i];
      return axis == 0 ? data[static_cast<std::size_t>(i) * m + l] : data[l * m + i];
    };
    for (int i = 0; i < m; ++i) line[i] = at(i);
    for (int k = 0; k < m; ++k) {
      CompensatedComplexSum acc;
      for (int i = 0; i < m; ++i) acc.add(fwd[(static_cast<long long>(i) * k) % m] * line[i]);
      const int freq = k <= m / 2 ? k : k - m;
      Complex factor = std::pow(Complex{0.0, kTwoPi * freq}, order);
      if (m % 2 == 0 && k == m / 2 && order % 2 == 1) factor = 0.0;
      spec[k] = acc.value() / static_cast<double>(m) * factor;
    }
    for (int i = 0; i < m; ++i) {
      CompensatedComplexSum acc;
      for (int k = 0; k < m; ++k) acc.add(inv[(static_cast<long long>(i) * k) % m] * spec[k]);
      at(i) = acc.value();
    }
  }
}

NodePtr SampledNode::derivative(MultiIndex beta) const {
  const int m = domain_.grid_size;
  const std::size_t n_lat = domain_.lattice.size();
  const std::size_t n_x = dim_ == 1 ? m : static_cast<std::size_t>(m) * m;
  if (dim_ == 1 && beta[1] > 0) {
    return std::make_shared<SampledNode>(dim_, domain_, std::vector<Complex>(values_.size()), zero_extend_);
  }
  std::vector<Complex> out(values_.size());
  std::vector<Complex> column(n_x);
  for (std::size_t j = 0; j < n_lat; ++j) {
    for (std::size_t i = 0; i < n_x; ++i) column[i] = values_[i * n_lat + j];
    spectral_derivative_axis(column, dim_, m, 0, beta[0]);
    if (dim_ == 2) spectral_derivative_axis(column, dim_, m, 1, beta[1]);
    for (std::size_t i = 0; i < n_x; ++i) out[i * n_lat + j] = column[i];
  }
  return std::make_shared<SampledNode>(dim_, domain_, std::move(out), zero_extend_);
}

std::string format_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string profile_name(Profile g, double param) {
  switch (g) {
    case Profile::none:
      return "1";
    case Profile::bracket_power:
      return "<xi>^" + format_param(param);
    case Profile::gaussian:
      return "exp(-" + format_param(param) + "|xi|^2)";
  }
  return "?";
}

double profile_order(Profile g, double param) {
  switch (g) {
    case Profile::none:
      return 0.0;
    case Profile::bracket_power:
      return param;
    case Profile::gaussian:
      return -kInf;
  }
  return 0.0;
}

}  // namespace

Symbol::Symbol(int dim, std::shared_ptr<const detail::SymbolNode> node, std::string name, double order)
    : dim_(dim), node_(std::move(node)), name_(std::move(name)), order_(order) {
  require(dim == 1 || dim == 2, "symbol dimension must be 1 or 2");
}

Symbol Symbol::bessel(int dim, double m) {
  return Symbol(dim, std::make_shared<CatalogNode>(Family::bessel, Profile::none, m, 0.0),
                "bessel(m=" + format_param(m) + ")", m);
}

Symbol Symbol::heat(int dim, double t) {
  require(t > 0.0, "heat symbol needs t > 0");
  return Symbol(dim, std::make_shared<CatalogNode>(Family::heat, Profile::none, t, 0.0),
                "heat(t=" + format_param(t) + ")", -kInf);
}

Symbol Symbol::modulated(int dim, Profile g, double g_param, double c) {
  return Symbol(dim, std::make_shared<CatalogNode>(Family::modulated, g, g_param, c),
                "(" + format_param(c) + "+cos(2pi x1))*" + profile_name(g, g_param), profile_order(g, g_param));
}

Symbol Symbol::character_shift(int dim, Profile g, double g_param) {
  return Symbol(dim, std::make_shared<CatalogNode>(Family::character_shift, g, g_param, 0.0),
                "exp(i2pi x1)*" + profile_name(g, g_param), profile_order(g, g_param));
}

Symbol Symbol::constant(int dim, Complex c) {
  return Symbol(dim, std::make_shared<CatalogNode>(Family::constant, Profile::none, 0.0, c),
                "constant(" + format_param(c.real()) + (c.imag() != 0.0 ? "+" + format_param(c.imag()) + "i" : "") + ")",
                c == Complex{} ? -kInf : 0.0);
}

Symbol Symbol::from_function(int dim, std::function<Complex(TorusPoint, LatticePoint)> fn, int x_bandwidth,
                             double claimed_order, std::string name) {
  require(x_bandwidth >= 0, "x bandwidth must be non-negative");
  return Symbol(dim, std::make_shared<FunctionNode>(dim, std::move(fn), x_bandwidth), std::move(name),
                claimed_order);
}

Symbol Symbol::sampled(int dim, int grid_size, FrequencyLattice lattice, std::vector<Complex> values) {
  require(lattice.dim() == dim, "sampled symbol: lattice dimension mismatch");
  const std::size_t n_x = dim == 1 ? grid_size : static_cast<std::size_t>(grid_size) * grid_size;
  require(grid_size >= 1, "sampled symbol: grid size must be positive");
  require(values.size() == n_x * lattice.size(),
          "sampled symbol: expected grid_size^dim * |lattice| = " + std::to_string(n_x * lattice.size()) +
              " values, got " + std::to_string(values.size()));
  return Symbol(dim, std::make_shared<SampledNode>(dim, SampledDomain{grid_size, lattice}, std::move(values)),
                "sampled(M=" + std::to_string(grid_size) + ",N=" + std::to_string(lattice.radius()) + ")",
                std::nan(""));
}

Symbol Symbol::with_claims(double order, double rho, double delta) const {
  require(rho >= 0.0 && rho <= 1.0, "claimed rho must lie in [0,1]");
  require(delta >= 0.0 && delta <= 1.0, "claimed delta must lie in [0,1]");
  Symbol s = *this;
  s.order_ = order;
  s.rho_ = rho;
  s.delta_ = delta;
  return s;
}

bool Symbol::is_sampled() const { return node_->domain().has_value(); }
std::optional<SampledDomain> Symbol::sampled_domain() const { return node_->domain(); }
std::optional<int> Symbol::x_bandwidth() const { return node_->x_bandwidth(); }

Complex Symbol::operator()(TorusPoint x, LatticePoint xi) const { return node_->eval(x, xi); }

Complex Symbol::sample(std::size_t grid_index, int grid_size, LatticePoint xi) const {
  return node_->sample(grid_index, grid_size, dim_, xi);
}

int Symbol::preferred_grid_size(const FrequencyLattice& lattice) const {
  if (auto d = node_->domain()) return d->grid_size;
  const int n = lattice.radius();
  const int b = node_->x_bandwidth().value_or(0);
  return std::max(min_grid_size(n), 2 * n + b + 1);
}

Symbol Symbol::operator+(const Symbol& other) const {
  require(dim_ == other.dim_, "cannot add symbols of different dimension");
  auto d1 = node_->domain();
  auto d2 = other.node_->domain();
  if (d1 && d2) require(d1->grid_size == d2->grid_size, "cannot add sampled symbols on different grids");
  Symbol s(dim_,
           std::make_shared<LinearNode>(std::vector<std::pair<Complex, NodePtr>>{{1.0, node_}, {1.0, other.node_}}),
           name_ + " + " + other.name_, std::max(order_, other.order_));
  s.delta_ = std::max(delta_, other.delta_);
  s.rho_ = std::min(rho_, other.rho_);
  return s;
}

Symbol Symbol::operator*(Complex factor) const {
  Symbol s = *this;
  s.node_ = std::make_shared<LinearNode>(std::vector<std::pair<Complex, NodePtr>>{{factor, node_}});
  s.name_ = "(" + format_param(factor.real()) + ")*" + name_;
  return s;
}

Symbol materialize(const Symbol& a, int grid_size, const FrequencyLattice& lattice) {
  require(lattice.dim() == a.dim(), "materialize: lattice dimension mismatch");
  const std::size_t n_x = a.dim() == 1 ? grid_size : static_cast<std::size_t>(grid_size) * grid_size;
  std::vector<Complex> values(n_x * lattice.size());
  for (std::size_t i = 0; i < n_x; ++i)
    for (std::size_t j = 0; j < lattice.size(); ++j) values[i * lattice.size() + j] = a.sample(i, grid_size, lattice.point(j));
  Symbol s = Symbol::sampled(a.dim(), grid_size, lattice, std::move(values));
  return s.with_claims(a.claimed_order(), a.claimed_rho(), a.claimed_delta());
}

Symbol difference_op(const Symbol& a, MultiIndex alpha, MarginPolicy policy) {
  require(alpha[0] >= 0 && alpha[1] >= 0, "difference multi-index must be non-negative");
  if (a.dim() == 1) require(alpha[1] == 0, "one-dimensional symbols take a one-component multi-index");
  Symbol out = a;
  out.name_ = "Delta^(" + std::to_string(alpha[0]) + "," + std::to_string(alpha[1]) + ")" + a.name_;
  if (alpha == MultiIndex{0, 0}) return out;
  if (auto domain = a.node_->domain()) {
    const int shrink = std::max(alpha[0], alpha[1]);
    const bool extend = policy == MarginPolicy::zero_extend;
    const int radius = extend ? domain->lattice.radius() : domain->lattice.radius() - shrink;
    require(radius >= 0, "difference margin exhausted: lattice radius " + std::to_string(domain->lattice.radius()) +
                             " cannot absorb |alpha| = " + std::to_string(shrink));
    const FrequencyLattice lattice(a.dim(), radius);
    auto base = a.node_;
    if (extend) {
      // re-wrap the table so out-of-lattice reads return zero
      const Symbol table = materialize(a, domain->grid_size, domain->lattice);
      const auto& node = static_cast<const SampledNode&>(*table.node_);
      base = std::make_shared<SampledNode>(node.dim(), *node.domain(), node.values(), true);
    }
    const Symbol diff(a.dim(), std::make_shared<DifferenceNode>(base, alpha), out.name_, a.order_);
    Symbol table = materialize(diff, domain->grid_size, lattice);
    table.name_ = out.name_;
    return table.with_claims(a.order_, a.rho_, a.delta_);
  }
  out.node_ = std::make_shared<DifferenceNode>(a.node_, alpha);
  return out;
}

Symbol x_derivative(const Symbol& a, MultiIndex beta) {
  require(beta[0] >= 0 && beta[1] >= 0, "derivative multi-index must be non-negative");
  if (a.dim() == 1) require(beta[1] == 0, "one-dimensional symbols take a one-component multi-index");
  Symbol out = a;
  out.name_ = "d_x^(" + std::to_string(beta[0]) + "," + std::to_string(beta[1]) + ")" + a.name_;
  if (beta == MultiIndex{0, 0}) return out;
  if (a.node_->domain() && !dynamic_cast<const SampledNode*>(a.node_.get())) {
    const auto domain = *a.node_->domain();
    return x_derivative(materialize(a, domain.grid_size, domain.lattice), beta);
  }
  out.node_ = a.node_->derivative(beta);
  return out;
}

Complex symbol_fourier(const Symbol& a, LatticePoint eta, LatticePoint xi, int grid_size) {
  const FrequencyLattice probe(a.dim(), std::max(max_norm(eta), max_norm(xi)));
  const int m = grid_size > 0 ? grid_size : a.preferred_grid_size(probe);
  if (auto d = a.sampled_domain()) require(m == d->grid_size, "sampled symbol: quadrature must use its own grid");
  const int reach = max_norm(eta);
  require(2 * reach < m, "symbol_fourier: |eta| too large for a " + std::to_string(m) + "-point grid");
  const std::size_t n_x = a.dim() == 1 ? m : static_cast<std::size_t>(m) * m;
  const auto roots = unit_roots(m, -1);
  std::vector<Complex> samples(n_x);
  for (std::size_t i = 0; i < n_x; ++i) samples[i] = a.sample(i, m, xi);
  // same two-stage order as the matrix kernel so that both agree bitwise
  CompensatedComplexSum outer;
  if (a.dim() == 1) {
    for (int i = 0; i < m; ++i) outer.add(roots[((static_cast<long long>(i) * eta[0]) % m + m) % m] * samples[i]);
    return outer.value() / static_cast<double>(m);
  }
  for (int i0 = 0; i0 < m; ++i0) {
    CompensatedComplexSum inner;
    for (int i1 = 0; i1 < m; ++i1)
      inner.add(roots[((static_cast<long long>(i1) * eta[1]) % m + m) % m] * samples[static_cast<std::size_t>(i0) * m + i1]);
    outer.add(roots[((static_cast<long long>(i0) * eta[0]) % m + m) % m] * inner.value());
  }
  return outer.value() / (static_cast<double>(m) * m);
}

OrderEstimate estimate_order(const Symbol& a, MultiIndex alpha, MultiIndex beta, const FrequencyLattice& lattice) {
  require(lattice.radius() >= 8, "estimate_order needs lattice radius >= 8");
  require(lattice.dim() == a.dim(), "estimate_order: lattice dimension mismatch");
  const Symbol d = difference_op(x_derivative(a, beta), alpha);
  FrequencyLattice work = lattice;
  if (auto dom = d.sampled_domain()) work = FrequencyLattice(lattice.dim(), std::min(lattice.radius(), dom->lattice.radius()));
  const int m = d.sampled_domain() ? d.sampled_domain()->grid_size : std::max(16, 2 * d.x_bandwidth().value_or(0) + 8);
  const std::size_t n_x = a.dim() == 1 ? m : static_cast<std::size_t>(m) * m;

  // shell k = {|xi|_inf = k}; record sup |.| and the bracket where it is attained
  std::vector<double> shell_sup(work.radius() + 1, 0.0);
  std::vector<double> shell_bracket(work.radius() + 1, 0.0);
  for (std::size_t j = 0; j < work.size(); ++j) {
    const LatticePoint xi = work.point(j);
    double sup = 0.0;
    for (std::size_t i = 0; i < n_x; ++i) sup = std::max(sup, std::abs(d.sample(i, m, xi)));
    const int k = max_norm(xi);
    if (sup > shell_sup[k] || shell_bracket[k] == 0.0) {
      shell_sup[k] = std::max(sup, shell_sup[k]);
      shell_bracket[k] = japanese_bracket(xi);
    }
  }

  std::vector<double> xs, ys;
  for (int k = 0; k <= work.radius(); ++k) {
    if (shell_bracket[k] < 2.0 || shell_sup[k] == 0.0) continue;
    xs.push_back(std::log(shell_bracket[k]));
    ys.push_back(std::log(shell_sup[k]));
  }
  if (xs.empty()) return {-kInf, 0.0, 0, true};
  if (xs.size() == 1) return {std::nan(""), std::exp(ys[0]), 1, false};
  CompensatedSum sx, sy, sxx, sxy;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx.add(xs[i]);
    sy.add(ys[i]);
    sxx.add(xs[i] * xs[i]);
    sxy.add(xs[i] * ys[i]);
  }
  const double n = static_cast<double>(xs.size());
  const double slope = (n * sxy.value() - sx.value() * sy.value()) / (n * sxx.value() - sx.value() * sx.value());
  const double intercept = (sy.value() - slope * sx.value()) / n;
  return {slope, std::exp(intercept), static_cast<int>(xs.size()), false};
}

DecayLemmaResult verify_decay_lemma(const Symbol& a, int k, double m, double delta, const FrequencyLattice& lattice) {
  require(k >= 1, "decay lemma needs k >= 1");
  require(lattice.dim() == a.dim(), "verify_decay_lemma: lattice dimension mismatch");
  const int grid = a.preferred_grid_size(lattice);
  require(2 * lattice.radius() < grid, "verify_decay_lemma: grid too coarse for the lattice");
  const Eigen::MatrixXcd coeffs = kernels::parallel::symbol_columns(a, lattice, lattice.radius(), grid);
  DecayLemmaResult best{0.0, {0, 0}, {0, 0}, a.is_sampled()};
  const double exponent = -(m + 2.0 * k * delta);
  for (std::size_t j = 0; j < lattice.size(); ++j) {
    const LatticePoint xi = lattice.point(j);
    const double xi_weight = std::pow(japanese_bracket(xi), exponent);
    for (std::size_t r = 0; r < lattice.size(); ++r) {
      const LatticePoint eta = lattice.point(r);
      const double value = std::abs(coeffs(r, j)) * std::pow(japanese_bracket(eta), 2.0 * k) * xi_weight;
      if (value > best.c_est) {
        best.c_est = value;
        best.eta_at_sup = eta;
        best.xi_at_sup = xi;
      }
    }
  }
  return best;
}

}  // namespace nuctrace
