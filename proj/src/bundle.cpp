#include "jetvar/bundle.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "jetvar/errors.hpp"

namespace jetvar {

namespace {

bool is_identifier(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

bool is_reserved(const std::string& name) {
  static const std::set<std::string> reserved = {"sin", "cos", "exp", "ln", "pi"};
  return reserved.count(name) > 0;
}

}  // namespace

BundleSpec::BundleSpec(std::vector<std::string> base, std::vector<std::string> fiber,
                       std::vector<std::string> second)
    : base_(std::move(base)), fiber_(std::move(fiber)), second_(std::move(second)) {
  if (base_.empty()) throw BundleError("bundle needs at least one base coordinate");
  if (fiber_.empty()) throw BundleError("bundle needs at least one fiber coordinate");

  std::set<std::string> seen;
  auto check = [&](const std::string& name) {
    if (!is_identifier(name)) throw BundleError("invalid coordinate name '" + name + "'");
    if (is_reserved(name)) throw BundleError("coordinate name '" + name + "' is reserved");
    if (!seen.insert(name).second) throw BundleError("duplicate coordinate name '" + name + "'");
  };
  for (const auto& v : {&base_, &fiber_, &second_}) {
    for (const auto& name : *v) check(name);
  }
  // Vertical spellings d<fiber> must not shadow declared names.
  for (const auto& f : fiber_) {
    if (seen.count("d" + f)) throw BundleError("coordinate name 'd" + f + "' clashes with vertical " + f);
  }
  // Suffix strings are decoded greedily, so base names must be prefix-free.
  for (const auto& a : base_) {
    for (const auto& b : base_) {
      if (&a != &b && b.size() > a.size() && b.compare(0, a.size(), a) == 0) {
        throw BundleError("base names '" + a + "' and '" + b + "' are not prefix-free");
      }
    }
  }
}

Symbol BundleSpec::base(std::size_t i) const {
  if (i >= m()) throw RangeError("base index " + std::to_string(i) + " out of range");
  Symbol s;
  s.kind = SymbolKind::Base;
  s.name = base_[i];
  s.slot = static_cast<unsigned>(i);
  return s;
}

Symbol BundleSpec::jet(std::size_t p, const MultiIndex& alpha) const {
  if (p >= n()) throw RangeError("fiber index " + std::to_string(p) + " out of range");
  if (alpha.range() != m()) throw RangeError("multi-index range does not match base dimension");
  Symbol s;
  s.kind = SymbolKind::Jet;
  s.name = fiber_[p];
  s.index = alpha;
  s.suffix = suffix(alpha);
  s.slot = static_cast<unsigned>(p);
  return s;
}

Symbol BundleSpec::vertical(std::size_t p, const MultiIndex& sigma) const {
  Symbol s = jet(p, sigma);
  s.kind = SymbolKind::Vertical;
  return s;
}

std::string BundleSpec::suffix(const MultiIndex& alpha) const {
  std::string out;
  for (std::size_t i : alpha.as_sequence()) out += base_[i];
  return out;
}

std::optional<MultiIndex> BundleSpec::parse_suffix(const std::string& text) const {
  MultiIndex alpha(m());
  std::size_t pos = 0;
  std::size_t last = 0;
  while (pos < text.size()) {
    bool matched = false;
    for (std::size_t i = 0; i < m(); ++i) {
      const auto& name = base_[i];
      if (text.compare(pos, name.size(), name) == 0) {
        // Sorted index strings only: u_yx is not a valid spelling of u_xy.
        if (i < last) return std::nullopt;
        alpha = alpha.incremented(i);
        pos += name.size();
        last = i;
        matched = true;
        break;
      }
    }
    if (!matched) return std::nullopt;
  }
  return alpha;
}

std::optional<std::size_t> BundleSpec::base_position(const std::string& name) const {
  auto it = std::find(base_.begin(), base_.end(), name);
  if (it == base_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - base_.begin());
}

std::optional<std::size_t> BundleSpec::fiber_position(const std::string& name) const {
  auto it = std::find(fiber_.begin(), fiber_.end(), name);
  if (it == fiber_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - fiber_.begin());
}

BundleSpec BundleSpec::over_total_space() const {
  if (!two_fibered()) throw BundleError("bundle has no second fiber level");
  std::vector<std::string> base = base_;
  base.insert(base.end(), fiber_.begin(), fiber_.end());
  return BundleSpec(std::move(base), second_);
}

bool BundleSpec::admits(const Symbol& s, const Orders& orders) const {
  switch (s.kind) {
    case SymbolKind::Constant:
      return true;
    case SymbolKind::Base:
      return base_position(s.name).has_value();
    case SymbolKind::Jet:
      return fiber_position(s.name).has_value() && s.index.range() == m() &&
             s.order() <= orders.r;
    case SymbolKind::Vertical:
      return orders.s.has_value() && fiber_position(s.name).has_value() &&
             s.index.range() == m() && s.order() <= *orders.s;
  }
  return false;
}

void require_coordinates(const BundleSpec& bundle, const Expr& e, const Orders& orders) {
  for (const auto& s : e.free_symbols()) {
    if (!bundle.admits(s, orders)) {
      std::string where = "order r=" + std::to_string(orders.r) +
                          (orders.s ? ", s=" + std::to_string(*orders.s) : ", no vertical argument");
      throw CoordinateError("coordinate '" + render(s) + "' is not available at " + where);
    }
  }
}

Symbol to_symbol(const BundleSpec& bundle, const JetCoordinate& c) {
  return c.vertical ? bundle.vertical(c.fiber, c.index) : bundle.jet(c.fiber, c.index);
}

std::vector<JetCoordinate> enumerate_jet_coordinates(const BundleSpec& bundle, unsigned r,
                                                     std::optional<unsigned> s) {
  if (s && *s > r) {
    throw OrderError("vertical order s=" + std::to_string(*s) + " exceeds jet order r=" +
                     std::to_string(r));
  }
  std::vector<JetCoordinate> out;
  const auto positional = multi_indices_up_to(bundle.m(), r);
  for (std::size_t p = 0; p < bundle.n(); ++p) {
    for (const auto& alpha : positional) out.push_back({p, alpha, false});
  }
  if (s) {
    const auto vertical = multi_indices_up_to(bundle.m(), *s);
    for (std::size_t p = 0; p < bundle.n(); ++p) {
      for (const auto& sigma : vertical) out.push_back({p, sigma, true});
    }
  }
  return out;
}

std::string render(const BundleSpec& pair, const FiberwiseCoordinate& c) {
  std::string beta;
  for (std::size_t i : c.beta.as_sequence()) beta += pair.fiber_names()[i];
  std::string gamma;
  for (std::size_t i : c.gamma.as_sequence()) {
    gamma += i < pair.m() ? pair.base_names()[i] : pair.fiber_names()[i - pair.m()];
  }
  std::string out = pair.second_names().at(c.target);
  if (beta.empty() && gamma.empty()) return out;
  out += "_" + beta;
  if (!gamma.empty()) out += "," + gamma;
  return out;
}

std::vector<FiberwiseCoordinate> enumerate_fiberwise_coordinates(const FiberwiseJetSpaceSpec& spec) {
  if (!spec.pair.two_fibered()) throw BundleError("fiberwise jets need a target fiber");
  const auto betas = multi_indices_up_to(spec.pair.n(), spec.r);
  const std::size_t total = spec.pair.m() + spec.pair.n();
  std::vector<FiberwiseCoordinate> out;
  for (std::size_t a = 0; a < spec.pair.second_names().size(); ++a) {
    for (unsigned g = 0; g <= spec.k; ++g) {
      const auto gammas = multi_indices_of_order(total, g);
      for (const auto& beta : betas) {
        for (const auto& gamma : gammas) out.push_back({a, beta, gamma});
      }
    }
  }
  return out;
}

}  // namespace jetvar
