#include "jetvar/jetcalc.hpp"

#include <algorithm>
#include <set>

#include "jetvar/errors.hpp"

namespace jetvar {

namespace {

Orders raised(const Orders& o, unsigned k) {
  return {o.r + k, o.s ? std::optional<unsigned>(*o.s + k) : std::nullopt};
}

MultiIndex lowered(const MultiIndex& beta, std::size_t j) {
  auto e = beta.exponents();
  --e[j];
  return MultiIndex(std::move(e));
}

}  // namespace

Morphism::Morphism(BundleSpec bundle, Orders orders, Form value)
    : bundle_(std::move(bundle)), orders_(orders), value_(std::move(value)) {
  if (orders_.s && *orders_.s > orders_.r) {
    throw OrderError("vertical order s=" + std::to_string(*orders_.s) + " exceeds r=" +
                     std::to_string(orders_.r));
  }
  if (value_.dim() != bundle_.m()) {
    throw RangeError("form range " + std::to_string(value_.dim()) + " differs from base dimension " +
                     std::to_string(bundle_.m()));
  }
  for (const auto& [key, c] : value_.coefficients()) require_coordinates(bundle_, c, orders_);
}

Morphism Morphism::with_orders(Orders orders) const { return Morphism(bundle_, orders, value_); }

Morphism Morphism::tightened() const {
  unsigned r = 0;
  unsigned s = 0;
  for (const auto& [key, c] : value_.coefficients()) {
    for (const auto& sym : c.free_symbols()) {
      if (sym.kind == SymbolKind::Jet) r = std::max(r, sym.order());
      if (sym.kind == SymbolKind::Vertical) s = std::max(s, sym.order());
    }
  }
  Orders o{std::max(r, orders_.s ? s : 0u), orders_.s ? std::optional<unsigned>(s) : std::nullopt};
  return Morphism(bundle_, o, value_);
}

VerticalField::VerticalField(BundleSpec bundle, std::vector<Expr> components)
    : bundle_(std::move(bundle)), components_(std::move(components)) {
  if (components_.size() != bundle_.n()) {
    throw RangeError("vertical field needs one component per fiber coordinate");
  }
  for (const auto& c : components_) require_coordinates(bundle_, c, Orders{0, std::nullopt});
}

Expr total_derivative(const BundleSpec& bundle, const Expr& e, std::size_t i, const Orders& orders) {
  if (i >= bundle.m()) throw RangeError("total derivative index outside base range");
  require_coordinates(bundle, e, orders);
  Expr out;
  for (const auto& s : e.free_symbols()) {
    switch (s.kind) {
      case SymbolKind::Constant:
        break;
      case SymbolKind::Base:
        if (bundle.base_position(s.name) == i) out += diff(e, s);
        break;
      case SymbolKind::Jet: {
        auto p = *bundle.fiber_position(s.name);
        out += diff(e, s) * Expr(bundle.jet(p, s.index.incremented(i)));
        break;
      }
      case SymbolKind::Vertical: {
        auto p = *bundle.fiber_position(s.name);
        out += diff(e, s) * Expr(bundle.vertical(p, s.index.incremented(i)));
        break;
      }
    }
  }
  return out;
}

Expr iterated_total_derivative(const BundleSpec& bundle, const Expr& e, const MultiIndex& beta,
                               const Orders& orders) {
  Expr out = e;
  unsigned step = 0;
  for (std::size_t i : beta.as_sequence()) {
    out = total_derivative(bundle, out, i, raised(orders, step++));
  }
  return out;
}

Expr HolonomicJet::component(const BasisTuple& key, const MultiIndex& beta) const {
  auto it = components.find({key, beta});
  return it == components.end() ? Expr() : it->second;
}

HolonomicJet holonomic_prolongation(const Morphism& phi, unsigned k) {
  const auto& bundle = phi.bundle();
  HolonomicJet jet{bundle, phi.degree(), k, raised(phi.orders(), k), {}};
  const auto betas = multi_indices_up_to(bundle.m(), k);
  for (const auto& [key, a] : phi.value().coefficients()) {
    for (const auto& beta : betas) {
      if (beta.is_zero()) {
        jet.components[{key, beta}] = a;
        continue;
      }
      std::size_t j = beta.first_nonzero();
      MultiIndex prev = lowered(beta, j);
      const Expr& lower = jet.components.at({key, prev});
      jet.components[{key, beta}] =
          total_derivative(bundle, lower, j, raised(phi.orders(), prev.order()));
    }
  }
  return jet;
}

Form delta(const HolonomicJet& jet) {
  if (jet.k == 0) throw OrderError("delta needs the first-order part of the jet (k >= 1)");
  const std::size_t m = jet.bundle.m();
  Form out(m, jet.degree + 1);
  for (const auto& [slot, a] : jet.components) {
    const auto& [key, beta] = slot;
    if (beta.order() != 1) continue;
    std::vector<unsigned> indices;
    indices.push_back(static_cast<unsigned>(beta.first_nonzero()));
    indices.insert(indices.end(), key.begin(), key.end());
    out.add(indices, a);
  }
  return out;
}

Morphism formal_exterior_differential(const Morphism& phi) {
  HolonomicJet jet = holonomic_prolongation(phi, 1);
  return Morphism(phi.bundle(), jet.source_orders, delta(jet));
}

Morphism formal_exterior_differential_direct(const Morphism& phi) {
  const auto& bundle = phi.bundle();
  const Orders& o = phi.orders();
  const auto coords = enumerate_jet_coordinates(bundle, o.r, o.s);
  const std::size_t m = bundle.m();
  Form out(m, phi.degree() + 1);
  for (const auto& [key, a] : phi.value().coefficients()) {
    Form basis = Form::monomial(m, key, Expr(1));
    for (std::size_t i = 0; i < m; ++i) {
      Expr t = diff(a, bundle.base(i));
      for (const auto& c : coords) {
        Symbol sym = to_symbol(bundle, c);
        if (!a.depends_on(sym)) continue;
        JetCoordinate shifted{c.fiber, c.index.incremented(i), c.vertical};
        t += diff(a, sym) * Expr(to_symbol(bundle, shifted));
      }
      out += wedge(Form::monomial(m, {static_cast<unsigned>(i)}, t), basis);
    }
  }
  return Morphism(bundle, raised(o, 1), out);
}

std::map<std::pair<std::size_t, MultiIndex>, Expr> flow_prolongation(const VerticalField& eta,
                                                                      unsigned s) {
  const auto& bundle = eta.bundle();
  std::map<std::pair<std::size_t, MultiIndex>, Expr> out;
  const auto sigmas = multi_indices_up_to(bundle.m(), s);
  for (std::size_t p = 0; p < bundle.n(); ++p) {
    for (const auto& sigma : sigmas) {
      if (sigma.is_zero()) {
        out[{p, sigma}] = eta.components()[p];
        continue;
      }
      std::size_t j = sigma.first_nonzero();
      MultiIndex prev = lowered(sigma, j);
      out[{p, sigma}] =
          total_derivative(bundle, out.at({p, prev}), j, Orders{prev.order(), std::nullopt});
    }
  }
  return out;
}

Bindings vertical_bindings(const VerticalField& eta, unsigned s) {
  Bindings b;
  for (const auto& [slot, value] : flow_prolongation(eta, s)) {
    b.emplace(eta.bundle().vertical(slot.first, slot.second), value);
  }
  return b;
}

Morphism plug_vertical(const Morphism& phi, const VerticalField& eta) {
  if (!phi.orders().s) throw OrderError("morphism has no vertical argument to plug into");
  if (!(eta.bundle() == phi.bundle())) throw BundleError("vertical field lives on another bundle");
  Bindings b = vertical_bindings(eta, *phi.orders().s);
  Form value = phi.value().map([&](const Expr& c) { return substitute(c, b); });
  return Morphism(phi.bundle(), Orders{phi.orders().r, std::nullopt}, std::move(value));
}

Expr partial(const Expr& e, const std::vector<Symbol>& coords, const MultiIndex& alpha) {
  if (alpha.range() != coords.size()) throw RangeError("multi-index range differs from coordinate list");
  Expr out = e;
  for (std::size_t i : alpha.as_sequence()) out = diff(out, coords[i]);
  return out;
}

namespace {

std::vector<Symbol> base_symbols(const BundleSpec& bundle) {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < bundle.m(); ++i) out.push_back(bundle.base(i));
  return out;
}

void require_base_functions(const BundleSpec& bundle, const std::vector<Expr>& values) {
  if (values.size() != bundle.n()) throw RangeError("need one component per fiber coordinate");
  for (const auto& v : values) {
    for (const auto& s : v.free_symbols()) {
      if (s.kind != SymbolKind::Base && s.kind != SymbolKind::Constant) {
        throw CoordinateError("section component depends on '" + render(s) + "'");
      }
    }
    require_coordinates(bundle, v, Orders{0, std::nullopt});
  }
}

}  // namespace

Bindings section_bindings(const BundleSpec& bundle, const std::vector<Expr>& section, unsigned r) {
  require_base_functions(bundle, section);
  const auto base = base_symbols(bundle);
  Bindings b;
  for (std::size_t p = 0; p < bundle.n(); ++p) {
    for (const auto& alpha : multi_indices_up_to(bundle.m(), r)) {
      b.emplace(bundle.jet(p, alpha), partial(section[p], base, alpha));
    }
  }
  return b;
}

Bindings variation_bindings(const BundleSpec& bundle, const std::vector<Expr>& variation, unsigned s) {
  require_base_functions(bundle, variation);
  const auto base = base_symbols(bundle);
  Bindings b;
  for (std::size_t p = 0; p < bundle.n(); ++p) {
    for (const auto& sigma : multi_indices_up_to(bundle.m(), s)) {
      b.emplace(bundle.vertical(p, sigma), partial(variation[p], base, sigma));
    }
  }
  return b;
}

NaturalityReport check_naturality(const Morphism& phi, const VerticalField& eta, unsigned k) {
  if (!phi.orders().s) throw OrderError("naturality needs a morphism with a vertical argument");
  const unsigned s = *phi.orders().s;

  HolonomicJet prolonged = holonomic_prolongation(phi, k);
  Bindings b = vertical_bindings(eta, s + k);
  HolonomicJet plugged_first = holonomic_prolongation(plug_vertical(phi, eta), k);

  std::set<BasisTuple> keys;
  for (const auto& [key, c] : phi.value().coefficients()) keys.insert(key);

  NaturalityReport report;
  for (const auto& key : keys) {
    for (const auto& beta : multi_indices_up_to(phi.bundle().m(), k)) {
      Expr left = substitute(prolonged.component(key, beta), b);
      Expr right = plugged_first.component(key, beta);
      if (!(left == right)) {
        report.holds = false;
        report.witness = NaturalityWitness{key, beta, left, right};
        return report;
      }
    }
  }
  return report;
}

}  // namespace jetvar
