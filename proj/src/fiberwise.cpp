#include "jetvar/fiberwise.hpp"

#include "jetvar/errors.hpp"

namespace jetvar {

namespace {

void require_pair(const BundleSpec& pair) {
  if (!pair.two_fibered()) throw BundleError("expected a declaration with a second fiber level");
}

// Y1 fiber symbols x^p (jet kind) <-> total-space base symbols x^p.
Bindings source_to_total(const BundleSpec& pair) {
  BundleSpec y1 = source_bundle(pair);
  BundleSpec e = pair.over_total_space();
  Bindings b;
  for (std::size_t p = 0; p < pair.n(); ++p) b.emplace(y1.fiber(p), Expr(e.base(pair.m() + p)));
  return b;
}

Bindings total_to_source(const BundleSpec& pair) {
  BundleSpec y1 = source_bundle(pair);
  BundleSpec e = pair.over_total_space();
  Bindings b;
  for (std::size_t p = 0; p < pair.n(); ++p) b.emplace(e.base(pair.m() + p), Expr(y1.fiber(p)));
  return b;
}

std::vector<Symbol> fiber_coordinates(const BundleSpec& pair) {
  BundleSpec y1 = source_bundle(pair);
  std::vector<Symbol> out;
  for (std::size_t p = 0; p < pair.n(); ++p) out.push_back(y1.fiber(p));
  return out;
}

std::vector<Symbol> base_symbols(const BundleSpec& b) {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < b.m(); ++i) out.push_back(b.base(i));
  return out;
}

void require_base_only(const BundleSpec& bundle, const Expr& e, const char* what) {
  for (const auto& s : e.free_symbols()) {
    if (s.kind == SymbolKind::Constant || s.kind == SymbolKind::Base) continue;
    throw CoordinateError(std::string(what) + " depends on '" + render(s) + "'");
  }
  require_coordinates(bundle, e, Orders{0, std::nullopt});
}

// z_{αβ} = ∂_β ∂_α c over the total-space base (x^i then x^p).
std::vector<ReindexedJet> reindex(const BundleSpec& total, std::size_t m,
                                  const std::vector<Expr>& components, unsigned r) {
  const std::size_t n = total.m() - m;
  const auto coords = base_symbols(total);
  std::vector<ReindexedJet> out;
  for (std::size_t a = 0; a < components.size(); ++a) {
    for (unsigned order = 0; order <= r; ++order) {
      for (unsigned alpha_order = 0; alpha_order <= order; ++alpha_order) {
        for (const auto& alpha : multi_indices_of_order(m, alpha_order)) {
          for (const auto& beta : multi_indices_of_order(n, order - alpha_order)) {
            Expr z_alpha = partial(components[a], coords, concat(alpha, MultiIndex(n)));
            Expr value = partial(z_alpha, coords, concat(MultiIndex(m), beta));
            out.push_back({a, alpha, beta, value});
          }
        }
      }
    }
  }
  return out;
}

std::string outcome_detail(const std::string& what, const Expr& left, const Expr& right) {
  return what + ": " + to_string(left) + " vs " + to_string(right);
}

}  // namespace

BundleSpec source_bundle(const BundleSpec& pair) {
  return BundleSpec(pair.base_names(), pair.fiber_names());
}

std::vector<Symbol> total_coordinates(const BundleSpec& pair) {
  BundleSpec y1 = source_bundle(pair);
  auto out = base_symbols(y1);
  for (std::size_t p = 0; p < pair.n(); ++p) out.push_back(y1.fiber(p));
  return out;
}

BaseMorphism::BaseMorphism(BundleSpec pair, std::vector<Expr> components)
    : pair_(std::move(pair)), components_(std::move(components)) {
  require_pair(pair_);
  if (components_.size() != pair_.second_names().size()) {
    throw RangeError("base morphism needs one component per target fiber coordinate");
  }
  BundleSpec y1 = source_bundle(pair_);
  for (const auto& c : components_) require_coordinates(y1, c, Orders{0, std::nullopt});
}

std::map<std::pair<std::size_t, MultiIndex>, Expr> fiberwise_prolongation(const BaseMorphism& f,
                                                                           unsigned r) {
  const auto fibers = fiber_coordinates(f.pair());
  std::map<std::pair<std::size_t, MultiIndex>, Expr> out;
  for (std::size_t a = 0; a < f.components().size(); ++a) {
    for (const auto& beta : multi_indices_up_to(fibers.size(), r)) {
      out.emplace(std::make_pair(a, beta), partial(f.components()[a], fibers, beta));
    }
  }
  return out;
}

Expr FiberwiseJet::value(const FiberwiseCoordinate& c) const {
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    if (coordinates[i] == c) return values[i];
  }
  throw RangeError("coordinate outside the fiberwise jet space");
}

FiberwiseJet fiberwise_jet(const BaseMorphism& f, unsigned k, unsigned r) {
  FiberwiseJet jet{{f.pair(), r, k}, {}, {}};
  jet.coordinates = enumerate_fiberwise_coordinates(jet.spec);
  const auto prolonged = fiberwise_prolongation(f, r);
  const auto coords = total_coordinates(f.pair());
  for (const auto& c : jet.coordinates) {
    jet.values.push_back(partial(prolonged.at({c.target, c.beta}), coords, c.gamma));
  }
  return jet;
}

std::vector<Expr> graph_jet(const BaseMorphism& f, unsigned k) {
  const BundleSpec total = f.pair().over_total_space();
  const Bindings forward = source_to_total(f.pair());
  const Bindings back = total_to_source(f.pair());
  std::vector<Expr> section;
  for (const auto& c : f.components()) section.push_back(substitute(c, forward));
  Bindings jets = section_bindings(total, section, k);
  std::vector<Expr> out;
  for (const auto& c : enumerate_jet_coordinates(total, k, std::nullopt)) {
    out.push_back(substitute(jets.at(to_symbol(total, c)), back));
  }
  return out;
}

AssociatedJetMap associated_jet_map(const BaseMorphism& f) {
  const BundleSpec y1 = source_bundle(f.pair());
  const std::size_t m = y1.m();
  AssociatedJetMap h;
  for (const auto& fa : f.components()) {
    h.values.push_back(fa);
    std::vector<Expr> row;
    for (std::size_t i = 0; i < m; ++i) {
      Expr zi = diff(fa, y1.base(i));
      for (std::size_t p = 0; p < y1.n(); ++p) {
        zi += diff(fa, y1.fiber(p)) * Expr(y1.jet(p, MultiIndex::unit(m, i)));
      }
      row.push_back(zi);
    }
    h.derivatives.push_back(std::move(row));
  }
  return h;
}

OperatorOrderReport check_operator_order(const BaseMorphism& f, const BaseMorphism& g, unsigned k,
                                         const std::vector<Rational>& point) {
  if (!(f.pair() == g.pair())) throw BundleError("operator order compares morphisms of one pair");
  const auto coords = total_coordinates(f.pair());
  if (point.size() != coords.size()) throw RangeError("point needs a value for every x^i and x^p");
  Bindings at;
  for (std::size_t i = 0; i < coords.size(); ++i) at.emplace(coords[i], Expr(point[i]));

  OperatorOrderReport report;
  FiberwiseJet jf = fiberwise_jet(f, k, 1);
  FiberwiseJet jg = fiberwise_jet(g, k, 1);
  for (std::size_t i = 0; i < jf.coordinates.size(); ++i) {
    Expr a = substitute(jf.values[i], at);
    Expr b = substitute(jg.values[i], at);
    if (!(a == b)) {
      report.outcome = OrderOutcome::PreconditionUnmet;
      report.detail = outcome_detail(render(f.pair(), jf.coordinates[i]), a, b);
      return report;
    }
  }

  const BundleSpec y1 = source_bundle(f.pair());
  const auto fibers = fiber_coordinates(f.pair());
  AssociatedJetMap hf = associated_jet_map(f);
  AssociatedJetMap hg = associated_jet_map(g);
  auto compare = [&](const Expr& ef, const Expr& eg, const std::string& name) {
    for (const auto& beta : multi_indices_up_to(fibers.size(), k)) {
      Expr a = substitute(partial(ef, fibers, beta), at);
      Expr b = substitute(partial(eg, fibers, beta), at);
      if (!(a == b)) {
        std::string where = name;
        for (std::size_t p : beta.as_sequence()) where += " d" + render(fibers[p]);
        report.outcome = OrderOutcome::Fails;
        report.detail = outcome_detail(where, a, b);
        return false;
      }
    }
    return true;
  };
  const auto& targets = f.pair().second_names();
  for (std::size_t a = 0; a < targets.size(); ++a) {
    if (!compare(hf.values[a], hg.values[a], targets[a])) return report;
    for (std::size_t i = 0; i < y1.m(); ++i) {
      if (!compare(hf.derivatives[a][i], hg.derivatives[a][i], targets[a] + "_" + y1.base_names()[i])) {
        return report;
      }
    }
  }
  return report;
}

SectionFamily::SectionFamily(BundleSpec tower, std::vector<Expr> components)
    : tower_(std::move(tower)), total_(tower_.over_total_space()), components_(std::move(components)) {
  if (components_.size() != total_.n()) {
    throw RangeError("section needs one component per Q-fiber coordinate");
  }
  for (const auto& c : components_) require_base_only(total_, c, "section component");
}

std::vector<ReindexedJet> section_jet_reindex(const SectionFamily& s, unsigned r) {
  return reindex(s.total_space(), s.tower().m(), s.components(), r);
}

Form exterior_derivative(const BundleSpec& bundle, const Form& omega) {
  Form out(omega.dim(), omega.degree() + 1);
  for (const auto& [key, c] : omega.coefficients()) {
    for (std::size_t i = 0; i < bundle.m(); ++i) {
      Expr di = diff(c, bundle.base(i));
      if (di.is_zero()) continue;
      std::vector<unsigned> indices{static_cast<unsigned>(i)};
      indices.insert(indices.end(), key.begin(), key.end());
      out.add(indices, di);
    }
  }
  return out;
}

CommutationReport check_functional_commutation(const Morphism& B, const SectionFamily& s,
                                               const std::vector<Expr>& variation) {
  const BundleSpec& total = s.total_space();
  if (!(B.bundle() == total)) throw BundleError("B must be declared over the total space of the tower");
  const Orders& o = B.orders();
  if (o.s) {
    if (variation.size() != total.n()) throw RangeError("variation needs one component per Q-fiber");
    for (const auto& v : variation) require_base_only(total, v, "variation component");
  }

  auto jets = [&](unsigned r, std::optional<unsigned> vs) {
    Bindings b = section_bindings(total, s.components(), r);
    if (vs) {
      for (auto& kv : variation_bindings(total, variation, *vs)) b.insert(kv);
    }
    return b;
  };

  Morphism DB = formal_exterior_differential(B);
  const Bindings up = jets(DB.orders().r, DB.orders().s);
  Form left = DB.value().map([&](const Expr& c) { return substitute(c, up); });

  const Bindings base = jets(o.r, o.s);
  Form right = exterior_derivative(total, B.value().map([&](const Expr& c) { return substitute(c, base); }));

  CommutationReport report;
  for (const auto& key : basis_tuples(total.m(), DB.degree())) {
    Expr l = left.coefficient(key);
    Expr r = right.coefficient(key);
    if (!(l == r)) {
      report = {false, key, l, r};
      return report;
    }
  }
  return report;
}

CommutationReport check_prolongation_commutation(const std::vector<Expr>& F, const SectionFamily& s,
                                                 unsigned r) {
  const BundleSpec& total = s.total_space();
  const std::size_t m = s.tower().m();
  for (const auto& c : F) require_coordinates(total, c, Orders{0, std::nullopt});

  std::vector<Expr> composed;
  Bindings zs = section_bindings(total, s.components(), 0);
  for (const auto& c : F) composed.push_back(substitute(c, zs));
  auto left = reindex(total, m, composed, r);

  Bindings jets = section_bindings(total, s.components(), r);
  CommutationReport report;
  for (const auto& entry : left) {
    MultiIndex gamma = concat(entry.alpha, entry.beta);
    Expr right = substitute(
        iterated_total_derivative(total, F[entry.target], gamma, Orders{0, std::nullopt}), jets);
    if (!(entry.value == right)) {
      report = {false, std::nullopt, entry.value, right};
      return report;
    }
  }
  return report;
}

}  // namespace jetvar
