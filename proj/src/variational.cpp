#include "jetvar/variational.hpp"

#include "jetvar/errors.hpp"

namespace jetvar {

Lagrangian::Lagrangian(BundleSpec bundle, Form value)
    : bundle_(std::move(bundle)), value_(std::move(value)) {
  if (bundle_.two_fibered()) {
    throw BundleError("a Lagrangian on Q -> E is declared over the total-space view of the tower");
  }
  if (value_.dim() != bundle_.m()) throw RangeError("Lagrangian form range differs from base dimension");
  for (const auto& [key, c] : value_.coefficients()) {
    require_coordinates(bundle_, c, Orders{1, std::nullopt});
  }
}

Morphism vertical_differential(const Lagrangian& lambda) {
  const auto& b = lambda.bundle();
  const std::size_t m = b.m();
  Form out = lambda.value().map([&](const Expr& L) {
    Expr c;
    for (std::size_t p = 0; p < b.n(); ++p) {
      c += diff(L, b.fiber(p)) * Expr(b.vertical(p, MultiIndex(m)));
      for (std::size_t i = 0; i < m; ++i) {
        auto unit = MultiIndex::unit(m, i);
        c += diff(L, b.jet(p, unit)) * Expr(b.vertical(p, unit));
      }
    }
    return c;
  });
  return Morphism(b, Orders{1, 1}, std::move(out));
}

Morphism momentum(const Lagrangian& lambda) {
  if (lambda.degree() == 0) throw DegreeError("momentum of a 0-form Lagrangian");
  const auto& b = lambda.bundle();
  const std::size_t m = b.m();
  // ρ_Y: keep the X^p_i part of d_Vλ, send X^p_i to X^p and contract with ∂/∂x^i.
  Morphism dv = vertical_differential(lambda);
  Form out(m, lambda.degree() - 1);
  for (const auto& [key, c] : dv.value().coefficients()) {
    Form basis = Form::monomial(m, key, Expr(1));
    for (std::size_t i = 0; i < m; ++i) {
      Expr slot;
      for (std::size_t p = 0; p < b.n(); ++p) {
        Expr coeff = diff(c, b.vertical(p, MultiIndex::unit(m, i)));
        slot += coeff * Expr(b.vertical(p, MultiIndex(m)));
      }
      if (slot.is_zero()) continue;
      out += interior_product(static_cast<unsigned>(i), basis) * slot;
    }
  }
  return Morphism(b, Orders{1, 0}, std::move(out));
}

Morphism euler_lagrange_difference(const Lagrangian& lambda) {
  Morphism dv = vertical_differential(lambda).with_orders(Orders{2, 1});
  Morphism db = formal_exterior_differential(momentum(lambda));
  return Morphism(lambda.bundle(), Orders{2, 1}, dv.value() - db.value());
}

Expr EulerLagrangeResult::component(std::size_t p, const BasisTuple& key) const {
  auto it = components.find({p, key});
  return it == components.end() ? Expr() : it->second;
}

EulerLagrangeResult analyze_euler_lagrange(const Lagrangian& lambda) {
  const auto& b = lambda.bundle();
  const std::size_t m = b.m();
  Morphism difference = euler_lagrange_difference(lambda);
  EulerLagrangeResult result{b, lambda.degree(), {}, {}};
  for (const auto& [key, c] : difference.value().coefficients()) {
    for (std::size_t p = 0; p < b.n(); ++p) {
      Expr e = diff(c, b.vertical(p, MultiIndex(m)));
      if (!e.is_zero()) result.components.emplace(std::make_pair(p, key), e);
      for (const auto& sigma : multi_indices_up_to(m, 1)) {
        if (sigma.is_zero()) continue;
        Symbol X = b.vertical(p, sigma);
        Expr r = diff(c, X);
        if (!r.is_zero()) result.residual.push_back({X, key, r});
      }
    }
  }
  return result;
}

EulerLagrangeResult euler_lagrange(const Lagrangian& lambda) {
  EulerLagrangeResult result = analyze_euler_lagrange(lambda);
  if (!result.projectable()) {
    throw ProjectabilityError("Euler-Lagrange difference is not projectable: " +
                              describe(result.residual.front(), lambda.bundle()));
  }
  return result;
}

std::vector<Expr> coordinate_euler_lagrange(const Lagrangian& lambda) {
  if (!lambda.classical()) throw DegreeError("coordinate Euler-Lagrange formula needs l = m");
  const auto& b = lambda.bundle();
  const std::size_t m = b.m();
  BasisTuple top = basis_tuples(m, static_cast<unsigned>(m)).front();
  Expr L = lambda.value().coefficient(top);
  std::vector<Expr> out;
  for (std::size_t p = 0; p < b.n(); ++p) {
    Expr e = diff(L, b.fiber(p));
    for (std::size_t i = 0; i < m; ++i) {
      Expr dL = diff(L, b.jet(p, MultiIndex::unit(m, i)));
      e -= total_derivative(b, dL, i, Orders{1, std::nullopt});
    }
    out.push_back(e);
  }
  return out;
}

std::string describe(const ResidualTerm& term, const BundleSpec& bundle) {
  Form f = Form::monomial(bundle.m(), term.key, term.coefficient * Expr(term.vertical));
  return to_string(f, bundle.base_names());
}

}  // namespace jetvar
