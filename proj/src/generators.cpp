#include "jetvar/generators.hpp"

#include "jetvar/errors.hpp"

namespace jetvar {

BundleSpec standard_bundle(std::size_t m, std::size_t n) {
  static const std::vector<std::string> base = {"x", "y", "w"};
  static const std::vector<std::string> fiber = {"u", "v"};
  if (m < 1 || m > base.size() || n < 1 || n > fiber.size()) {
    throw RangeError("standard bundle supports 1 <= m <= 3 and 1 <= n <= 2");
  }
  return BundleSpec({base.begin(), base.begin() + static_cast<std::ptrdiff_t>(m)},
                    {fiber.begin(), fiber.begin() + static_cast<std::ptrdiff_t>(n)});
}

BundleSpec standard_tower(std::size_t m, std::size_t n, std::size_t targets) {
  static const std::vector<std::string> base = {"x", "y"};
  static const std::vector<std::string> fiber = {"p", "q"};
  static const std::vector<std::string> second = {"z", "c"};
  if (m < 1 || m > 2 || n < 1 || n > 2 || targets < 1 || targets > 2) {
    throw RangeError("standard tower supports m, n, targets in {1, 2}");
  }
  auto take = [](const std::vector<std::string>& v, std::size_t k) {
    return std::vector<std::string>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
  };
  return BundleSpec(take(base, m), take(fiber, n), take(second, targets));
}

std::vector<Symbol> coordinate_pool(const BundleSpec& bundle, const Orders& orders) {
  std::vector<Symbol> pool;
  for (std::size_t i = 0; i < bundle.m(); ++i) pool.push_back(bundle.base(i));
  for (const auto& c : enumerate_jet_coordinates(bundle, orders.r, orders.s)) {
    pool.push_back(to_symbol(bundle, c));
  }
  return pool;
}

Morphism random_morphism(RandomSource& rng, const BundleSpec& bundle, const Orders& orders,
                         unsigned degree, PolynomialShape shape) {
  const auto pool = coordinate_pool(bundle, orders);
  const auto keys = basis_tuples(bundle.m(), degree);
  Form value(bundle.m(), degree);
  while (!keys.empty() && value.is_zero()) {
    for (const auto& key : keys) {
      if (rng.chance(3, 4)) {
        value.add(key, random_polynomial(rng, pool, shape.max_degree, shape.max_terms));
      }
    }
  }
  return Morphism(bundle, orders, std::move(value));
}

VerticalField random_vertical_field(RandomSource& rng, const BundleSpec& bundle,
                                    PolynomialShape shape) {
  const auto pool = coordinate_pool(bundle, Orders{0, std::nullopt});
  std::vector<Expr> components;
  for (std::size_t p = 0; p < bundle.n(); ++p) {
    components.push_back(random_polynomial(rng, pool, shape.max_degree, shape.max_terms));
  }
  return VerticalField(bundle, std::move(components));
}

Lagrangian random_lagrangian(RandomSource& rng, const BundleSpec& bundle, unsigned degree,
                             PolynomialShape shape) {
  return Lagrangian(bundle, random_morphism(rng, bundle, Orders{1, std::nullopt}, degree, shape).value());
}

BaseMorphism random_base_morphism(RandomSource& rng, const BundleSpec& pair, PolynomialShape shape) {
  const auto coords = total_coordinates(pair);
  std::vector<Expr> components;
  for (std::size_t a = 0; a < pair.second_names().size(); ++a) {
    components.push_back(random_polynomial(rng, coords, shape.max_degree, shape.max_terms));
  }
  return BaseMorphism(pair, std::move(components));
}

BaseMorphism taylor_matched(RandomSource& rng, const BaseMorphism& f, unsigned k,
                            const std::vector<Rational>& point) {
  const auto coords = total_coordinates(f.pair());
  std::vector<Expr> components = f.components();
  for (auto& c : components) {
    unsigned terms = 1 + rng.below(2);
    for (unsigned t = 0; t < terms; ++t) {
      Expr bump(rng.small_rational());
      for (unsigned j = 0; j < k + 2; ++j) {
        std::size_t at = rng.below(static_cast<unsigned>(coords.size()));
        bump *= Expr(coords[at]) - Expr(point[at]);
      }
      if (rng.chance(1, 2)) bump *= Expr(rng.pick(coords));
      c += bump;
    }
  }
  return BaseMorphism(f.pair(), std::move(components));
}

std::vector<Rational> random_point(RandomSource& rng, const BundleSpec& pair) {
  std::vector<Rational> point;
  for (std::size_t i = 0; i < pair.m() + pair.n(); ++i) {
    point.push_back(rng.chance(1, 4) ? Rational(0) : rng.small_rational());
  }
  return point;
}

std::vector<Expr> random_total_space_functions(RandomSource& rng, const BundleSpec& tower,
                                               PolynomialShape shape) {
  const BundleSpec total = tower.over_total_space();
  const auto pool = coordinate_pool(total, Orders{0, std::nullopt});
  std::vector<Symbol> base(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(total.m()));
  std::vector<Expr> out;
  for (std::size_t a = 0; a < total.n(); ++a) {
    out.push_back(random_polynomial(rng, base, shape.max_degree, shape.max_terms));
  }
  return out;
}

SectionFamily random_section(RandomSource& rng, const BundleSpec& tower, PolynomialShape shape) {
  return SectionFamily(tower, random_total_space_functions(rng, tower, shape));
}

}  // namespace jetvar
