#include "doctest.h"

#include "jetvar/errors.hpp"
#include "jetvar/generators.hpp"
#include "jetvar/jetcalc.hpp"

using namespace jetvar;

namespace {

const BundleSpec& line() {
  static const BundleSpec b = standard_bundle(1, 1);
  return b;
}

Expr x() { return Expr(line().base(0)); }
Expr u() { return Expr(line().fiber(0)); }
Expr u1() { return Expr(line().jet(0, {1})); }
Expr u11() { return Expr(line().jet(0, {2})); }
Expr X() { return Expr(line().vertical(0, {0})); }
Expr X1() { return Expr(line().vertical(0, {1})); }

Morphism scalar(const Expr& e, Orders o) { return Morphism(line(), o, Form::scalar(1, e)); }

VerticalField field(const Expr& e) { return VerticalField(line(), {e}); }

// Random bundle, orders and degree inside the acceptance corpus bounds.
struct Draw {
  BundleSpec bundle;
  Orders orders;
  unsigned degree;
};

Draw draw(RandomSource& rng, unsigned max_r, bool vertical) {
  std::size_t m = 1 + rng.below(3);
  std::size_t n = 1 + rng.below(2);
  unsigned r = rng.below(max_r + 1);
  std::optional<unsigned> s;
  if (vertical || rng.chance(1, 2)) s = rng.below(r + 1);
  return {standard_bundle(m, n), Orders{r, s}, rng.below(static_cast<unsigned>(m))};
}

}  // namespace

TEST_SUITE("jetcalc") {
  TEST_CASE("total derivative examples") {
    Orders o{0, std::nullopt};
    CHECK(total_derivative(line(), x() * u(), 0, o) == u() + x() * u1());
    CHECK(total_derivative(line(), Expr(5), 0, o).is_zero());
    CHECK(total_derivative(line(), u() * X(), 0, Orders{0, 0}) == u1() * X() + u() * X1());
    CHECK_THROWS_AS(total_derivative(line(), u1(), 0, o), CoordinateError);
  }

  TEST_CASE("holonomic prolongation examples") {
    auto phi = scalar(u(), Orders{0, std::nullopt});
    auto j0 = holonomic_prolongation(phi, 0);
    CHECK(j0.components.size() == 1);
    CHECK(j0.component({}, MultiIndex{0}) == u());

    auto j2 = holonomic_prolongation(phi, 2);
    CHECK(j2.component({}, MultiIndex{1}) == u1());
    CHECK(j2.component({}, MultiIndex{2}) == u11());
    CHECK(j2.source_orders == Orders{2, std::nullopt});

    auto j1 = holonomic_prolongation(scalar(u() * X(), Orders{0, 0}), 1);
    CHECK(j1.component({}, MultiIndex{1}) == u1() * X() + u() * X1());
    CHECK(j1.source_orders == Orders{1, 1});
  }

  TEST_CASE("delta examples") {
    BundleSpec plane = standard_bundle(2, 1);
    Expr a1(plane.jet(0, {1, 0}));
    Expr a2 = Expr(plane.jet(0, {0, 1})) * Expr(plane.base(0));
    Form one(2, 1);
    one.add({0}, a1);
    one.add({1}, a2);
    Morphism phi(plane, Orders{1, std::nullopt}, one);
    auto jet = holonomic_prolongation(phi, 1);
    Expr expected = jet.component({1}, MultiIndex{1, 0}) - jet.component({0}, MultiIndex{0, 1});
    CHECK(delta(jet) == Form::monomial(2, {0, 1}, expected));

    auto f = holonomic_prolongation(scalar(u() * u(), Orders{0, std::nullopt}), 1);
    CHECK(delta(f) == Form::monomial(1, {0}, Expr(2) * u() * u1()));

    auto top = holonomic_prolongation(Morphism(line(), Orders{0, std::nullopt},
                                               Form::monomial(1, {0}, u())),
                                      1);
    CHECK(delta(top).is_zero());
    CHECK_THROWS_AS(delta(holonomic_prolongation(scalar(u(), Orders{0, std::nullopt}), 0)),
                    OrderError);
  }

  TEST_CASE("formal exterior differential examples") {
    auto d = formal_exterior_differential(scalar(u() * X(), Orders{0, 0}));
    CHECK(d.value() == Form::monomial(1, {0}, u1() * X() + u() * X1()));
    CHECK(d.orders() == Orders{1, 1});
    CHECK(formal_exterior_differential(scalar(Expr(3), Orders{0, 0})).value().is_zero());
    auto top = Morphism(line(), Orders{1, std::nullopt}, Form::monomial(1, {0}, u1() * u1()));
    auto dtop = formal_exterior_differential(top);
    CHECK(dtop.value().is_zero());
    CHECK(dtop.degree() == 2);
  }

  TEST_CASE("flow prolongation examples") {
    auto j = flow_prolongation(field(u()), 1);
    CHECK(j.at({0, MultiIndex{0}}) == u());
    CHECK(j.at({0, MultiIndex{1}}) == u1());

    auto c = flow_prolongation(field(Expr(Rational(3, 2))), 3);
    CHECK(c.at({0, MultiIndex{0}}) == Expr(Rational(3, 2)));
    for (unsigned k = 1; k <= 3; ++k) CHECK(c.at({0, MultiIndex{k}}).is_zero());

    auto xf = flow_prolongation(field(x()), 1);
    CHECK(xf.at({0, MultiIndex{1}}) == Expr(1));
  }

  TEST_CASE("plug vertical examples") {
    CHECK(plug_vertical(scalar(u() * X(), Orders{0, 0}), field(u())).value() ==
          Form::scalar(1, u() * u()));
    auto plain = scalar(u() * u1(), Orders{1, 1});
    auto plugged = plug_vertical(plain, field(u()));
    CHECK(plugged.value() == plain.value());
    CHECK_FALSE(plugged.orders().s.has_value());
    CHECK(plug_vertical(scalar(X1(), Orders{1, 1}), field(u())).value() == Form::scalar(1, u1()));
    CHECK_THROWS_AS(plug_vertical(scalar(u(), Orders{0, std::nullopt}), field(u())), OrderError);
  }

  TEST_CASE("naturality examples") {
    auto phi = scalar(u() * X(), Orders{0, 0});
    auto report = check_naturality(phi, field(u()), 1);
    CHECK(report.holds);
    auto left = holonomic_prolongation(plug_vertical(phi, field(u())), 1);
    CHECK(left.component({}, MultiIndex{0}) == u() * u());
    CHECK(left.component({}, MultiIndex{1}) == Expr(2) * u() * u1());
    CHECK(check_naturality(scalar(u1() * X1() * X1(), Orders{1, 1}), field(x() * u()), 0).holds);
  }

  TEST_CASE("morphism validation") {
    CHECK_THROWS_AS(scalar(u(), Orders{0, 1}), OrderError);
    CHECK_THROWS_AS(scalar(u11(), Orders{1, std::nullopt}), CoordinateError);
    CHECK_THROWS_AS(scalar(X(), Orders{1, std::nullopt}), CoordinateError);
    CHECK_THROWS_AS(Morphism(line(), Orders{0, std::nullopt}, Form::scalar(2, u())), RangeError);
    CHECK_THROWS_AS(field(u1()), CoordinateError);
    auto t = scalar(u1() * X(), Orders{2, 2}).tightened();
    CHECK(t.orders() == Orders{1, 0});
  }
}

TEST_SUITE("jetcalc properties") {
  TEST_CASE("total derivatives commute") {
    RandomSource rng(41);
    for (int trial = 0; trial < 60; ++trial) {
      Draw d = draw(rng, 2, false);
      auto pool = coordinate_pool(d.bundle, d.orders);
      Expr e = random_polynomial(rng, pool, 3, 4);
      std::size_t i = rng.below(static_cast<unsigned>(d.bundle.m()));
      std::size_t j = rng.below(static_cast<unsigned>(d.bundle.m()));
      Orders up{d.orders.r + 1, d.orders.s ? std::optional<unsigned>(*d.orders.s + 1) : std::nullopt};
      Expr ij = total_derivative(d.bundle, total_derivative(d.bundle, e, i, d.orders), j, up);
      Expr ji = total_derivative(d.bundle, total_derivative(d.bundle, e, j, d.orders), i, up);
      CHECK(ij == ji);
    }
  }

  TEST_CASE("direct coordinate formula matches delta of the prolongation") {
    RandomSource rng(42);
    for (int trial = 0; trial < 60; ++trial) {
      Draw d = draw(rng, 2, false);
      Morphism phi = random_morphism(rng, d.bundle, d.orders, d.degree);
      auto composed = formal_exterior_differential(phi);
      auto direct = formal_exterior_differential_direct(phi);
      CHECK(composed.value() == direct.value());
      CHECK(composed.orders() == direct.orders());
    }
  }

  TEST_CASE("D applied twice vanishes") {
    RandomSource rng(43);
    for (int trial = 0; trial < 40; ++trial) {
      BundleSpec b = standard_bundle(3, 1 + rng.below(2));
      unsigned r = rng.below(2);
      std::optional<unsigned> s;
      if (rng.chance(1, 2)) s = rng.below(r + 1);
      Morphism phi = random_morphism(rng, b, Orders{r, s}, rng.below(2));
      CHECK(formal_exterior_differential(formal_exterior_differential(phi)).value().is_zero());
    }
  }

  TEST_CASE("total derivative is the chain rule along sections") {
    RandomSource rng(44);
    for (int trial = 0; trial < 40; ++trial) {
      Draw d = draw(rng, 1, true);
      std::vector<Symbol> base;
      for (std::size_t i = 0; i < d.bundle.m(); ++i) base.push_back(d.bundle.base(i));
      std::vector<Expr> section;
      std::vector<Expr> variation;
      for (std::size_t p = 0; p < d.bundle.n(); ++p) {
        section.push_back(random_polynomial(rng, base, 3, 3));
        variation.push_back(random_polynomial(rng, base, 3, 3));
      }
      Bindings b = section_bindings(d.bundle, section, d.orders.r + 1);
      for (auto& kv : variation_bindings(d.bundle, variation, *d.orders.s + 1)) b.insert(kv);

      Expr e = random_polynomial(rng, coordinate_pool(d.bundle, d.orders), 3, 3);
      std::size_t i = rng.below(static_cast<unsigned>(d.bundle.m()));
      Expr lhs = substitute(total_derivative(d.bundle, e, i, d.orders), b);
      Expr rhs = diff(substitute(e, b), d.bundle.base(i));
      CHECK(lhs == rhs);
    }
  }

  TEST_CASE("naturality on random instances") {
    RandomSource rng(45);
    for (int trial = 0; trial < 40; ++trial) {
      Draw d = draw(rng, 1, true);
      Morphism phi = random_morphism(rng, d.bundle, d.orders, d.degree, {2, 3});
      VerticalField eta = random_vertical_field(rng, d.bundle);
      auto report = check_naturality(phi, eta, rng.below(3));
      CHECK(report.holds);
    }
  }

  TEST_CASE("D keeps a morphism linear in X") {
    // φ = a(x, u, u_α) X^p (no X_σ with σ > 0): Dφ stays linear in the vertical block.
    RandomSource rng(46);
    for (int trial = 0; trial < 40; ++trial) {
      BundleSpec b = standard_bundle(1 + rng.below(3), 1 + rng.below(2));
      unsigned r = rng.below(2);
      auto pool = coordinate_pool(b, Orders{r, std::nullopt});
      Form value(b.m(), 0);
      Expr c;
      for (std::size_t p = 0; p < b.n(); ++p) {
        c += random_polynomial(rng, pool, 2, 2) * Expr(b.vertical(p, MultiIndex(b.m())));
      }
      value.add({}, c);
      auto d = formal_exterior_differential(Morphism(b, Orders{r, 0}, value));
      for (const auto& [key, coeff] : d.value().coefficients()) {
        Bindings scaled;
        for (std::size_t p = 0; p < b.n(); ++p) {
          for (const auto& sigma : multi_indices_up_to(b.m(), 1)) {
            scaled.emplace(b.vertical(p, sigma), Expr(2) * Expr(b.vertical(p, sigma)));
          }
        }
        CHECK(substitute(coeff, scaled) == Expr(2) * coeff);
      }
    }
  }
}
