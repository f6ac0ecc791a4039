#include "doctest.h"

#include "jetvar/errors.hpp"
#include "jetvar/generators.hpp"
#include "jetvar/variational.hpp"

using namespace jetvar;

namespace {

const BundleSpec& line() {
  static const BundleSpec b = standard_bundle(1, 1);
  return b;
}

const BundleSpec& plane() {
  static const BundleSpec b = standard_bundle(2, 1);
  return b;
}

Expr sym(const Symbol& s) { return Expr(s); }
Rational half(1, 2);

Lagrangian oscillator() {
  Expr u = sym(line().fiber(0));
  Expr ux = sym(line().jet(0, {1}));
  return Lagrangian(line(), Form::monomial(1, {0}, Expr(half) * (ux * ux - u * u)));
}

Lagrangian dirichlet() {
  Expr ux = sym(plane().jet(0, {1, 0}));
  Expr uy = sym(plane().jet(0, {0, 1}));
  return Lagrangian(plane(), Form::monomial(2, {0, 1}, Expr(half) * (ux * ux + uy * uy)));
}

}  // namespace

TEST_SUITE("variational") {
  TEST_CASE("vertical differential examples") {
    Expr ux = sym(line().jet(0, {1}));
    Lagrangian kinetic(line(), Form::monomial(1, {0}, Expr(half) * ux * ux));
    auto dv = vertical_differential(kinetic);
    CHECK(dv.value() == Form::monomial(1, {0}, ux * sym(line().vertical(0, {1}))));
    CHECK(dv.orders() == Orders{1, 1});

    Expr V = opaque("V", {0}, {sym(line().fiber(0))});
    auto dvV = vertical_differential(Lagrangian(line(), Form::monomial(1, {0}, V)));
    CHECK(dvV.value() ==
          Form::monomial(1, {0}, opaque("V", {1}, {sym(line().fiber(0))}) * sym(line().vertical(0, {0}))));

    CHECK(vertical_differential(Lagrangian(line(), Form(1, 1))).value().is_zero());
  }

  TEST_CASE("momentum examples") {
    Expr ux = sym(line().jet(0, {1}));
    Lagrangian kinetic(line(), Form::monomial(1, {0}, Expr(half) * ux * ux));
    auto B = momentum(kinetic);
    CHECK(B.degree() == 0);
    CHECK(B.orders() == Orders{1, 0});
    CHECK(B.value() == Form::scalar(1, ux * sym(line().vertical(0, {0}))));

    Expr X = sym(plane().vertical(0, {0, 0}));
    Form expected(2, 1);
    expected.add({1}, sym(plane().jet(0, {1, 0})) * X);
    expected.add({0}, -sym(plane().jet(0, {0, 1})) * X);
    CHECK(momentum(dirichlet()).value() == expected);

    Lagrangian potential(line(), Form::monomial(1, {0}, pow(sym(line().fiber(0)), 3)));
    CHECK(momentum(potential).value().is_zero());
    CHECK_THROWS_AS(momentum(Lagrangian(line(), Form::scalar(1, Expr(1)))), DegreeError);
  }

  TEST_CASE("Euler-Lagrange examples") {
    Expr u = sym(line().fiber(0));
    auto osc = euler_lagrange(oscillator());
    CHECK(osc.projectable());
    CHECK(osc.component(0, {0}) == -u - sym(line().jet(0, {2})));

    auto lap = euler_lagrange(dirichlet());
    CHECK(lap.component(0, {0, 1}) == -(sym(plane().jet(0, {2, 0})) + sym(plane().jet(0, {0, 2}))));

    Expr V = opaque("V", {0}, {u});
    auto pot = euler_lagrange(Lagrangian(line(), Form::monomial(1, {0}, V)));
    CHECK(pot.component(0, {0}) == opaque("V", {1}, {u}));
  }

  TEST_CASE("coordinate formula on the examples") {
    auto osc = coordinate_euler_lagrange(oscillator());
    CHECK(osc.at(0) == euler_lagrange(oscillator()).component(0, {0}));
    CHECK_THROWS_AS(coordinate_euler_lagrange(Lagrangian(plane(), Form::monomial(2, {0}, Expr(1)))),
                    DegreeError);
  }

  TEST_CASE("degree below the base dimension leaves an X_i residual") {
    // λ = u_x dx on a plane: B = du, DB = du_x dx + du_y dy, so du_y dy survives.
    Lagrangian lambda(plane(), Form::monomial(2, {0}, sym(plane().jet(0, {1, 0}))));
    auto result = analyze_euler_lagrange(lambda);
    REQUIRE(result.residual.size() == 1);
    CHECK(result.residual[0].vertical == plane().vertical(0, {0, 1}));
    CHECK(result.residual[0].key == BasisTuple{1});
    CHECK(result.residual[0].coefficient == Expr(-1));
    CHECK(describe(result.residual[0], plane()) == "(-du_y) dy");
    CHECK_THROWS_AS(euler_lagrange(lambda), ProjectabilityError);
  }

  TEST_CASE("Lagrangian validation") {
    CHECK_THROWS_AS(Lagrangian(line(), Form::monomial(1, {0}, sym(line().jet(0, {2})))),
                    CoordinateError);
    CHECK_THROWS_AS(Lagrangian(line(), Form::monomial(1, {0}, sym(line().vertical(0, {0})))),
                    CoordinateError);
    CHECK_THROWS_AS(Lagrangian(BundleSpec({"x"}, {"p"}, {"z"}), Form(1, 1)), BundleError);
    BundleSpec e = BundleSpec({"x"}, {"p"}, {"z"}).over_total_space();
    Lagrangian over_e(e, Form::monomial(2, {0, 1}, sym(e.jet(0, {1, 0})) * sym(e.jet(0, {0, 1}))));
    CHECK(over_e.classical());
    CHECK(euler_lagrange(over_e).component(0, {0, 1}) == Expr(-2) * sym(e.jet(0, {1, 1})));
  }
}

TEST_SUITE("variational properties") {
  TEST_CASE("classical Lagrangians are projectable and match the coordinate formula") {
    RandomSource rng(51);
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t m = 1 + rng.below(3);
      BundleSpec b = standard_bundle(m, 1 + rng.below(2));
      Lagrangian lambda = random_lagrangian(rng, b, static_cast<unsigned>(m));
      auto result = euler_lagrange(lambda);
      auto coords = coordinate_euler_lagrange(lambda);
      BasisTuple top = basis_tuples(m, static_cast<unsigned>(m)).front();
      for (std::size_t p = 0; p < b.n(); ++p) CHECK(result.component(p, top) == coords[p]);
    }
  }

  TEST_CASE("total derivatives are null Lagrangians") {
    RandomSource rng(52);
    std::vector<Symbol> vars = {line().base(0), line().fiber(0)};
    for (int trial = 0; trial < 20; ++trial) {
      Expr g = random_polynomial(rng, vars, 3, 4);
      Expr dg = total_derivative(line(), g, 0, Orders{0, std::nullopt});
      auto result = euler_lagrange(Lagrangian(line(), Form::monomial(1, {0}, dg)));
      CHECK(result.components.empty());
    }
  }

  TEST_CASE("Euler-Lagrange is linear") {
    RandomSource rng(53);
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t m = 1 + rng.below(2);
      BundleSpec b = standard_bundle(m, 1 + rng.below(2));
      auto l1 = random_lagrangian(rng, b, static_cast<unsigned>(m));
      auto l2 = random_lagrangian(rng, b, static_cast<unsigned>(m));
      Expr a(rng.small_rational());
      Expr c(rng.small_rational());
      Lagrangian sum(b, l1.value() * a + l2.value() * c);
      auto e1 = euler_lagrange(l1);
      auto e2 = euler_lagrange(l2);
      auto es = euler_lagrange(sum);
      BasisTuple top = basis_tuples(m, static_cast<unsigned>(m)).front();
      for (std::size_t p = 0; p < b.n(); ++p) {
        CHECK(es.component(p, top) == a * e1.component(p, top) + c * e2.component(p, top));
      }
    }
  }

  TEST_CASE("the difference is linear in the vertical block") {
    RandomSource rng(54);
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t m = 1 + rng.below(3);
      BundleSpec b = standard_bundle(m, 1 + rng.below(2));
      auto lambda = random_lagrangian(rng, b, 1 + rng.below(static_cast<unsigned>(m)));
      auto diffr = euler_lagrange_difference(lambda);
      Bindings zero;
      for (std::size_t p = 0; p < b.n(); ++p) {
        for (const auto& s : multi_indices_up_to(m, 1)) zero.emplace(b.vertical(p, s), Expr());
      }
      for (const auto& [key, c] : diffr.value().coefficients()) CHECK(substitute(c, zero).is_zero());
    }
  }
}
