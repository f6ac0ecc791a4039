#include "doctest.h"

#include "jetvar/bundle.hpp"
#include "jetvar/errors.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/multi_index.hpp"
#include "jetvar/random.hpp"
#include "jetvar/term.hpp"

using namespace jetvar;

namespace {

const BundleSpec& plane() {
  static const BundleSpec b({"x", "y"}, {"u", "v"});
  return b;
}

Expr x() { return Expr(plane().base(0)); }
Expr y() { return Expr(plane().base(1)); }
Expr u() { return Expr(plane().fiber(0)); }
Expr v() { return Expr(plane().fiber(1)); }
Expr u1() { return Expr(plane().jet(0, {1, 0})); }
Expr X() { return Expr(plane().vertical(0, {0, 0})); }

std::vector<Symbol> pool() {
  return {plane().base(0), plane().base(1), plane().fiber(0), plane().fiber(1),
          plane().jet(0, {1, 0}), plane().vertical(1, {0, 1})};
}

}  // namespace

TEST_SUITE("multi_index") {
  TEST_CASE("increment examples") {
    CHECK(mi_increment(MultiIndex{0, 0}, 0) == MultiIndex{1, 0});
    CHECK(mi_increment(MultiIndex{2, 1}, 1) == MultiIndex{2, 2});
    CHECK(mi_increment(mi_increment(MultiIndex{0}, 0), 0) == MultiIndex{2});
    CHECK(mi_increment(MultiIndex{2, 1}, 1).order() == 4);
  }

  TEST_CASE("increment outside the range is rejected") {
    CHECK_THROWS_AS(mi_increment(MultiIndex{0, 0}, 2), RangeError);
  }

  TEST_CASE("enumeration counts match binomials") {
    for (std::size_t m = 1; m <= 4; ++m) {
      for (unsigned r = 0; r <= 4; ++r) {
        auto all = multi_indices_up_to(m, r);
        CHECK(all.size() == binomial(m + r, r));
        CHECK(std::is_sorted(all.begin(), all.end()));
        CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
      }
    }
    auto second = multi_indices_of_order(2, 2);
    REQUIRE(second.size() == 3);
    CHECK(second[0] == MultiIndex{2, 0});
    CHECK(second[1] == MultiIndex{1, 1});
    CHECK(second[2] == MultiIndex{0, 2});
  }
}

TEST_SUITE("expr") {
  TEST_CASE("diff examples") {
    CHECK(diff(u() * u(), plane().fiber(0)) == Expr(2) * u());
    Expr e = x() * apply(Function::Sin, u());
    CHECK(diff(e, plane().fiber(0)) == x() * apply(Function::Cos, u()));
    CHECK(diff(Expr(7), plane().base(0)).is_zero());
  }

  TEST_CASE("normalize examples") {
    using K = Term::Kind;
    Term uu = Term::var(plane().fiber(0));
    Term xx = Term::var(plane().base(0));
    // (u+1)^2 - u^2 - 2u - 1
    Term t = Term::binary(
        K::Sub,
        Term::binary(K::Sub,
                     Term::binary(K::Sub, Term::power(Term::binary(K::Add, uu, Term::num(1)), 2),
                                  Term::power(uu, 2)),
                     Term::binary(K::Mul, Term::num(2), uu)),
        Term::num(1));
    CHECK(normalize(t).is_zero());

    Term comm = Term::binary(K::Add, Term::binary(K::Mul, uu, xx), Term::binary(K::Mul, xx, uu));
    CHECK(normalize(comm) == Expr(2) * x() * u());
    CHECK(to_string(normalize(comm)) == "2*x*u");

    Term s = Term::call("sin", {uu});
    Expr sq = normalize(Term::binary(K::Mul, s, s));
    CHECK(sq == pow(apply(Function::Sin, u()), 2));
    CHECK(to_string(sq) == "sin(u)^2");
  }

  TEST_CASE("substitute examples") {
    CHECK(substitute(X() * u(), {{plane().vertical(0, {0, 0}), u()}}) == u() * u());
    CHECK(substitute(u1(), {{plane().fiber(0), x()}}) == u1());
    Expr swapped = substitute(u() + v(), {{plane().fiber(0), v()}, {plane().fiber(1), u()}});
    CHECK(swapped == u() + v());
    Expr asym = substitute(u() - v(), {{plane().fiber(0), v()}, {plane().fiber(1), u()}});
    CHECK(asym == v() - u());
  }

  TEST_CASE("zero and constants are canonical") {
    CHECK(Expr().is_zero());
    CHECK((u() - u()).is_zero());
    CHECK(Expr(Rational(3, 6)).constant_value() == Rational(1, 2));
    CHECK(to_string(Expr()) == "0");
    CHECK(to_string(Expr(Rational(-1, 2)) * u1() * u1()) == "-1/2*u_x^2");
  }

  TEST_CASE("rational powers and reciprocals") {
    CHECK(x() * pow(x(), -1) == Expr(1));
    CHECK(pow(Expr(2) * x(), -2) == Expr(Rational(1, 4)) * pow(x(), -2));
    Expr r = pow(u() + Expr(1), -1);
    CHECK(diff(r, plane().fiber(0)) == -pow(u() + Expr(1), -2));
    CHECK(pow(pow(u() + Expr(1), -1), -1) == u() + Expr(1));
    CHECK_THROWS_AS(pow(Expr(), -1), std::domain_error);
  }

  TEST_CASE("elementary-function atoms are independent") {
    Expr s = apply(Function::Sin, u());
    Expr c = apply(Function::Cos, u());
    // Sound but incomplete: the Pythagorean identity is not applied.
    CHECK_FALSE((s * s + c * c - Expr(1)).is_zero());
    CHECK(apply(Function::Sin, Expr()).is_zero());
    CHECK(apply(Function::Exp, Expr()) == Expr(1));
    CHECK(diff(apply(Function::Ln, u()), plane().fiber(0)) == pow(u(), -1));
  }

  TEST_CASE("opaque functions differentiate formally") {
    Expr V = opaque("V", {0}, {u()});
    Expr dV = diff(V, plane().fiber(0));
    CHECK(dV == opaque("V", {1}, {u()}));
    CHECK(to_string(dV) == "V'(u)");
    Expr g = opaque("g", {0, 0}, {x(), u()});
    Expr dg = diff(g * g, plane().base(0));
    CHECK(dg == Expr(2) * g * opaque("g", {1, 0}, {x(), u()}));
  }

  TEST_CASE("numeric evaluation") {
    Expr e = Expr(Rational(1, 2)) * x() * x() + apply(Function::Cos, u());
    double value = evaluate(e, [](const Symbol& s) { return s.name == "x" ? 2.0 : 0.0; });
    CHECK(value == doctest::Approx(3.0));
  }
}

TEST_SUITE("expr properties") {
  TEST_CASE("mixed partials commute") {
    RandomSource rng(11);
    auto vars = pool();
    for (int trial = 0; trial < 200; ++trial) {
      Expr e = random_polynomial(rng, vars, 4, 5);
      if (trial % 3 == 0) e = e * apply(Function::Sin, random_polynomial(rng, vars, 2, 2));
      const Symbol& a = rng.pick(vars);
      const Symbol& b = rng.pick(vars);
      CHECK(diff(diff(e, a), b) == diff(diff(e, b), a));
    }
  }

  TEST_CASE("Leibniz rule") {
    RandomSource rng(12);
    auto vars = pool();
    for (int trial = 0; trial < 200; ++trial) {
      Expr e = random_polynomial(rng, vars, 3, 4);
      Expr f = random_polynomial(rng, vars, 3, 4);
      const Symbol& c = rng.pick(vars);
      CHECK(diff(e * f, c) == diff(e, c) * f + e * diff(f, c));
    }
  }

  TEST_CASE("chain rule through substitution") {
    RandomSource rng(13);
    const Symbol us = plane().fiber(0);
    const Symbol xs = plane().base(0);
    std::vector<Symbol> outer = {us, plane().base(1), plane().fiber(1)};
    std::vector<Symbol> inner = {xs, plane().base(1)};
    for (int trial = 0; trial < 100; ++trial) {
      Expr e = random_polynomial(rng, outer, 3, 4);
      Expr g = random_polynomial(rng, inner, 2, 3);
      Bindings b{{us, g}};
      Expr lhs = diff(substitute(e, b), xs);
      Expr rhs = substitute(diff(e, us), b) * diff(g, xs) + substitute(diff(e, xs), b);
      CHECK(lhs == rhs);
    }
  }

  TEST_CASE("normalization is idempotent and decides polynomial identities") {
    RandomSource rng(14);
    auto vars = pool();
    for (int trial = 0; trial < 100; ++trial) {
      Expr p = random_polynomial(rng, vars, 3, 4);
      Expr q = random_polynomial(rng, vars, 3, 4);
      CHECK(normalize(to_term(p)) == p);
      CHECK((pow(p + q, 2) - p * p - Expr(2) * p * q - q * q).is_zero());
      CHECK((p * q - q * p).is_zero());
    }
  }
}
