#include "doctest.h"

#include "jetvar/errors.hpp"
#include "jetvar/form.hpp"
#include "jetvar/generators.hpp"

using namespace jetvar;

namespace {

const BundleSpec& space() {
  static const BundleSpec b = standard_bundle(3, 1);
  return b;
}

Expr x() { return Expr(space().base(0)); }
Expr u() { return Expr(space().fiber(0)); }

Form dx(unsigned i, std::size_t dim = 3) { return Form::monomial(dim, {i}, Expr(1)); }

Form random_form(RandomSource& rng, unsigned degree) {
  std::vector<Symbol> vars = {space().base(0), space().base(1), space().fiber(0)};
  Form f(3, degree);
  for (const auto& key : basis_tuples(3, degree)) {
    if (rng.chance(2, 3)) f.add(key, random_polynomial(rng, vars, 2, 2));
  }
  return f;
}

}  // namespace

TEST_SUITE("forms") {
  TEST_CASE("wedge examples") {
    CHECK(wedge(dx(0), dx(0)).is_zero());
    CHECK(wedge(dx(1), dx(0)) == Form::monomial(3, {0, 1}, Expr(-1)));
    Form a = Form::monomial(3, {0}, u());
    Form b = Form::monomial(3, {1}, x());
    CHECK(wedge(a, b) == Form::monomial(3, {0, 1}, u() * x()));
    CHECK_THROWS_AS(wedge(dx(0, 2), dx(0, 3)), RangeError);
  }

  TEST_CASE("interior product examples") {
    Form w = Form::monomial(3, {0, 1}, Expr(1));
    CHECK(interior_product(0, w) == dx(1));
    CHECK(interior_product(1, w) == -dx(0));
    CHECK(interior_product(2, w).is_zero());
    CHECK_THROWS_AS(interior_product(0, Form::scalar(3, Expr(1))), DegreeError);
  }

  TEST_CASE("degree beyond the range is zero") {
    CHECK(wedge(Form::monomial(2, {0, 1}, Expr(1)), Form::monomial(2, {0}, Expr(1))).is_zero());
    CHECK(basis_tuples(2, 3).empty());
    CHECK(basis_tuples(3, 2) == std::vector<BasisTuple>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(basis_tuples(3, 0) == std::vector<BasisTuple>{{}});
  }

  TEST_CASE("add validates keys") {
    Form f(2, 1);
    CHECK_THROWS_AS(f.add({0, 1}, Expr(1)), DegreeError);
    CHECK_THROWS_AS(f.add({2}, Expr(1)), RangeError);
    f.add({0}, u());
    f.add({0}, -u());
    CHECK(f.is_zero());
  }

  TEST_CASE("rendering") {
    Form f = Form::monomial(2, {1, 0}, u());
    CHECK(to_string(f, {"x", "y"}) == "(-u) dx^dy");
    CHECK(to_latex(f, {"x", "y"}) == "(-u) \\, \\mathrm{d}x \\wedge \\mathrm{d}y");
    CHECK(to_string(Form(2, 1), {"x", "y"}) == "0");
  }
}

TEST_SUITE("forms properties") {
  TEST_CASE("wedge is associative and graded commutative") {
    RandomSource rng(31);
    for (int trial = 0; trial < 80; ++trial) {
      Form a = random_form(rng, rng.below(3));
      Form b = random_form(rng, rng.below(3));
      Form c = random_form(rng, rng.below(2));
      CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
      Form ba = wedge(b, a);
      CHECK(wedge(a, b) == ((a.degree() * b.degree()) % 2 ? -ba : ba));
    }
  }

  TEST_CASE("interior product is an antiderivation") {
    RandomSource rng(32);
    for (int trial = 0; trial < 80; ++trial) {
      Form a = random_form(rng, 1 + rng.below(2));
      Form b = random_form(rng, 1 + rng.below(2));
      unsigned j = rng.below(3);
      Form lhs = interior_product(j, wedge(a, b));
      Form rhs = wedge(interior_product(j, a), b);
      Form second = wedge(a, interior_product(j, b));
      rhs += a.degree() % 2 ? -second : second;
      CHECK(lhs == rhs);
    }
  }

  TEST_CASE("double contraction vanishes") {
    RandomSource rng(33);
    for (int trial = 0; trial < 60; ++trial) {
      Form a = random_form(rng, 2 + rng.below(2));
      unsigned j = rng.below(3);
      CHECK(interior_product(j, interior_product(j, a)).is_zero());
    }
  }
}
