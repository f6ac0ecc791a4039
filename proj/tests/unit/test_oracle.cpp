#include "doctest.h"

#include <cmath>
#include <numbers>

#include "jetvar/errors.hpp"
#include "jetvar/generators.hpp"
#include "jetvar/oracle.hpp"

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

GridSection square_of_x(std::size_t n) {
  return GridSection::sample({n}, {0.0}, {1.0}, {[](const std::vector<double>& x) { return x[0] * x[0]; }});
}

GridSection sine(std::size_t n) {
  return GridSection::sample({n}, {0.0}, {1.0}, {[](const std::vector<double>& x) { return std::sin(x[0]); }});
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("eval_jet examples") {
    auto s = square_of_x(101);  // x = 0.5 at index 50
    GridPoint mid{50};
    CHECK(eval_jet(line(), sym(line().fiber(0)), s, mid) == doctest::Approx(0.25).epsilon(1e-15));
    // Central differences are exact on quadratics.
    CHECK(eval_jet(line(), sym(line().jet(0, {1})), s, mid) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(eval_jet(line(), sym(line().jet(0, {2})), s, mid) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK_THROWS_AS(eval_jet(line(), sym(line().jet(0, {1})), s, GridPoint{0}), StencilError);
    CHECK_THROWS_AS(eval_jet(line(), sym(line().vertical(0, {0})), s, mid), CoordinateError);
  }

  TEST_CASE("mixed second difference") {
    auto s = GridSection::sample({21, 21}, {0.0, 0.0}, {1.0, 2.0},
                                 {[](const std::vector<double>& x) { return x[0] * x[1] + x[1] * x[1]; }});
    CHECK(s.derivative(0, MultiIndex{1, 1}, {5, 7}) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(s.derivative(0, MultiIndex{0, 2}, {5, 7}) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(s.derivative(0, MultiIndex{1, 0}, {5, 7}) == doctest::Approx(s.coordinate(1, 7)).epsilon(1e-10));
    CHECK_THROWS_AS(s.derivative(0, MultiIndex{3, 0}, {5, 7}), OrderError);
  }

  TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridSection({4}, {0.0}, {1.0}, 1), RangeError);
    CHECK_THROWS_AS(GridSection({5, 5, 5}, {0, 0, 0}, {1, 1, 1}, 1), RangeError);
    CHECK_THROWS_AS(GridSection({5}, {1.0}, {1.0}, 1), RangeError);
    GridSection g({5, 6}, {0, 0}, {1, 1}, 1);
    CHECK(g.interior(0).size() == 30);
    CHECK(g.interior(2).size() == 2);
    CHECK(g.interior(1).front() == GridPoint{1, 1});
  }

  TEST_CASE("total derivative examples") {
    Expr u = sym(line().fiber(0));
    auto s = sine(1000);
    CHECK(check_total_derivative(line(), u * u, s).max_relative_error <= 1e-4);
    CHECK(check_total_derivative(line(), Expr(3), s).max_relative_error == 0.0);
    CHECK(check_total_derivative(line(), sym(line().base(0)), s).max_relative_error < 1e-12);
  }

  TEST_CASE("second-order convergence") {
    Expr u = sym(line().fiber(0));
    Expr e = u * u * sym(line().jet(0, {1}));
    double coarse = check_total_derivative(line(), e, sine(101)).max_relative_error;
    double fine = check_total_derivative(line(), e, sine(201)).max_relative_error;
    CHECK(coarse / fine >= 3.0);
    CHECK(coarse / fine <= 5.0);
  }

  TEST_CASE("action variation, oscillator") {
    Expr u = sym(line().fiber(0));
    Expr ux = sym(line().jet(0, {1}));
    Lagrangian lambda(line(), Form::monomial(1, {0}, Expr(Rational(1, 2)) * (ux * ux - u * u)));
    auto s = GridSection::sample({2000}, {0.0}, {1.0},
                                 {[](const std::vector<double>& x) { return std::sin(std::numbers::pi * x[0]); }});
    auto eta = GridSection::sample({2000}, {0.0}, {1.0}, {bump({0.5}, 0.3)});
    auto r = check_action_variation(lambda, s, eta);
    CHECK(r.warnings.empty());
    CHECK(r.relative_error <= 1e-4);
    CHECK(std::abs(r.lhs) > 1e-3);

    auto flipped = check_action_variation(lambda, s, GridSection(eta).combined(-2.0, eta));
    CHECK(flipped.lhs == doctest::Approx(-r.lhs).epsilon(1e-6));
    CHECK(flipped.rhs == doctest::Approx(-r.rhs).epsilon(1e-12));
  }

  TEST_CASE("action variation, trivial and boundary cases") {
    Lagrangian constant(line(), Form::monomial(1, {0}, sym(line().base(0))));
    auto s = sine(200);
    auto eta = GridSection::sample({200}, {0.0}, {1.0}, {bump({0.5}, 0.3)});
    auto r = check_action_variation(constant, s, eta);
    CHECK(r.lhs == 0.0);
    CHECK(r.rhs == 0.0);
    CHECK(r.relative_error == 0.0);

    auto wide = GridSection::sample({200}, {0.0}, {1.0}, {[](const std::vector<double>&) { return 1.0; }});
    Expr u = sym(line().fiber(0));
    Lagrangian lam(line(), Form::monomial(1, {0}, u * u));
    CHECK_FALSE(check_action_variation(lam, s, wide).warnings.empty());
  }

  TEST_CASE("action variation, Dirichlet density") {
    Expr ux = sym(plane().jet(0, {1, 0}));
    Expr uy = sym(plane().jet(0, {0, 1}));
    Lagrangian lambda(plane(), Form::monomial(2, {0, 1}, Expr(Rational(1, 2)) * (ux * ux + uy * uy)));
    auto field = [](const std::vector<double>& x) {
      return std::sin(std::numbers::pi * x[0]) * std::sin(std::numbers::pi * x[1]);
    };
    auto s = GridSection::sample({60, 60}, {0.0, 0.0}, {1.0, 1.0}, {field});
    auto eta = GridSection::sample({60, 60}, {0.0, 0.0}, {1.0, 1.0}, {bump({0.4, 0.55}, 0.3)});
    auto r = check_action_variation(lambda, s, eta);
    CHECK(r.relative_error <= 1e-3);
  }

  TEST_CASE("pairwise sum") {
    std::vector<double> v(1000, 0.1);
    CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  }
}
