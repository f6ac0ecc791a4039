#include "jetvar/properties.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "jetvar/errors.hpp"
#include "jetvar/generators.hpp"
#include "jetvar/oracle.hpp"
#include "jetvar/parser.hpp"

namespace jetvar {

void PropertyResult::record(bool success, const std::string& what) {
  ++trials;
  if (success) {
    ++passed;
  } else if (failures.size() < 5) {
    failures.push_back(what);
  }
}

namespace {

// Runs one trial, turning library errors into a recorded failure.
template <class Fn>
void trial(PropertyResult& result, std::size_t index, Fn&& fn) {
  std::string what = "trial " + std::to_string(index);
  try {
    std::string detail;
    bool ok = fn(detail);
    result.record(ok, detail.empty() ? what : what + ": " + detail);
  } catch (const Error& e) {
    result.record(false, what + ": " + e.what());
  }
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) { return seed * 0x9E3779B97F4A7C15ull + salt; }

struct Draw {
  BundleSpec bundle;
  Orders orders;
  unsigned degree;
};

// m <= 3, n <= 2, r, s <= 2 (s may be absent), l <= m − 1.
Draw draw_morphism_shape(RandomSource& rng) {
  std::size_t m = 1 + rng.below(3);
  std::size_t n = 1 + rng.below(2);
  unsigned r = rng.below(3);
  std::optional<unsigned> s;
  if (rng.chance(2, 3)) s = rng.below(r + 1);
  return {standard_bundle(m, n), Orders{r, s}, rng.below(static_cast<unsigned>(m))};
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

std::vector<Morphism> random_morphism_corpus(std::uint64_t seed, std::size_t count) {
  RandomSource rng(mix(seed, 1));
  std::vector<Morphism> out;
  for (std::size_t t = 0; t < count; ++t) {
    Draw d = draw_morphism_shape(rng);
    out.push_back(random_morphism(rng, d.bundle, d.orders, d.degree));
  }
  return out;
}

PropertyResult formal_differential_routes(const std::vector<Morphism>& corpus) {
  PropertyResult out{"formal differential: direct formula = delta of prolongation", 0, 0, {}, {}};
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    const Morphism& phi = corpus[t];
    trial(out, t, [&](std::string& detail) {
      auto composed = formal_exterior_differential(phi);
      auto direct = formal_exterior_differential_direct(phi);
      if (composed.value() == direct.value() && composed.orders() == direct.orders()) return true;
      const auto& names = phi.bundle().base_names();
      detail = to_string(composed.value(), names) + " vs " + to_string(direct.value(), names);
      return false;
    });
  }
  return out;
}

PropertyResult formal_differential_routes(std::uint64_t seed, std::size_t trials) {
  return formal_differential_routes(random_morphism_corpus(seed, trials));
}

PropertyResult formal_differential_squares_to_zero(const std::vector<Morphism>& corpus) {
  PropertyResult out{"formal differential squares to zero", 0, 0, {}, {}};
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    const Morphism& phi = corpus[t];
    if (phi.degree() + 2 > phi.bundle().m()) continue;
    trial(out, t, [&](std::string& detail) {
      Form dd = formal_exterior_differential(formal_exterior_differential(phi)).value();
      if (dd.is_zero()) return true;
      detail = to_string(dd, phi.bundle().base_names());
      return false;
    });
  }
  return out;
}

PropertyResult formal_differential_squares_to_zero(std::uint64_t seed, std::size_t trials) {
  return formal_differential_squares_to_zero(random_morphism_corpus(seed, trials));
}

PropertyResult naturality(std::uint64_t seed, std::size_t trials) {
  PropertyResult out{"naturality under vertical flows", 0, 0, {}, {}};
  RandomSource rng(mix(seed, 3));
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t m = 1 + rng.below(2);
    BundleSpec b = standard_bundle(m, 1 + rng.below(2));
    unsigned r = rng.below(2);
    unsigned s = rng.below(r + 1);
    auto phi = random_morphism(rng, b, Orders{r, s}, rng.below(static_cast<unsigned>(m) + 1), {2, 3});
    auto eta = random_vertical_field(rng, b);
    unsigned k = rng.below(3);
    trial(out, t, [&](std::string& detail) {
      auto report = check_naturality(phi, eta, k);
      if (!report.holds && report.witness) {
        detail = to_string(report.witness->left) + " vs " + to_string(report.witness->right);
      }
      return report.holds;
    });
  }
  return out;
}

PropertyResult projectability(std::uint64_t seed, std::size_t trials, bool all_degrees) {
  PropertyResult out{all_degrees ? "projectability of E(lambda), 1 <= l <= m"
                                 : "projectability of E(lambda), l = m",
                     0, 0, {}, {}};
  RandomSource rng(mix(seed, 4));
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t m = 1 + rng.below(3);
    BundleSpec b = standard_bundle(m, 1 + rng.below(2));
    unsigned l = all_degrees ? 1 + rng.below(static_cast<unsigned>(m)) : static_cast<unsigned>(m);
    auto lambda = random_lagrangian(rng, b, l);
    trial(out, t, [&](std::string& detail) {
      auto result = analyze_euler_lagrange(lambda);
      if (result.projectable()) return true;
      detail = "m=" + std::to_string(m) + " l=" + std::to_string(l) + ", residual " +
               describe(result.residual.front(), b);
      return false;
    });
  }
  return out;
}

PropertyResult classical_euler_lagrange(std::uint64_t seed, std::size_t trials) {
  PropertyResult out{"classical Euler-Lagrange expressions", 0, 0, {}, {}};
  RandomSource rng(mix(seed, 5));
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t m = 1 + rng.below(3);
    BundleSpec b = standard_bundle(m, 1 + rng.below(2));
    auto lambda = random_lagrangian(rng, b, static_cast<unsigned>(m));
    trial(out, t, [&](std::string& detail) {
      auto result = euler_lagrange(lambda);
      auto coords = coordinate_euler_lagrange(lambda);
      BasisTuple top = basis_tuples(m, static_cast<unsigned>(m)).front();
      for (std::size_t p = 0; p < b.n(); ++p) {
        if (result.component(p, top) != coords[p]) {
          detail = to_string(result.component(p, top)) + " vs " + to_string(coords[p]);
          return false;
        }
      }
      return true;
    });
  }
  return out;
}

PropertyResult null_lagrangians(std::uint64_t seed, std::size_t trials) {
  PropertyResult out{"total derivatives are null Lagrangians", 0, 0, {}, {}};
  RandomSource rng(mix(seed, 6));
  BundleSpec line = standard_bundle(1, 1);
  std::vector<Symbol> vars = {line.base(0), line.fiber(0)};
  for (std::size_t t = 0; t < trials; ++t) {
    Expr g = random_polynomial(rng, vars, 3, 4);
    trial(out, t, [&](std::string& detail) {
      Expr dg = total_derivative(line, g, 0, Orders{0, std::nullopt});
      auto result = euler_lagrange(Lagrangian(line, Form::monomial(1, {0}, dg)));
      if (result.components.empty()) return true;
      detail = "g = " + to_string(g) + ", E_u = " + to_string(result.components.begin()->second);
      return false;
    });
  }
  return out;
}

PropertyResult operator_order(std::uint64_t seed, std::size_t trials) {
  PropertyResult out{"operator order of the associated jet map", 0, 0, {}, {}};
  RandomSource rng(mix(seed, 7));
  for (std::size_t t = 0; t < trials; ++t) {
    BundleSpec pair = standard_tower(1 + rng.below(2), 1 + rng.below(2), 1 + rng.below(2));
    unsigned k = 1 + rng.below(2);
    auto point = random_point(rng, pair);
    auto f = random_base_morphism(rng, pair);
    auto g = taylor_matched(rng, f, k, point);
    trial(out, t, [&](std::string& detail) {
      auto report = check_operator_order(f, g, k, point);
      if (report.outcome == OrderOutcome::Holds) return true;
      detail = report.outcome == OrderOutcome::Fails ? report.detail : "precondition unmet on a matched pair";
      return false;
    });
  }
  return out;
}

PropertyResult graph_identification(std::uint64_t seed, std::size_t trials) {
  PropertyResult out{"fiberwise (k,0)-jets are jets of the graph", 0, 0, {}, {}};
  RandomSource rng(mix(seed, 8));
  for (std::size_t t = 0; t < trials; ++t) {
    BundleSpec pair = standard_tower(1 + rng.below(2), 1 + rng.below(2), 1 + rng.below(2));
    auto f = random_base_morphism(rng, pair);
    unsigned k = rng.below(3);
    trial(out, t, [&](std::string& detail) {
      auto jet = fiberwise_jet(f, k, 0);
      auto graph = graph_jet(f, k);
      auto count = enumerate_jet_coordinates(pair.over_total_space(), k, std::nullopt).size();
      if (jet.coordinates.size() != count || graph.size() != count) {
        detail = "coordinate counts " + std::to_string(jet.coordinates.size()) + ", " +
                 std::to_string(graph.size()) + ", " + std::to_string(count);
        return false;
      }
      for (std::size_t i = 0; i < count; ++i) {
        if (graph[i] != jet.values[i]) {
          detail = render(pair, jet.coordinates[i]) + ": " + to_string(jet.values[i]) + " vs " + to_string(graph[i]);
          return false;
        }
      }
      return true;
    });
  }
  return out;
}

PropertyResult functional_commutation(std::uint64_t seed, std::size_t trials) {
  PropertyResult out{"D commutes with sections and variations", 0, 0, {}, {}};
  RandomSource rng(mix(seed, 9));
  for (std::size_t t = 0; t < trials; ++t) {
    BundleSpec tower = standard_tower(1 + rng.below(2), 1 + rng.below(2), 1 + rng.below(2));
    BundleSpec total = tower.over_total_space();
    unsigned r = rng.below(2);
    std::optional<unsigned> s;
    if (rng.chance(2, 3)) s = rng.below(r + 1);
    auto B = random_morphism(rng, total, Orders{r, s}, rng.below(2), {2, 3});
    auto section = random_section(rng, tower, {2, 2});
    auto variation = random_total_space_functions(rng, tower, {2, 2});
    trial(out, t, [&](std::string& detail) {
      auto report = check_functional_commutation(B, section, variation);
      if (!report.holds) detail = to_string(report.left) + " vs " + to_string(report.right);
      return report.holds;
    });
  }
  return out;
}

PropertyResult prolongation_commutation(std::uint64_t seed, std::size_t trials) {
  PropertyResult out{"prolongation commutes with sections", 0, 0, {}, {}};
  RandomSource rng(mix(seed, 10));
  for (std::size_t t = 0; t < trials; ++t) {
    BundleSpec tower = standard_tower(1 + rng.below(2), 1 + rng.below(2), 1 + rng.below(2));
    auto pool = coordinate_pool(tower.over_total_space(), Orders{0, std::nullopt});
    std::vector<Expr> F;
    for (std::size_t a = 0; a < tower.second_names().size(); ++a) F.push_back(random_polynomial(rng, pool, 2, 3));
    auto section = random_section(rng, tower, {2, 2});
    unsigned r = rng.below(3);
    trial(out, t, [&](std::string& detail) {
      auto report = check_prolongation_commutation(F, section, r);
      if (!report.holds) detail = to_string(report.left) + " vs " + to_string(report.right);
      return report.holds;
    });
  }
  return out;
}

PropertyResult parser_round_trip(std::uint64_t seed, std::size_t trials) {
  PropertyResult out{"parse(render(e)) = e", 0, 0, {}, {}};
  RandomSource rng(mix(seed, 11));
  for (std::size_t t = 0; t < trials; ++t) {
    BundleSpec b = standard_bundle(1 + rng.below(3), 1 + rng.below(2));
    Orders orders{2, 1};
    auto pool = coordinate_pool(b, orders);
    pool.push_back(constant_pi());
    Expr e = random_polynomial(rng, pool, 3, 4);
    Expr arg = random_polynomial(rng, pool, 2, 2);
    switch (rng.below(5)) {
      case 0:
        if (!arg.is_zero()) {
          e += apply(rng.pick(std::vector<Function>{Function::Sin, Function::Cos, Function::Exp, Function::Ln}), arg);
        }
        break;
      case 1:
        if (!(arg + Expr(1)).is_zero()) e *= pow(arg + Expr(1), -static_cast<int>(1 + rng.below(2)));
        break;
      case 2:
        e -= opaque("V", {rng.below(3)}, {arg});
        break;
      case 3:
        e *= opaque("g", {rng.below(2), rng.below(2)}, {Expr(b.base(0)), arg});
        break;
      default:
        break;
    }
    ParseContext ctx{b, orders, {"V", "g"}, 1, 1};
    trial(out, t, [&](std::string& detail) {
      std::string text = to_string(e);
      Expr back = parse_expression(text, ctx);
      if (back == e) return true;
      detail = text + " reparsed as " + to_string(back);
      return false;
    });
  }
  return out;
}

double convergence_ratio(std::size_t coarse_points) {
  BundleSpec line = standard_bundle(1, 1);
  Expr u(line.fiber(0));
  Expr e = u * u * Expr(line.jet(0, {1}));
  auto grid = [](std::size_t n) {
    return GridSection::sample({n}, {0.0}, {1.0}, {[](const std::vector<double>& x) { return std::sin(3.0 * x[0]); }});
  };
  double coarse = check_total_derivative(line, e, grid(coarse_points)).max_relative_error;
  double fine = check_total_derivative(line, e, grid(2 * coarse_points - 1)).max_relative_error;
  return coarse / fine;
}

PropertyResult oracle_convergence() {
  PropertyResult out{"finite-difference oracle converges at second order", 0, 0, {}, {}};
  for (std::size_t n : {51, 101, 201}) {
    double ratio = convergence_ratio(n);
    out.record(ratio >= kConvergenceLow && ratio <= kConvergenceHigh,
               std::to_string(n) + " points: ratio " + format_double(ratio));
    out.note += (out.note.empty() ? "ratios " : ", ") + format_double(ratio);
  }
  return out;
}

namespace {

PropertyResult action_check(std::string name, const Lagrangian& lambda, const GridSection& s, const GridSection& eta,
                            double tolerance) {
  PropertyResult out{std::move(name), 0, 0, {}, {}};
  try {
    auto r = check_action_variation(lambda, s, eta);
    out.record(r.relative_error <= tolerance && r.warnings.empty(),
               "relative error " + format_double(r.relative_error) + " above " + format_double(tolerance));
    out.note = "relative error " + format_double(r.relative_error);
  } catch (const Error& e) {
    out.record(false, e.what());
  }
  return out;
}

}  // namespace

PropertyResult action_variation_oscillator(std::size_t points, double tolerance) {
  BundleSpec line = standard_bundle(1, 1);
  Expr u(line.fiber(0));
  Expr ux(line.jet(0, {1}));
  Lagrangian lambda(line, Form::monomial(1, {0}, Expr(Rational(1, 2)) * (ux * ux - u * u)));
  auto s = GridSection::sample({points}, {0.0}, {1.0},
                               {[](const std::vector<double>& x) { return std::sin(std::numbers::pi * x[0]); }});
  auto eta = GridSection::sample({points}, {0.0}, {1.0}, {bump({0.5}, 0.3)});
  return action_check("action variation, oscillator, " + std::to_string(points) + " points", lambda, s, eta,
                      tolerance);
}

PropertyResult action_variation_dirichlet(std::size_t grid, double tolerance) {
  BundleSpec plane = standard_bundle(2, 1);
  Expr ux(plane.jet(0, {1, 0}));
  Expr uy(plane.jet(0, {0, 1}));
  Lagrangian lambda(plane, Form::monomial(2, {0, 1}, Expr(Rational(1, 2)) * (ux * ux + uy * uy)));
  auto field = [](const std::vector<double>& x) {
    return std::sin(std::numbers::pi * x[0]) * std::sin(std::numbers::pi * x[1]);
  };
  auto s = GridSection::sample({grid, grid}, {0.0, 0.0}, {1.0, 1.0}, {field});
  auto eta = GridSection::sample({grid, grid}, {0.0, 0.0}, {1.0, 1.0}, {bump({0.45, 0.55}, 0.3)});
  std::string size = std::to_string(grid);
  return action_check("action variation, Dirichlet, " + size + "x" + size + " grid", lambda, s, eta, tolerance);
}

std::vector<PropertyResult> full_suite(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  auto corpus = random_morphism_corpus(seed, 200);
  out.push_back(formal_differential_routes(corpus));
  out.push_back(formal_differential_squares_to_zero(corpus));
  out.push_back(naturality(seed, 100));
  out.push_back(projectability(seed, 100, false));
  out.push_back(classical_euler_lagrange(seed, 50));
  out.push_back(null_lagrangians(seed, 20));
  out.push_back(operator_order(seed, 50));
  out.push_back(graph_identification(seed, 30));
  out.push_back(functional_commutation(seed, 50));
  out.push_back(prolongation_commutation(seed, 20));
  out.push_back(parser_round_trip(seed, 100));
  out.push_back(oracle_convergence());
  out.push_back(action_variation_oscillator(2000));
  out.push_back(action_variation_dirichlet(200));
  return out;
}

}  // namespace jetvar
