// Acceptance runner: `acceptance --criterion N` prints one PASS/FAIL line for
// criterion N and exits 0 on PASS. Without arguments every criterion runs.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "jetvar/errors.hpp"
#include "jetvar/generators.hpp"
#include "jetvar/oracle.hpp"
#include "jetvar/properties.hpp"

using namespace jetvar;

namespace {

constexpr std::uint64_t kSeed = 20261015;

// Pinned limits.
constexpr double kRoutesSeconds = 10.0;
constexpr double kClassicalSeconds = 30.0;
constexpr double kCheckSeconds = 60.0;
constexpr std::size_t kMorphisms = 200;
constexpr std::size_t kNaturality = 100;
constexpr std::size_t kLagrangians = 100;
constexpr std::size_t kNullLagrangians = 20;
constexpr std::size_t kTaylorPairs = 50;
constexpr std::size_t kCommutations = 50;
constexpr std::size_t kLinePoints = 2000;
constexpr std::size_t kPlaneGrid = 200;
constexpr std::size_t kConvergencePoints = 101;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v, const char* spec = "%.3g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string counts(const PropertyResult& r) {
  std::string s = std::to_string(r.passed) + "/" + std::to_string(r.trials) + " passed";
  if (!r.failures.empty()) s += "; first failure: " + r.failures.front();
  return s;
}

Verdict routes() {
  auto start = std::chrono::steady_clock::now();
  auto r = formal_differential_routes(random_morphism_corpus(kSeed, kMorphisms));
  double t = seconds_since(start);
  bool pass = r.ok() && r.trials == kMorphisms && t <= kRoutesSeconds;
  return {pass, counts(r) + ", " + fmt(t) + " s (limit " + fmt(kRoutesSeconds) + " s)"};
}

Verdict squares() {
  auto r = formal_differential_squares_to_zero(random_morphism_corpus(kSeed, kMorphisms));
  return {r.ok(), counts(r) + " with l+2 <= m out of " + std::to_string(kMorphisms)};
}

Verdict natural() {
  auto r = naturality(kSeed, kNaturality);
  return {r.ok() && r.trials == kNaturality, counts(r)};
}

Verdict projectable() {
  auto r = projectability(kSeed, kLagrangians, true);
  std::string detail = counts(r);
  // The smallest instance: λ = u_x dx on the plane.
  BundleSpec plane = standard_bundle(2, 1);
  Lagrangian lambda(plane, Form::monomial(2, {0}, Expr(plane.jet(0, {1, 0}))));
  auto e = analyze_euler_lagrange(lambda);
  if (!e.projectable()) {
    detail += "; counterexample u_x dx on (x, y): residual " + describe(e.residual.front(), plane);
  }
  return {r.ok() && r.trials == kLagrangians, detail};
}

Verdict classical() {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = true;

  BundleSpec line = standard_bundle(1, 1);
  Expr u(line.fiber(0));
  Expr ux(line.jet(0, {1}));
  Lagrangian osc(line, Form::monomial(1, {0}, Expr(Rational(1, 2)) * (ux * ux - u * u)));
  Expr e_osc = euler_lagrange(osc).component(0, {0});
  bool osc_ok = e_osc == -u - Expr(line.jet(0, {2}));
  pass &= osc_ok;
  detail += "E_u(oscillator) = " + to_string(e_osc) + (osc_ok ? "" : " (expected -u - u_xx)");

  BundleSpec plane = standard_bundle(2, 1);
  Expr px(plane.jet(0, {1, 0}));
  Expr py(plane.jet(0, {0, 1}));
  Lagrangian dir(plane, Form::monomial(2, {0, 1}, Expr(Rational(1, 2)) * (px * px + py * py)));
  Expr e_dir = euler_lagrange(dir).component(0, {0, 1});
  bool dir_ok = e_dir == -(Expr(plane.jet(0, {2, 0})) + Expr(plane.jet(0, {0, 2})));
  pass &= dir_ok;
  detail += "; E_u(Dirichlet) = " + to_string(e_dir) + (dir_ok ? "" : " (expected -(u_xx + u_yy))");

  auto a = action_variation_oscillator(kLinePoints, kActionToleranceLine);
  auto b = action_variation_dirichlet(kPlaneGrid, kActionTolerancePlane);
  pass &= a.ok() && b.ok();
  detail += "; oracle m=1 " + a.note + " (limit " + fmt(kActionToleranceLine) + ")";
  detail += ", m=2 " + b.note + " (limit " + fmt(kActionTolerancePlane) + ")";
  for (const auto* r : {&a, &b}) {
    if (!r->failures.empty()) detail += "; " + r->failures.front();
  }

  double t = seconds_since(start);
  pass &= t <= kClassicalSeconds;
  detail += "; " + fmt(t) + " s (limit " + fmt(kClassicalSeconds) + " s)";
  return {pass, detail};
}

Verdict null() {
  auto r = null_lagrangians(kSeed, kNullLagrangians);
  return {r.ok() && r.trials == kNullLagrangians, counts(r)};
}

Verdict fiberwise() {
  auto r = operator_order(kSeed, kTaylorPairs);
  bool pass = r.ok() && r.trials == kTaylorPairs;
  std::string detail = "operator order " + counts(r);

  // Graph identification for r = 0 and each k <= 2.
  RandomSource rng(kSeed);
  std::size_t checked = 0;
  std::size_t agreed = 0;
  for (unsigned k = 0; k <= 2; ++k) {
    for (int t = 0; t < 10; ++t) {
      BundleSpec pair = standard_tower(1 + rng.below(2), 1 + rng.below(2), 1 + rng.below(2));
      auto f = random_base_morphism(rng, pair);
      auto jet = fiberwise_jet(f, k, 0);
      auto graph = graph_jet(f, k);
      auto expected = enumerate_jet_coordinates(pair.over_total_space(), k, std::nullopt).size();
      ++checked;
      if (jet.coordinates.size() == expected && graph == jet.values) ++agreed;
    }
  }
  pass &= agreed == checked;
  detail += "; graph identification " + std::to_string(agreed) + "/" + std::to_string(checked) + " for k <= 2";
  return {pass, detail};
}

Verdict commutation() {
  auto r = functional_commutation(kSeed, kCommutations);
  return {r.ok() && r.trials == kCommutations, counts(r)};
}

Verdict convergence() {
  double ratio = convergence_ratio(kConvergencePoints);
  bool pass = ratio >= kConvergenceLow && ratio <= kConvergenceHigh;
  return {pass, "error ratio " + fmt(ratio, "%.4f") + " from " + std::to_string(kConvergencePoints) + " to " +
                    std::to_string(2 * kConvergencePoints - 1) + " points (accepted [" + fmt(kConvergenceLow) + ", " +
                    fmt(kConvergenceHigh) + "])"};
}

Verdict check_suite() {
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(JETVAR_CORPUS_DIR)) {
    if (entry.path().extension() == ".spec") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  std::string cmd = std::string("\"") + JETVAR_BINARY + "\" check";
  for (const auto& f : files) cmd += " \"" + f + "\"";
  cmd += " > /dev/null";
  auto start = std::chrono::steady_clock::now();
  int status = std::system(cmd.c_str());
  double t = seconds_since(start);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  bool pass = code == 0 && t <= kCheckSeconds;
  return {pass, "jetvar check on " + std::to_string(files.size()) + " corpus files: exit " + std::to_string(code) +
                    ", " + fmt(t) + " s (limit " + fmt(kCheckSeconds) + " s)"};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Verdict()>>> list = {
      {"direct and composed formal differentials agree", routes},
      {"D o D = 0", squares},
      {"naturality under vertical flows", natural},
      {"E(lambda) projectable for 1 <= l <= m", projectable},
      {"classical Euler-Lagrange recovery", classical},
      {"null Lagrangians", null},
      {"operator order and graph identification", fiberwise},
      {"D commutes with sections", commutation},
      {"oracle convergence", convergence},
      {"full check suite", check_suite},
  };
  return list;
}

bool report(std::size_t n) {
  const auto& [name, fn] = criteria()[n - 1];
  Verdict v;
  try {
    v = fn();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  std::cout << "criterion " << n << " " << (v.pass ? "PASS" : "FAIL") << " [" << name << "] " << v.detail << std::endl;
  return v.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.size() == 2 && args[0] == "--criterion") {
    std::size_t n = 0;
    try {
      n = std::stoul(args[1]);
    } catch (const std::exception&) {
    }
    if (n < 1 || n > criteria().size()) {
      std::cerr << "criterion must be 1.." << criteria().size() << "\n";
      return 2;
    }
    return report(n) ? 0 : 1;
  }
  if (!args.empty()) {
    std::cerr << "usage: acceptance [--criterion N]\n";
    return 2;
  }
  bool all = true;
  for (std::size_t n = 1; n <= criteria().size(); ++n) all &= report(n);
  return all ? 0 : 1;
}
