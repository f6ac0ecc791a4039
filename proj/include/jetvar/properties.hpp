#pragma once

// Seeded property suites shared by `jetvar check` and the acceptance runner.
// Every suite draws its own RandomSource from the seed, so suites are
// independent of each other and of run order.

#include <cstdint>
#include <string>
#include <vector>

#include "jetvar/jetcalc.hpp"

namespace jetvar {

struct PropertyResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;  // first few, human readable
  std::string note;                   // measured quantity, if any

  bool ok() const { return trials > 0 && passed == trials; }
  void record(bool success, const std::string& what);
};

// Random polynomial morphisms with m <= 3, n <= 2, r, s <= 2 (s possibly
// absent), l <= m−1 and coefficient degree <= 3.
std::vector<Morphism> random_morphism_corpus(std::uint64_t seed, std::size_t count);

// Dφ by the direct coordinate formula against δ∘J¹_hol φ.
PropertyResult formal_differential_routes(const std::vector<Morphism>& corpus);
PropertyResult formal_differential_routes(std::uint64_t seed, std::size_t trials);
// D∘D = 0 on the members with l + 2 <= m.
PropertyResult formal_differential_squares_to_zero(const std::vector<Morphism>& corpus);
PropertyResult formal_differential_squares_to_zero(std::uint64_t seed, std::size_t trials);
// check_naturality on random (φ, η, k <= 2).
PropertyResult naturality(std::uint64_t seed, std::size_t trials);
// Zero X^p_σ residual (‖σ‖ >= 1) of E(λ) for first-order Lagrangians with
// m <= 3. With all_degrees every 1 <= l <= m is drawn, otherwise l = m.
PropertyResult projectability(std::uint64_t seed, std::size_t trials, bool all_degrees);
// Projectable E(λ) equals ∂L/∂x^p − D_i ∂L/∂x^p_i for l = m.
PropertyResult classical_euler_lagrange(std::uint64_t seed, std::size_t trials);
// E(D₁g dx) = 0 for random g(x, u) of degree <= 3.
PropertyResult null_lagrangians(std::uint64_t seed, std::size_t trials);
// check_operator_order on Taylor-matched random pairs, k in {1, 2}.
PropertyResult operator_order(std::uint64_t seed, std::size_t trials);
// Fiberwise (k, 0)-jets against jets of the graph section, k <= 2: counts and values.
PropertyResult graph_identification(std::uint64_t seed, std::size_t trials);
// check_functional_commutation on random (B, s, η) over Q -> E, m, n <= 2.
PropertyResult functional_commutation(std::uint64_t seed, std::size_t trials);
// check_prolongation_commutation on random (F, s), r <= 2.
PropertyResult prolongation_commutation(std::uint64_t seed, std::size_t trials);
// parse(to_string(e)) == e on random expressions with function atoms.
PropertyResult parser_round_trip(std::uint64_t seed, std::size_t trials);

// Ratio of check_total_derivative errors on n and 2n−1 points for
// e = u² u_x along s = sin(3x) on [0, 1].
double convergence_ratio(std::size_t coarse_points);
constexpr double kConvergenceLow = 3.0;
constexpr double kConvergenceHigh = 5.0;
PropertyResult oracle_convergence();

// check_action_variation for ½(u_x² − u²)dx with s = sin(πx) on `points`
// nodes, and for the Dirichlet density ½(u_x² + u_y²) dx∧dy with
// s = sin(πx)sin(πy) on a grid of `grid`² nodes.
constexpr double kActionToleranceLine = 1e-4;
constexpr double kActionTolerancePlane = 1e-3;
PropertyResult action_variation_oscillator(std::size_t points, double tolerance = kActionToleranceLine);
PropertyResult action_variation_dirichlet(std::size_t grid, double tolerance = kActionTolerancePlane);

// Everything `jetvar check` runs, in report order.
std::vector<PropertyResult> full_suite(std::uint64_t seed);

}  // namespace jetvar
