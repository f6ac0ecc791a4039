#pragma once

// First-order Lagrangians, the vertical differential, the momentum morphism
// B(λ) and the Euler-Lagrange morphism E(λ) = d_Vλ∘π²₁ − DB(λ).
//
// A Lagrangian on Q -> E is handled by passing tower.over_total_space() as
// the bundle; nothing else changes.

#include <map>
#include <utility>
#include <vector>

#include "jetvar/jetcalc.hpp"

namespace jetvar {

// λ = L_I dx^I on J^1 Y.
class Lagrangian {
 public:
  // Throws CoordinateError if a coefficient uses second-order jets or
  // vertical coordinates, BundleError on a two-fibered spec.
  Lagrangian(BundleSpec bundle, Form value);

  const BundleSpec& bundle() const { return bundle_; }
  const Form& value() const { return value_; }
  unsigned degree() const { return value_.degree(); }
  // l = m: a classical first-order Lagrangian.
  bool classical() const { return degree() == bundle_.m(); }

  Morphism as_morphism() const { return Morphism(bundle_, Orders{1, std::nullopt}, value_); }

 private:
  BundleSpec bundle_;
  Form value_;
};

// ∂L_I/∂x^p X^p + ∂L_I/∂x^p_i X^p_i, orders (1, 1).
Morphism vertical_differential(const Lagrangian& lambda);

// B(λ) = ∂L_I/∂x^p_i X^p (∂/∂x^i ⌟ dx^I), orders (1, 0), degree l−1.
// Throws DegreeError if l = 0.
Morphism momentum(const Lagrangian& lambda);

// d_Vλ∘π²₁ − DB(λ) at orders (2, 1), before projectability is checked.
Morphism euler_lagrange_difference(const Lagrangian& lambda);

struct ResidualTerm {
  Symbol vertical;  // X^p_σ with ‖σ‖ >= 1
  BasisTuple key;
  Expr coefficient;
};

struct EulerLagrangeResult {
  BundleSpec bundle;
  unsigned degree = 0;
  // E_p per fiber index and degree-l basis tuple; zero entries are omitted.
  std::map<std::pair<std::size_t, BasisTuple>, Expr> components;
  // Nonzero coefficients of X^p_σ, ‖σ‖ >= 1; empty iff projectable.
  std::vector<ResidualTerm> residual;

  bool projectable() const { return residual.empty(); }
  Expr component(std::size_t p, const BasisTuple& key) const;
};

// Splits the difference into X^p coefficients and the residual. Never throws
// on a projectability failure.
EulerLagrangeResult analyze_euler_lagrange(const Lagrangian& lambda);

// As analyze_euler_lagrange, but throws ProjectabilityError naming the
// first residual term if the difference is not projectable.
EulerLagrangeResult euler_lagrange(const Lagrangian& lambda);

// ∂L/∂x^p − D_i ∂L/∂x^p_i for l = m, one entry per fiber coordinate.
// Throws DegreeError if l != m.
std::vector<Expr> coordinate_euler_lagrange(const Lagrangian& lambda);

std::string describe(const ResidualTerm& term, const BundleSpec& bundle);

}  // namespace jetvar
