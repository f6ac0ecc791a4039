#pragma once

// Formal calculus on J^r Y ×_{J^s Y} V J^s Y: total derivatives, holonomic
// prolongation, the map δ, the formal exterior differential D, flow
// prolongation of vertical fields and the naturality check.
//
// The exchange maps VJ^s Y ≅ J^s VY are not represented as data. They are
// the convention that the total derivative of X^p_σ is X^p_{σi}.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "jetvar/bundle.hpp"
#include "jetvar/form.hpp"

namespace jetvar {

// Form-valued map φ: J^r Y ×_{J^s Y} V J^s Y -> ∧^l T*M.
class Morphism {
 public:
  // Throws CoordinateError if a coefficient uses a coordinate outside
  // (bundle, orders), OrderError if s > r, RangeError if the form range is
  // not the base dimension.
  Morphism(BundleSpec bundle, Orders orders, Form value);

  const BundleSpec& bundle() const { return bundle_; }
  const Orders& orders() const { return orders_; }
  const Form& value() const { return value_; }
  unsigned degree() const { return value_.degree(); }

  // Same coefficients, larger declared orders (e.g. the jet projection).
  Morphism with_orders(Orders orders) const;

  // Smallest orders that still admit every coefficient. A vertical argument
  // stays present (s >= 0) once declared.
  Morphism tightened() const;

 private:
  BundleSpec bundle_;
  Orders orders_;
  Form value_;
};

// Vertical vector field η = η^p ∂/∂x^p with components in {x^i, x^q}.
class VerticalField {
 public:
  VerticalField(BundleSpec bundle, std::vector<Expr> components);

  const BundleSpec& bundle() const { return bundle_; }
  const std::vector<Expr>& components() const { return components_; }

 private:
  BundleSpec bundle_;
  std::vector<Expr> components_;
};

// D_i e = ∂e/∂x^i + Σ x^p_{αi} ∂e/∂x^p_α + Σ X^p_{σi} ∂e/∂X^p_σ.
// Throws CoordinateError if e leaves (bundle, orders).
Expr total_derivative(const BundleSpec& bundle, const Expr& e, std::size_t i, const Orders& orders);

// D_β e for a multi-index β, applied left to right over β's sequence.
Expr iterated_total_derivative(const BundleSpec& bundle, const Expr& e, const MultiIndex& beta,
                               const Orders& orders);

// Holonomic k-jet of a morphism: D_β a_I for every stored coefficient key I
// and every ‖β‖ <= k. Source orders become (r+k, s+k).
struct HolonomicJet {
  BundleSpec bundle;
  unsigned degree = 0;
  unsigned k = 0;
  Orders source_orders;
  std::map<std::pair<BasisTuple, MultiIndex>, Expr> components;

  Expr component(const BasisTuple& key, const MultiIndex& beta) const;
};

HolonomicJet holonomic_prolongation(const Morphism& phi, unsigned k);

// δ: J^1 ∧^l T*M -> ∧^{l+1} T*M, Σ a_{I,i} dx^i ∧ dx^I from the first-order
// part of a holonomic jet. Throws OrderError if jet.k == 0.
Form delta(const HolonomicJet& jet);

// Dφ = δ ∘ J^1_hol φ, orders (r+1, s+1), degree l+1.
Morphism formal_exterior_differential(const Morphism& phi);

// Dφ evaluated coefficient by coefficient from the explicit coordinate
// formula, summing over every enumerated coordinate of (r, s). Used as the
// independent route against formal_exterior_differential.
Morphism formal_exterior_differential_direct(const Morphism& phi);

// Components D_σ η^p for ‖σ‖ <= s, keyed by (p, σ).
std::map<std::pair<std::size_t, MultiIndex>, Expr> flow_prolongation(const VerticalField& eta,
                                                                      unsigned s);

// Bindings X^p_σ <- D_σ η^p for ‖σ‖ <= s.
Bindings vertical_bindings(const VerticalField& eta, unsigned s);

// φ(J^s η): every X^p_σ replaced by D_σ η^p; the result has no vertical argument.
Morphism plug_vertical(const Morphism& phi, const VerticalField& eta);

// ∂_α e, where α is a multi-index over the listed coordinates.
Expr partial(const Expr& e, const std::vector<Symbol>& coords, const MultiIndex& alpha);

// x^p_α <- ∂_α s^p for ‖α‖ <= r, for a section x^p = s^p(x^i).
Bindings section_bindings(const BundleSpec& bundle, const std::vector<Expr>& section, unsigned r);

// X^p_σ <- ∂_σ v^p for ‖σ‖ <= s, for a variation X^p = v^p(x^i) along a section.
Bindings variation_bindings(const BundleSpec& bundle, const std::vector<Expr>& variation, unsigned s);

struct NaturalityWitness {
  BasisTuple key;
  MultiIndex beta;
  Expr left;
  Expr right;
};

struct NaturalityReport {
  bool holds = true;
  std::optional<NaturalityWitness> witness;
};

// (J^k_hol φ)(J^{k+s} η) versus J^k_hol(φ(J^s η)), component by component.
NaturalityReport check_naturality(const Morphism& phi, const VerticalField& eta, unsigned k);

}  // namespace jetvar
