#pragma once

// Fiberwise jets of base-preserving morphisms Y1 -> Y2, the associated
// first-jet map, section jets of Q -> E reindexed over E, and the
// commutation checks tying D over E to sections.
//
// Both pairs Y1, Y2 and towers Q -> E -> M are two-fibered BundleSpecs.
// A base morphism lives on Y1 = (x^i, x^p); section data lives on the
// total-space view E = (x^i, x^p) with fiber z^a.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "jetvar/jetcalc.hpp"

namespace jetvar {

// Y1 as a plain bundle: base x^i, fiber x^p.
BundleSpec source_bundle(const BundleSpec& pair);

// x^i then x^p, as symbols of source_bundle(pair).
std::vector<Symbol> total_coordinates(const BundleSpec& pair);

// z^a = f^a(x^i, x^p).
class BaseMorphism {
 public:
  // Throws CoordinateError if a component mentions anything but x^i, x^p,
  // RangeError on a component count that differs from the target fiber.
  BaseMorphism(BundleSpec pair, std::vector<Expr> components);

  const BundleSpec& pair() const { return pair_; }
  const std::vector<Expr>& components() const { return components_; }

 private:
  BundleSpec pair_;
  std::vector<Expr> components_;
};

// z^a_β = ∂_β f^a, β over the fiber coordinates, ‖β‖ <= r. Keyed by (a, β).
std::map<std::pair<std::size_t, MultiIndex>, Expr> fiberwise_prolongation(const BaseMorphism& f,
                                                                           unsigned r);

struct FiberwiseJet {
  FiberwiseJetSpaceSpec spec;
  std::vector<FiberwiseCoordinate> coordinates;  // enumeration order
  std::vector<Expr> values;                      // ∂_γ ∂_β f^a, same order

  Expr value(const FiberwiseCoordinate& c) const;
};

// z^a_{βγ} = ∂_γ ∂_β f^a, γ over all coordinates of Y1.
FiberwiseJet fiberwise_jet(const BaseMorphism& f, unsigned k, unsigned r);

// k-jet of the graph y -> (y, f(y)) as a section of Y1 ×_M Y2 -> Y1, in the
// jet coordinates of pair.over_total_space(), translated back to Y1 symbols.
// Ordered like enumerate_jet_coordinates(pair.over_total_space(), k, none).
std::vector<Expr> graph_jet(const BaseMorphism& f, unsigned k);

// h: J^1 Y1 -> J^1 Y2, z^a = f^a, z^a_i = ∂_i f^a + ∂_p f^a x^p_i.
struct AssociatedJetMap {
  std::vector<Expr> values;                   // [a]
  std::vector<std::vector<Expr>> derivatives;  // [a][i]
};

AssociatedJetMap associated_jet_map(const BaseMorphism& f);

enum class OrderOutcome { Holds, Fails, PreconditionUnmet };

struct OperatorOrderReport {
  OrderOutcome outcome = OrderOutcome::Holds;
  std::string detail;  // first differing entry, empty when Holds
};

// If the (k,1) fiberwise jets of f and g agree at the point (values for x^i
// then x^p), compares the fiber-direction k-jets of their associated jet maps
// at the point with x^i frozen and x^p_i left symbolic.
OperatorOrderReport check_operator_order(const BaseMorphism& f, const BaseMorphism& g, unsigned k,
                                         const std::vector<Rational>& point);

// s: E -> Q, z^a = s^a(x^i, x^p), over the total-space view of a tower.
class SectionFamily {
 public:
  // Components use base symbols of tower.over_total_space() only.
  SectionFamily(BundleSpec tower, std::vector<Expr> components);

  const BundleSpec& tower() const { return tower_; }
  const BundleSpec& total_space() const { return total_; }
  const std::vector<Expr>& components() const { return components_; }

 private:
  BundleSpec tower_;
  BundleSpec total_;
  std::vector<Expr> components_;
};

struct ReindexedJet {
  std::size_t target = 0;
  MultiIndex alpha;  // over x^i
  MultiIndex beta;   // over x^p
  Expr value;
};

// z^a_{αβ} = ∂_β z^a_α with z^a_α = ∂_α s^a, for ‖α‖ + ‖β‖ <= r.
// Ordered by target, ‖α‖ + ‖β‖, ‖α‖, α, β.
std::vector<ReindexedJet> section_jet_reindex(const SectionFamily& s, unsigned r);

struct CommutationReport {
  bool holds = true;
  std::optional<BasisTuple> key;
  Expr left;
  Expr right;
};

// B is a morphism over E (bundle = tower.over_total_space()). Left: DB with
// the jets of s and of the variation substituted. Right: B with the jets
// substituted, then the exterior derivative over E. The variation is ignored
// when B has no vertical argument.
CommutationReport check_functional_commutation(const Morphism& B, const SectionFamily& s,
                                               const std::vector<Expr>& variation);

// Reindexed jets of the composed section F∘s against the holonomic
// prolongation of F evaluated on the jets of s. F^b are functions on Q over E
// (base symbols of E and the fiber z^a).
CommutationReport check_prolongation_commutation(const std::vector<Expr>& F, const SectionFamily& s,
                                                 unsigned r);

// d over a bundle's base coordinates, for coefficients free of jet symbols.
Form exterior_derivative(const BundleSpec& bundle, const Form& omega);

}  // namespace jetvar
