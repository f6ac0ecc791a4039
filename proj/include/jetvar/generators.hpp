#pragma once

// Random bundles, morphisms, fields and sections for the property suites.

#include <vector>

#include "jetvar/bundle.hpp"
#include "jetvar/fiberwise.hpp"
#include "jetvar/jetcalc.hpp"
#include "jetvar/random.hpp"
#include "jetvar/variational.hpp"

namespace jetvar {

// Base names x, y, w; fiber names u, v. 1 <= m <= 3, 1 <= n <= 2.
BundleSpec standard_bundle(std::size_t m, std::size_t n);

// Two-fibered Q -> E -> M: base x, y; E-fiber p, q; Q-fiber z, c.
BundleSpec standard_tower(std::size_t m, std::size_t n, std::size_t targets);

// Base coordinates, jet coordinates up to r and vertical ones up to s.
std::vector<Symbol> coordinate_pool(const BundleSpec& bundle, const Orders& orders);

struct PolynomialShape {
  unsigned max_degree = 3;
  unsigned max_terms = 3;
};

// Each basis tuple of the degree gets a random polynomial coefficient with
// probability 3/4 (at least one is nonzero when the degree admits any).
Morphism random_morphism(RandomSource& rng, const BundleSpec& bundle, const Orders& orders,
                         unsigned degree, PolynomialShape shape = {});

VerticalField random_vertical_field(RandomSource& rng, const BundleSpec& bundle,
                                    PolynomialShape shape = {2, 3});

// First-order Lagrangian of the given degree, coefficients over {x^i, x^p, x^p_i}.
Lagrangian random_lagrangian(RandomSource& rng, const BundleSpec& bundle, unsigned degree,
                             PolynomialShape shape = {});

BaseMorphism random_base_morphism(RandomSource& rng, const BundleSpec& pair,
                                  PolynomialShape shape = {});

// g = f + Σ c·Π (y_j − y0_j) with k+2 factors per term, so g shares every
// derivative of order <= k+1 with f at the point.
BaseMorphism taylor_matched(RandomSource& rng, const BaseMorphism& f, unsigned k,
                            const std::vector<Rational>& point);

// Random rational point over x^i then x^p.
std::vector<Rational> random_point(RandomSource& rng, const BundleSpec& pair);

SectionFamily random_section(RandomSource& rng, const BundleSpec& tower, PolynomialShape shape = {});

// One polynomial per Q-fiber over the total-space base, e.g. a variation.
std::vector<Expr> random_total_space_functions(RandomSource& rng, const BundleSpec& tower,
                                               PolynomialShape shape = {});

}  // namespace jetvar
