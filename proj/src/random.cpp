#include "jetvar/random.hpp"

namespace jetvar {

Rational RandomSource::small_rational() {
  int num = between(1, 5) * (chance(1, 2) ? -1 : 1);
  int den = between(1, 3);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Expr random_polynomial(RandomSource& rng, const std::vector<Symbol>& vars, unsigned max_degree,
                       unsigned max_terms) {
  Expr out;
  const unsigned terms = 1 + rng.below(max_terms);
  for (unsigned t = 0; t < terms; ++t) {
    Expr mono(rng.small_rational());
    const unsigned degree = vars.empty() ? 0 : rng.below(max_degree + 1);
    for (unsigned d = 0; d < degree; ++d) mono *= Expr(rng.pick(vars));
    out += mono;
  }
  return out;
}

}  // namespace jetvar
