#pragma once

// Reproducible random symbolic data for property checks.

#include <cstdint>
#include <random>
#include <vector>

#include "jetvar/expr.hpp"

namespace jetvar {

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n). Plain modulo keeps draws identical across standard libraries.
  unsigned below(unsigned n) { return static_cast<unsigned>(engine_() % n); }
  // Uniform in [lo, hi].
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<unsigned>(hi - lo + 1))); }
  bool chance(unsigned num, unsigned den) { return below(den) < num; }

  // Nonzero p/q with |p| <= 5, 1 <= q <= 3.
  Rational small_rational();

  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[below(static_cast<unsigned>(items.size()))];
  }

 private:
  std::mt19937_64 engine_;
};

// Sum of up to max_terms monomials over vars, each of total degree <= max_degree.
Expr random_polynomial(RandomSource& rng, const std::vector<Symbol>& vars, unsigned max_degree,
                       unsigned max_terms);

}  // namespace jetvar
