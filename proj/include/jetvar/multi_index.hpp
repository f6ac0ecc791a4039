#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace jetvar {

// Exponent vector over a coordinate range of fixed size. Symmetric jet
// coordinates are addressed by one MultiIndex each, never by index tuples.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t range) : exps_(range, 0) {}
  explicit MultiIndex(std::vector<unsigned> exponents) : exps_(std::move(exponents)) {}
  MultiIndex(std::initializer_list<unsigned> exponents) : exps_(exponents) {}

  static MultiIndex unit(std::size_t range, std::size_t i);

  std::size_t range() const { return exps_.size(); }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<unsigned>& exponents() const { return exps_; }

  // ‖α‖
  unsigned order() const;
  bool is_zero() const { return order() == 0; }

  // α with the exponent of i raised by one. Throws RangeError if i is
  // outside the range.
  MultiIndex incremented(std::size_t i) const;

  MultiIndex operator+(const MultiIndex& other) const;

  // First coordinate with a nonzero exponent; range() for the zero index.
  std::size_t first_nonzero() const;

  // Index positions with multiplicity, ascending: (2,1) -> {0,0,1}.
  std::vector<std::size_t> as_sequence() const;

  // Ordering used everywhere for determinism: by order, then so that
  // (1,0) precedes (0,1).
  std::strong_ordering operator<=>(const MultiIndex& other) const;
  bool operator==(const MultiIndex& other) const = default;

 private:
  std::vector<unsigned> exps_;
};

MultiIndex mi_increment(const MultiIndex& alpha, std::size_t i);

// Concatenation over the disjoint union of two ranges.
MultiIndex concat(const MultiIndex& head, const MultiIndex& tail);

// All multi-indices of exactly the given order, in MultiIndex ordering.
std::vector<MultiIndex> multi_indices_of_order(std::size_t range, unsigned order);

// All multi-indices with order <= max_order, in MultiIndex ordering.
std::vector<MultiIndex> multi_indices_up_to(std::size_t range, unsigned max_order);

// C(n, k) for the small counts used in coordinate enumeration.
std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace jetvar
