#include "jetvar/multi_index.hpp"

#include <numeric>
#include <string>

#include "jetvar/errors.hpp"

namespace jetvar {

MultiIndex MultiIndex::unit(std::size_t range, std::size_t i) {
  return MultiIndex(range).incremented(i);
}

unsigned MultiIndex::order() const {
  return std::accumulate(exps_.begin(), exps_.end(), 0u);
}

MultiIndex MultiIndex::incremented(std::size_t i) const {
  if (i >= exps_.size()) {
    throw RangeError("multi-index position " + std::to_string(i) + " outside range of size " +
                     std::to_string(exps_.size()));
  }
  MultiIndex out = *this;
  ++out.exps_[i];
  return out;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.range() != range()) {
    throw RangeError("adding multi-indices over different ranges");
  }
  MultiIndex out = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
  return out;
}

std::size_t MultiIndex::first_nonzero() const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0) return i;
  }
  return exps_.size();
}

std::vector<std::size_t> MultiIndex::as_sequence() const {
  std::vector<std::size_t> seq;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    for (unsigned k = 0; k < exps_[i]; ++k) seq.push_back(i);
  }
  return seq;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (auto c = range() <=> other.range(); c != 0) return c;
  if (auto c = order() <=> other.order(); c != 0) return c;
  // Larger leading exponent first.
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != other.exps_[i]) {
      return exps_[i] > other.exps_[i] ? std::strong_ordering::less
                                       : std::strong_ordering::greater;
    }
  }
  return std::strong_ordering::equal;
}

MultiIndex mi_increment(const MultiIndex& alpha, std::size_t i) { return alpha.incremented(i); }

MultiIndex concat(const MultiIndex& head, const MultiIndex& tail) {
  std::vector<unsigned> e = head.exponents();
  e.insert(e.end(), tail.exponents().begin(), tail.exponents().end());
  return MultiIndex(std::move(e));
}

namespace {

void fill(std::vector<unsigned>& current, std::size_t pos, unsigned remaining,
          std::vector<MultiIndex>& out) {
  if (pos + 1 == current.size()) {
    current[pos] = remaining;
    out.emplace_back(current);
    return;
  }
  for (unsigned k = remaining + 1; k-- > 0;) {
    current[pos] = k;
    fill(current, pos + 1, remaining - k, out);
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_order(std::size_t range, unsigned order) {
  std::vector<MultiIndex> out;
  if (range == 0) {
    if (order == 0) out.emplace_back(0);
    return out;
  }
  std::vector<unsigned> current(range, 0);
  fill(current, 0, order, out);
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(std::size_t range, unsigned max_order) {
  std::vector<MultiIndex> out;
  for (unsigned k = 0; k <= max_order; ++k) {
    auto level = multi_indices_of_order(range, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

}  // namespace jetvar
