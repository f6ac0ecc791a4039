#pragma once

// Coordinate model of fibered manifolds Y -> M and 2-fibered manifolds
// Q -> E -> M in a single chart.

#include <optional>
#include <string>
#include <vector>

#include "jetvar/expr.hpp"
#include "jetvar/multi_index.hpp"
#include "jetvar/symbol.hpp"

namespace jetvar {

// Positional jet order r and vertical order s. An empty s means the map has
// no vertical argument at all, which is not the same as s = 0.
struct Orders {
  unsigned r = 0;
  std::optional<unsigned> s;

  bool operator==(const Orders&) const = default;
};

class BundleSpec {
 public:
  // Throws BundleError on duplicate, reserved or malformed names, or m, n < 1.
  BundleSpec(std::vector<std::string> base, std::vector<std::string> fiber,
             std::vector<std::string> second = {});

  std::size_t m() const { return base_.size(); }
  std::size_t n() const { return fiber_.size(); }
  bool two_fibered() const { return !second_.empty(); }

  const std::vector<std::string>& base_names() const { return base_; }
  const std::vector<std::string>& fiber_names() const { return fiber_; }
  const std::vector<std::string>& second_names() const { return second_; }

  Symbol base(std::size_t i) const;
  Symbol jet(std::size_t p, const MultiIndex& alpha) const;
  Symbol fiber(std::size_t p) const { return jet(p, MultiIndex(m())); }
  Symbol vertical(std::size_t p, const MultiIndex& sigma) const;

  // Sorted index string over base names: (2,1) over {x,y} -> "xxy".
  std::string suffix(const MultiIndex& alpha) const;
  // Inverse of suffix(); nullopt if the text is not a concatenation of base names.
  std::optional<MultiIndex> parse_suffix(const std::string& text) const;

  std::optional<std::size_t> base_position(const std::string& name) const;
  std::optional<std::size_t> fiber_position(const std::string& name) const;

  // Q viewed as fibered over E: base coordinates (x^i, x^p), fiber z^a.
  // Requires a two-fibered spec.
  BundleSpec over_total_space() const;

  // True if s is a coordinate of this bundle within the given orders.
  bool admits(const Symbol& s, const Orders& orders) const;

  bool operator==(const BundleSpec&) const = default;

 private:
  std::vector<std::string> base_;
  std::vector<std::string> fiber_;
  std::vector<std::string> second_;
};

// Throws CoordinateError naming the first symbol of e outside (bundle, orders).
void require_coordinates(const BundleSpec& bundle, const Expr& e, const Orders& orders);

struct JetCoordinate {
  std::size_t fiber = 0;
  MultiIndex index;
  bool vertical = false;

  bool operator==(const JetCoordinate&) const = default;
};

Symbol to_symbol(const BundleSpec& bundle, const JetCoordinate& c);

// All x^p_α (‖α‖ <= r) then all X^p_σ (‖σ‖ <= s), grouped by fiber then
// MultiIndex ordering. Throws OrderError if s > r.
std::vector<JetCoordinate> enumerate_jet_coordinates(const BundleSpec& bundle, unsigned r,
                                                     std::optional<unsigned> s);

// Y1 = (x^i, x^p), Y2 = (x^i, z^a) over a common base; encoded as a
// two-fibered BundleSpec whose second level holds the target fiber names.
struct FiberwiseJetSpaceSpec {
  BundleSpec pair;
  unsigned r = 0;  // fiber-derivative order
  unsigned k = 0;  // total-space derivative order
};

// z^a_{βγ}: β over the fiber coordinates of Y1, γ over all coordinates of Y1.
struct FiberwiseCoordinate {
  std::size_t target = 0;
  MultiIndex beta;
  MultiIndex gamma;

  bool operator==(const FiberwiseCoordinate&) const = default;
};

std::string render(const BundleSpec& pair, const FiberwiseCoordinate& c);

// Ordered by target, ‖γ‖, β, γ.
std::vector<FiberwiseCoordinate> enumerate_fiberwise_coordinates(const FiberwiseJetSpaceSpec& spec);

}  // namespace jetvar
