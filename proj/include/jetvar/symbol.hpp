#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "jetvar/multi_index.hpp"

namespace jetvar {

enum class SymbolKind : std::uint8_t {
  Base,      // base coordinate x^i
  Jet,       // fiber jet coordinate x^p_α (order 0 is the fiber coordinate itself)
  Vertical,  // vertical coordinate X^p_σ = dx^p_σ
  Constant,  // named real constant (pi); exact zero derivative
};

// A coordinate symbol. Identity is (kind, name, index); `suffix` and `slot`
// are derived from the owning bundle and only used for rendering and lookup.
struct Symbol {
  SymbolKind kind = SymbolKind::Base;
  std::string name;    // base coordinate name, fiber name, or constant name
  MultiIndex index;    // Jet / Vertical only
  std::string suffix;  // rendered index string, empty at order zero
  unsigned slot = 0;   // base position (Base) or fiber position (Jet / Vertical)

  unsigned order() const { return index.order(); }

  std::strong_ordering operator<=>(const Symbol& other) const {
    if (auto c = kind <=> other.kind; c != 0) return c;
    if (auto c = name <=> other.name; c != 0) return c;
    return index <=> other.index;
  }
  bool operator==(const Symbol& other) const {
    return kind == other.kind && name == other.name && index == other.index;
  }
};

// Plain-text spelling: x, u, u_xy, du_x, pi.
std::string render(const Symbol& s);
std::string render_latex(const Symbol& s);

Symbol constant_pi();

}  // namespace jetvar
