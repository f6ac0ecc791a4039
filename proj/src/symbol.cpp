#include "jetvar/symbol.hpp"

namespace jetvar {

std::string render(const Symbol& s) {
  switch (s.kind) {
    case SymbolKind::Base:
    case SymbolKind::Constant:
      return s.name;
    case SymbolKind::Jet:
      return s.suffix.empty() ? s.name : s.name + "_" + s.suffix;
    case SymbolKind::Vertical:
      return "d" + (s.suffix.empty() ? s.name : s.name + "_" + s.suffix);
  }
  return s.name;
}

std::string render_latex(const Symbol& s) {
  switch (s.kind) {
    case SymbolKind::Base:
      return s.name;
    case SymbolKind::Constant:
      return s.name == "pi" ? "\\pi" : s.name;
    case SymbolKind::Jet:
      return s.suffix.empty() ? s.name : s.name + "_{" + s.suffix + "}";
    case SymbolKind::Vertical:
      return "\\mathrm{d}" + (s.suffix.empty() ? s.name : s.name + "_{" + s.suffix + "}");
  }
  return s.name;
}

Symbol constant_pi() {
  Symbol s;
  s.kind = SymbolKind::Constant;
  s.name = "pi";
  return s;
}

}  // namespace jetvar
