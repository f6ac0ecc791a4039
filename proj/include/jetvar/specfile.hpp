#pragma once

// Line-oriented spec files with [bundle], [define] and [task] sections.
// The full grammar is documented in README.md.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "jetvar/fiberwise.hpp"
#include "jetvar/variational.hpp"

namespace jetvar {

enum class DefinitionKind { Lagrangian, Morphism, Field, Map, Section };

const char* kind_name(DefinitionKind kind);

struct Definition {
  DefinitionKind kind = DefinitionKind::Lagrangian;
  std::string name;
  unsigned line = 0;
  bool over_total = false;  // defined over the total-space view of the tower
  // Exactly one of these is set, matching kind.
  std::optional<Lagrangian> lagrangian;
  std::optional<Morphism> morphism;
  std::optional<VerticalField> field;
  std::optional<BaseMorphism> map;
  std::optional<SectionFamily> section;
};

struct Task {
  std::string command;
  std::vector<std::string> names;           // referenced definitions, in order
  std::map<std::string, unsigned> integers;  // k=, r=
  std::vector<Rational> point;               // order at=
  std::vector<Expr> fields;                  // oracle section, one per fiber
  unsigned line = 0;
};

struct SpecFile {
  std::string path;
  BundleSpec bundle;  // primary bundle Y; two-fibered when `second` is given
  std::set<std::string> functions;
  std::vector<Definition> definitions;  // file order
  std::vector<Task> tasks;              // file order

  // Y as a plain fibered manifold (no second level).
  BundleSpec fibered() const;
  const Definition* find(const std::string& name) const;
};

// Throws ParseError (line and column within the file) on any syntax,
// resolution or validation problem.
SpecFile parse_spec(const std::string& text, const std::string& path);
// Throws Error if the file cannot be read, ParseError as above.
SpecFile load_spec(const std::string& path);

}  // namespace jetvar
