#include "jetvar/specfile.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "jetvar/errors.hpp"
#include "jetvar/parser.hpp"

namespace jetvar {

const char* kind_name(DefinitionKind kind) {
  switch (kind) {
    case DefinitionKind::Lagrangian:
      return "lagrangian";
    case DefinitionKind::Morphism:
      return "morphism";
    case DefinitionKind::Field:
      return "field";
    case DefinitionKind::Map:
      return "map";
    case DefinitionKind::Section:
      return "section";
  }
  return "?";
}

BundleSpec SpecFile::fibered() const { return BundleSpec(bundle.base_names(), bundle.fiber_names()); }

const Definition* SpecFile::find(const std::string& name) const {
  for (const auto& d : definitions) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

namespace {

struct Word {
  std::string text;
  unsigned column = 0;
};

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<Word> split_words(const std::string& line, unsigned first_column = 1) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), first_column + static_cast<unsigned>(start)});
  }
  return out;
}

// "a, b c" -> {a, b, c} with columns.
std::vector<Word> split_list(const std::string& text, unsigned first_column) {
  std::string spaced = text;
  for (char& c : spaced) {
    if (c == ',') c = ' ';
  }
  return split_words(spaced, first_column);
}

bool is_name(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::optional<DefinitionKind> definition_kind(const std::string& word) {
  for (auto k : {DefinitionKind::Lagrangian, DefinitionKind::Morphism, DefinitionKind::Field, DefinitionKind::Map,
                 DefinitionKind::Section}) {
    if (word == kind_name(k)) return k;
  }
  return std::nullopt;
}

struct Pending {
  Definition def;
  Word header;
  BundleSpec bundle;
  Orders orders;
  unsigned degree = 0;
  std::map<std::string, std::pair<Expr, unsigned>> components;  // key -> (value, line)
};

class SpecParser {
 public:
  SpecParser(const std::string& text, std::string path) : path_(std::move(path)) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines_.push_back(line);
  }

  SpecFile run() {
    enum class Section { None, Bundle, Define, Task } section = Section::None;
    bool seen_bundle = false;
    for (unsigned n = 1; n <= lines_.size(); ++n) {
      line_ = n;
      std::string text = strip_comment(lines_[n - 1]);
      auto words = split_words(text);
      if (words.empty()) continue;
      if (words[0].text.front() == '[' && words.size() == 1 && words[0].text.back() == ']') {
        std::string name = words[0].text.substr(1, words[0].text.size() - 2);
        flush();
        if (name == "bundle") {
          if (seen_bundle) fail("duplicate [bundle] section", words[0]);
          seen_bundle = true;
          section = Section::Bundle;
          bundle_line_ = n;
        } else if (name == "define" || name == "task") {
          if (!seen_bundle) fail("[" + name + "] before [bundle]", words[0]);
          finish_bundle();
          section = name == "define" ? Section::Define : Section::Task;
        } else {
          fail("unknown section '" + words[0].text + "'", words[0]);
        }
        continue;
      }
      switch (section) {
        case Section::None:
          fail("content outside a section", words[0]);
        case Section::Bundle:
          bundle_entry(text, words);
          break;
        case Section::Define:
          define_line(text, words);
          break;
        case Section::Task:
          task_line(words);
          break;
      }
    }
    line_ = static_cast<unsigned>(lines_.size());
    flush();
    if (!seen_bundle) fail("missing [bundle] section", Word{"", 1});
    finish_bundle();
    SpecFile out{path_, *bundle_, functions_, std::move(definitions_), std::move(tasks_)};
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& message, const Word& at) const {
    throw ParseError(message, line_, at.column);
  }
  [[noreturn]] void fail_at(const std::string& message, unsigned line, unsigned column) const {
    throw ParseError(message, line, column);
  }

  void bundle_entry(const std::string& text, const std::vector<Word>& words) {
    auto eq = text.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'", words[0]);
    std::string key = split_words(text.substr(0, eq)).empty() ? "" : split_words(text.substr(0, eq))[0].text;
    auto values = split_list(text.substr(eq + 1), static_cast<unsigned>(eq) + 2);
    std::vector<std::string> names;
    for (const auto& w : values) names.push_back(w.text);
    std::vector<std::string>* target = nullptr;
    if (key == "base") {
      target = &base_;
    } else if (key == "fiber") {
      target = &fiber_;
    } else if (key == "second") {
      target = &second_;
    } else if (key == "functions") {
      for (const auto& w : values) {
        if (!is_name(w.text)) fail("invalid function name '" + w.text + "'", w);
        functions_.insert(w.text);
      }
      return;
    } else {
      fail("unknown bundle key '" + key + "'", words[0]);
    }
    if (!target->empty()) fail("duplicate bundle key '" + key + "'", words[0]);
    if (names.empty()) fail("bundle key '" + key + "' needs at least one name", words[0]);
    *target = names;
  }

  void finish_bundle() {
    if (bundle_) return;
    try {
      bundle_ = BundleSpec(base_, fiber_, second_);
    } catch (const BundleError& e) {
      fail_at(e.what(), bundle_line_, 1);
    }
    for (const auto& f : functions_) {
      for (const auto* names : {&base_, &fiber_, &second_}) {
        for (const auto& n : *names) {
          if (n == f) fail_at("function name '" + f + "' clashes with a coordinate", bundle_line_, 1);
        }
      }
    }
  }

  BundleSpec fibered() const { return BundleSpec(bundle_->base_names(), bundle_->fiber_names()); }

  static std::map<std::string, Word> options(const std::vector<Word>& words, std::size_t from) {
    std::map<std::string, Word> out;
    for (std::size_t i = from; i < words.size(); ++i) {
      auto eq = words[i].text.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == words[i].text.size()) {
        throw Word{words[i]};
      }
      Word value{words[i].text.substr(eq + 1), words[i].column + static_cast<unsigned>(eq) + 1};
      if (!out.emplace(words[i].text.substr(0, eq), value).second) throw Word{words[i]};
    }
    return out;
  }

  std::map<std::string, Word> parse_options(const std::vector<Word>& words, std::size_t from,
                                            const std::set<std::string>& allowed) const {
    std::map<std::string, Word> out;
    try {
      out = options(words, from);
    } catch (const Word& w) {
      fail("expected a single 'key=value' option", w);
    }
    for (const auto& [key, value] : out) {
      if (!allowed.count(key)) {
        fail("unknown option '" + key + "'", Word{key, value.column - static_cast<unsigned>(key.size()) - 1});
      }
    }
    return out;
  }

  unsigned integer(const Word& w, unsigned max) const {
    if (w.text.empty() || w.text.size() > 3) fail("expected a small non-negative integer", w);
    for (char c : w.text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected a small non-negative integer", w);
    }
    unsigned v = static_cast<unsigned>(std::stoul(w.text));
    if (v > max) fail("value " + w.text + " exceeds the supported maximum " + std::to_string(max), w);
    return v;
  }

  void define_line(const std::string& text, const std::vector<Word>& words) {
    if (auto kind = definition_kind(words[0].text)) {
      flush();
      header(*kind, words);
      return;
    }
    component(text, words);
  }

  void header(DefinitionKind kind, const std::vector<Word>& words) {
    if (words.size() < 2) fail(std::string(kind_name(kind)) + " needs a name", words[0]);
    const Word& name = words[1];
    if (!is_name(name.text)) fail("invalid name '" + name.text + "'", name);
    if (taken_.count(name.text)) fail("duplicate definition '" + name.text + "'", name);
    taken_.insert(name.text);

    std::set<std::string> allowed;
    switch (kind) {
      case DefinitionKind::Lagrangian:
        allowed = {"degree", "over"};
        break;
      case DefinitionKind::Morphism:
        allowed = {"degree", "order", "vertical", "over"};
        break;
      case DefinitionKind::Field:
        allowed = {"over"};
        break;
      case DefinitionKind::Map:
      case DefinitionKind::Section:
        break;
    }
    auto opts = parse_options(words, 2, allowed);

    bool over_total = false;
    if (auto it = opts.find("over"); it != opts.end()) {
      if (it->second.text != "total") fail("'over' accepts only 'total'", it->second);
      over_total = true;
    }
    if ((over_total || kind == DefinitionKind::Map || kind == DefinitionKind::Section) &&
        !bundle_->two_fibered()) {
      fail(std::string(kind_name(kind)) + " '" + name.text + "' needs a 'second' fiber in [bundle]", name);
    }
    BundleSpec y = over_total ? bundle_->over_total_space() : fibered();
    Orders orders{0, std::nullopt};
    unsigned degree = 0;
    if (kind == DefinitionKind::Lagrangian) {
      orders = Orders{1, std::nullopt};
      degree = static_cast<unsigned>(y.m());
    }
    if (auto it = opts.find("degree"); it != opts.end()) {
      degree = integer(it->second, static_cast<unsigned>(y.m()));
    }
    if (auto it = opts.find("order"); it != opts.end()) orders.r = integer(it->second, 6);
    if (auto it = opts.find("vertical"); it != opts.end()) {
      if (it->second.text != "none") {
        orders.s = integer(it->second, 6);
        if (*orders.s > orders.r) fail("vertical order exceeds jet order", it->second);
      }
    }
    if (kind == DefinitionKind::Map) y = source_bundle(*bundle_);
    if (kind == DefinitionKind::Section) y = bundle_->over_total_space();

    Definition def;
    def.kind = kind;
    def.name = name.text;
    def.line = line_;
    def.over_total = over_total;
    pending_ = Pending{std::move(def), name, y, orders, degree, {}};
  }

  void component(const std::string& text, const std::vector<Word>& words) {
    auto open = text.find('[');
    auto close = text.find(']');
    auto eq = text.find('=');
    if (open == std::string::npos || close == std::string::npos || eq == std::string::npos || !(open < close) ||
        !(close < eq)) {
      fail("expected a definition header or 'name[key] = expression'", words[0]);
    }
    std::string name = split_words(text.substr(0, open)).empty() ? "" : split_words(text.substr(0, open))[0].text;
    if (!pending_ || pending_->def.name != name) {
      fail("component line for '" + name + "' outside its definition", words[0]);
    }
    for (std::size_t i = close + 1; i < eq; ++i) {
      if (!std::isspace(static_cast<unsigned char>(text[i]))) {
        fail("expected '=' after ']'", Word{"", static_cast<unsigned>(i) + 1});
      }
    }
    auto keys = split_list(text.substr(open + 1, close - open - 1), static_cast<unsigned>(open) + 2);
    std::string canonical;
    for (const auto& k : keys) canonical += (canonical.empty() ? "" : ",") + k.text;

    ParseContext ctx{pending_->bundle, pending_->orders, functions_, line_, static_cast<unsigned>(eq) + 2};
    Expr value = parse_expression(text.substr(eq + 1), ctx);

    auto kind = pending_->def.kind;
    if (kind == DefinitionKind::Lagrangian || kind == DefinitionKind::Morphism) {
      if (keys.size() != pending_->degree) {
        fail("basis key needs " + std::to_string(pending_->degree) + " base coordinates",
             Word{"", static_cast<unsigned>(open) + 1});
      }
      for (const auto& k : keys) {
        if (!pending_->bundle.base_position(k.text)) fail("unknown base coordinate '" + k.text + "'", k);
      }
    } else {
      if (keys.size() != 1) fail("component key must be a single fiber name", Word{"", static_cast<unsigned>(open) + 1});
      if (!component_index(keys[0].text)) fail("unknown fiber '" + keys[0].text + "'", keys[0]);
    }
    if (!pending_->components.emplace(canonical, std::make_pair(value, line_)).second) {
      fail("duplicate component '" + name + "[" + canonical + "]'", words[0]);
    }
  }

  // Position of a field/map/section key among the relevant fiber names.
  std::optional<std::size_t> component_index(const std::string& key) const {
    const auto& names = component_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == key) return i;
    }
    return std::nullopt;
  }

  const std::vector<std::string>& component_names() const {
    auto kind = pending_->def.kind;
    if (kind == DefinitionKind::Map || kind == DefinitionKind::Section) return bundle_->second_names();
    return pending_->bundle.fiber_names();
  }

  void flush() {
    if (!pending_) return;
    Pending p = std::move(*pending_);
    pending_.reset();
    Definition def = std::move(p.def);
    try {
      switch (def.kind) {
        case DefinitionKind::Lagrangian:
        case DefinitionKind::Morphism: {
          Form value(p.bundle.m(), p.degree);
          for (const auto& [key, entry] : p.components) {
            std::vector<unsigned> idx;
            for (const auto& w : split_list(key, 1)) idx.push_back(static_cast<unsigned>(*p.bundle.base_position(w.text)));
            std::vector<unsigned> sorted = idx;
            if (sort_with_sign(sorted) == 0) {
              fail_at("basis key repeats a coordinate", entry.second, 1);
            }
            if (value.coefficients().count(sorted)) {
              fail_at("basis key [" + key + "] duplicates another ordering", entry.second, 1);
            }
            value.add(idx, entry.first);
          }
          if (def.kind == DefinitionKind::Lagrangian) {
            def.lagrangian.emplace(p.bundle, value);
          } else {
            def.morphism.emplace(p.bundle, p.orders, value);
          }
          break;
        }
        case DefinitionKind::Field:
        case DefinitionKind::Map:
        case DefinitionKind::Section: {
          std::vector<Expr> comps(component_names_for(def.kind, p.bundle).size());
          const auto& names = component_names_for(def.kind, p.bundle);
          for (const auto& [key, entry] : p.components) {
            for (std::size_t i = 0; i < names.size(); ++i) {
              if (names[i] == key) comps[i] = entry.first;
            }
          }
          if (def.kind == DefinitionKind::Field) {
            def.field.emplace(p.bundle, comps);
          } else if (def.kind == DefinitionKind::Map) {
            def.map.emplace(*bundle_, comps);
          } else {
            def.section.emplace(*bundle_, comps);
          }
          break;
        }
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail_at(std::string(kind_name(def.kind)) + " '" + def.name + "': " + e.what(), def.line, p.header.column);
    }
    definitions_.push_back(std::move(def));
  }

  const std::vector<std::string>& component_names_for(DefinitionKind kind, const BundleSpec& b) const {
    if (kind == DefinitionKind::Map || kind == DefinitionKind::Section) return bundle_->second_names();
    return b.fiber_names();
  }

  const Definition& lookup(const Word& w, std::initializer_list<DefinitionKind> kinds) const {
    for (const auto& d : definitions_) {
      if (d.name != w.text) continue;
      for (auto k : kinds) {
        if (d.kind == k) return d;
      }
      std::string expected;
      for (auto k : kinds) expected += (expected.empty() ? "" : " or ") + std::string(kind_name(k));
      fail("'" + w.text + "' is a " + kind_name(d.kind) + ", expected " + expected, w);
    }
    fail("undefined name '" + w.text + "'", w);
  }

  void arity(const std::vector<Word>& words, std::size_t lo, std::size_t hi, std::size_t& names) const {
    names = 0;
    while (1 + names < words.size() && words[1 + names].text.find('=') == std::string::npos) ++names;
    if (names < lo || names > hi) {
      std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi);
      fail("'" + words[0].text + "' takes " + want + " names", words[0]);
    }
  }

  void task_line(const std::vector<Word>& words) {
    Task task;
    task.command = words[0].text;
    task.line = line_;
    std::size_t count = 0;
    const std::string& c = task.command;
    auto names = [&](std::size_t i) { return words[1 + i]; };

    if (c == "el") {
      arity(words, 1, 1, count);
      lookup(names(0), {DefinitionKind::Lagrangian});
      parse_options(words, 1 + count, {});
    } else if (c == "fed") {
      arity(words, 1, 1, count);
      lookup(names(0), {DefinitionKind::Morphism, DefinitionKind::Lagrangian});
      parse_options(words, 1 + count, {});
    } else if (c == "fjet") {
      arity(words, 1, 1, count);
      lookup(names(0), {DefinitionKind::Map});
      auto opts = parse_options(words, 1 + count, {"k", "r"});
      task.integers["k"] = opts.count("k") ? integer(opts.at("k"), 4) : 1;
      task.integers["r"] = opts.count("r") ? integer(opts.at("r"), 4) : 1;
    } else if (c == "natural") {
      arity(words, 2, 2, count);
      const auto& phi = lookup(names(0), {DefinitionKind::Morphism, DefinitionKind::Lagrangian});
      const auto& eta = lookup(names(1), {DefinitionKind::Field});
      if (phi.over_total != eta.over_total) fail("morphism and field live over different bundles", names(1));
      auto opts = parse_options(words, 1 + count, {"k"});
      task.integers["k"] = opts.count("k") ? integer(opts.at("k"), 4) : 1;
    } else if (c == "commute") {
      arity(words, 2, 3, count);
      const auto& b = lookup(names(0), {DefinitionKind::Morphism});
      if (!b.over_total) fail("commute needs a morphism declared with over=total", names(0));
      lookup(names(1), {DefinitionKind::Section});
      if (count == 3) {
        const auto& v = lookup(names(2), {DefinitionKind::Field});
        if (!v.over_total) fail("commute needs a variation declared with over=total", names(2));
      } else if (b.morphism->orders().s) {
        fail("morphism '" + b.name + "' has a vertical argument; name a variation field", names(0));
      }
      parse_options(words, 1 + count, {});
    } else if (c == "order") {
      arity(words, 2, 2, count);
      lookup(names(0), {DefinitionKind::Map});
      lookup(names(1), {DefinitionKind::Map});
      auto opts = parse_options(words, 1 + count, {"k", "at"});
      task.integers["k"] = opts.count("k") ? integer(opts.at("k"), 3) : 1;
      if (!opts.count("at")) fail("'order' needs at=<point>", words[0]);
      const Word& at = opts.at("at");
      ParseContext ctx{*bundle_, Orders{0, std::nullopt}, {}, line_, at.column};
      for (const auto& w : split_list(at.text, at.column)) {
        ctx.column = w.column;
        Expr v = parse_expression(w.text, ctx);
        if (!v.is_constant()) fail("point coordinates must be rational numbers", w);
        task.point.push_back(v.constant_value());
      }
      if (task.point.size() != bundle_->m() + bundle_->n()) {
        fail("point needs " + std::to_string(bundle_->m() + bundle_->n()) + " coordinates", at);
      }
    } else if (c == "oracle") {
      arity(words, 1, 1, count);
      const auto& d = lookup(names(0), {DefinitionKind::Lagrangian});
      const BundleSpec& y = d.lagrangian->bundle();
      if (!d.lagrangian->classical()) fail("oracle needs a Lagrangian of top degree", names(0));
      if (y.m() > 2) fail("oracle grids support one or two base coordinates", names(0));
      std::set<std::string> allowed(y.fiber_names().begin(), y.fiber_names().end());
      auto opts = parse_options(words, 1 + count, allowed);
      ParseContext ctx{y, Orders{0, std::nullopt}, {}, line_, 1};
      for (const auto& f : y.fiber_names()) {
        if (!opts.count(f)) fail("oracle needs a section component '" + f + "=...'", words[0]);
        const Word& w = opts.at(f);
        ctx.column = w.column;
        Expr v = parse_expression(w.text, ctx);
        for (const auto& s : v.free_symbols()) {
          if (s.kind != SymbolKind::Base && s.kind != SymbolKind::Constant) {
            fail("section component may only use base coordinates", w);
          }
        }
        task.fields.push_back(v);
      }
    } else {
      fail("unknown task '" + c + "'", words[0]);
    }
    for (std::size_t i = 0; i < count; ++i) task.names.push_back(names(i).text);
    tasks_.push_back(std::move(task));
  }

  std::string path_;
  std::vector<std::string> lines_;
  unsigned line_ = 0;
  unsigned bundle_line_ = 1;
  std::vector<std::string> base_, fiber_, second_;
  std::set<std::string> functions_;
  std::optional<BundleSpec> bundle_;
  std::optional<Pending> pending_;
  std::set<std::string> taken_;
  std::vector<Definition> definitions_;
  std::vector<Task> tasks_;
};

}  // namespace

SpecFile parse_spec(const std::string& text, const std::string& path) { return SpecParser(text, path).run(); }

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str(), path);
}

}  // namespace jetvar
