#include "jetvar/commands.hpp"

#include <cstdio>
#include <ostream>

#include "json.hpp"

#include "jetvar/errors.hpp"
#include "jetvar/oracle.hpp"
#include "jetvar/properties.hpp"
#include "jetvar/specfile.hpp"

namespace jetvar {

using json = nlohmann::ordered_json;

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"el",     "fed",    "fjet", "natural",
                                                 "commute", "order", "oracle", "check"};
  return names;
}

namespace {

struct TaskOutput {
  std::string title;  // "el L"
  bool passed = true;
  std::vector<std::string> text;
  std::vector<std::string> latex;
  json data = json::object();
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

json basis_json(const BasisTuple& key, const std::vector<std::string>& names) {
  json out = json::array();
  for (unsigned i : key) out.push_back(names.at(i));
  return out;
}

json form_json(const Form& f, const std::vector<std::string>& names) {
  json out = json::array();
  for (const auto& [key, c] : f.coefficients()) {
    out.push_back({{"basis", basis_json(key, names)}, {"coefficient", to_string(c)}});
  }
  return out;
}

json orders_json(const Orders& o) {
  json out = {{"r", o.r}};
  out["s"] = o.s ? json(*o.s) : json(nullptr);
  return out;
}

std::string latex_subscripts(const std::string& name) {
  auto u = name.find('_');
  if (u == std::string::npos) return name;
  return name.substr(0, u) + "_{" + name.substr(u + 1) + "}";
}

std::string orders_text(const Orders& o) {
  return "r=" + std::to_string(o.r) + " s=" + (o.s ? std::to_string(*o.s) : std::string("none"));
}

TaskOutput run_el(const Definition& def) {
  TaskOutput out{"el " + def.name, true, {}, {}, {}};
  const Lagrangian& lambda = *def.lagrangian;
  const BundleSpec& b = lambda.bundle();
  auto result = analyze_euler_lagrange(lambda);
  const auto& names = b.base_names();

  json comps = json::array();
  for (std::size_t p = 0; p < b.n(); ++p) {
    Form e(b.m(), lambda.degree());
    for (const auto& [key, c] : result.components) {
      if (key.first == p) e.add(key.second, c);
    }
    std::string label = "E_" + b.fiber_names()[p];
    std::string label_tex = "E_{" + b.fiber_names()[p] + "}";
    if (lambda.classical()) {
      Expr c = e.coefficient(basis_tuples(b.m(), lambda.degree()).front());
      out.text.push_back(label + " = " + to_string(c));
      out.latex.push_back(label_tex + " = " + to_latex(c));
    } else {
      out.text.push_back(label + " = " + to_string(e, names));
      out.latex.push_back(label_tex + " = " + to_latex(e, names));
    }
    for (const auto& [key, c] : e.coefficients()) {
      comps.push_back({{"fiber", b.fiber_names()[p]}, {"basis", basis_json(key, names)}, {"coefficient", to_string(c)}});
    }
  }
  out.passed = result.projectable();
  out.text.push_back(std::string("projectable: ") + (out.passed ? "yes" : "no"));
  out.latex.push_back(std::string("\\text{projectable: ") + (out.passed ? "yes" : "no") + "}");
  json residual = json::array();
  for (const auto& r : result.residual) {
    out.text.push_back("residual: " + describe(r, b));
    Form f = Form::monomial(b.m(), r.key, r.coefficient * Expr(r.vertical));
    out.latex.push_back("\\text{residual: } " + to_latex(f, names));
    residual.push_back({{"vertical", render(r.vertical)}, {"basis", basis_json(r.key, names)},
                        {"coefficient", to_string(r.coefficient)}});
  }
  out.data = {{"task", "el"}, {"lagrangian", def.name}, {"degree", lambda.degree()}, {"components", comps},
              {"projectable", out.passed}, {"residual", residual}};
  return out;
}

TaskOutput run_fed(const Definition& def) {
  TaskOutput out{"fed " + def.name, true, {}, {}, {}};
  Morphism phi = def.morphism ? *def.morphism : def.lagrangian->as_morphism();
  const auto& names = phi.bundle().base_names();
  auto composed = formal_exterior_differential(phi);
  auto direct = formal_exterior_differential_direct(phi);
  out.passed = composed.value() == direct.value() && composed.orders() == direct.orders();
  out.text.push_back("D" + def.name + " = " + to_string(composed.value(), names));
  out.text.push_back("orders: " + orders_text(composed.orders()) + ", degree " + std::to_string(composed.degree()));
  out.latex.push_back("D" + def.name + " = " + to_latex(composed.value(), names));
  if (!out.passed) {
    out.text.push_back("direct formula: " + to_string(direct.value(), names));
    out.latex.push_back("\\text{direct formula: } " + to_latex(direct.value(), names));
  }
  out.data = {{"task", "fed"},
              {"morphism", def.name},
              {"degree", composed.degree()},
              {"orders", orders_json(composed.orders())},
              {"coefficients", form_json(composed.value(), names)},
              {"routes_agree", out.passed}};
  return out;
}

TaskOutput run_fjet(const Definition& def, unsigned k, unsigned r) {
  TaskOutput out{"fjet " + def.name + " k=" + std::to_string(k) + " r=" + std::to_string(r), true, {}, {}, {}};
  auto jet = fiberwise_jet(*def.map, k, r);
  const BundleSpec& pair = def.map->pair();
  json rows = json::array();
  for (std::size_t i = 0; i < jet.coordinates.size(); ++i) {
    const auto& c = jet.coordinates[i];
    std::string name = render(pair, c);
    out.text.push_back(name + " = " + to_string(jet.values[i]));
    out.latex.push_back(latex_subscripts(name) + " = " + to_latex(jet.values[i]));
    rows.push_back({{"coordinate", name},
                    {"target", pair.second_names()[c.target]},
                    {"beta", c.beta.exponents()},
                    {"gamma", c.gamma.exponents()},
                    {"value", to_string(jet.values[i])}});
  }
  out.data = {{"task", "fjet"}, {"map", def.name}, {"k", k}, {"r", r}, {"coordinates", rows}};
  return out;
}

TaskOutput run_natural(const Definition& phi_def, const Definition& eta_def, unsigned k) {
  TaskOutput out{"natural " + phi_def.name + " " + eta_def.name + " k=" + std::to_string(k), true, {}, {}, {}};
  Morphism phi = phi_def.morphism ? *phi_def.morphism : phi_def.lagrangian->as_morphism();
  auto report = check_naturality(phi, *eta_def.field, k);
  out.passed = report.holds;
  out.text.push_back(std::string("naturality: ") + (report.holds ? "holds" : "fails"));
  out.latex.push_back(std::string("\\text{naturality: ") + (report.holds ? "holds" : "fails") + "}");
  out.data = {{"task", "natural"}, {"morphism", phi_def.name}, {"field", eta_def.name}, {"k", k}, {"holds", report.holds}};
  if (report.witness) {
    const auto& w = *report.witness;
    const auto& names = phi.bundle().base_names();
    std::string at = "basis " + basis_json(w.key, names).dump() + ", beta " + json(w.beta.exponents()).dump();
    out.text.push_back("at " + at + ": " + to_string(w.left) + " vs " + to_string(w.right));
    out.latex.push_back(to_latex(w.left) + " \\neq " + to_latex(w.right));
    out.data["witness"] = {{"basis", basis_json(w.key, names)},
                           {"beta", w.beta.exponents()},
                           {"left", to_string(w.left)},
                           {"right", to_string(w.right)}};
  }
  return out;
}

TaskOutput run_commute(const Definition& b_def, const Definition& s_def, const Definition* v_def) {
  std::string title = "commute " + b_def.name + " " + s_def.name + (v_def ? " " + v_def->name : "");
  TaskOutput out{title, true, {}, {}, {}};
  std::vector<Expr> variation = v_def ? v_def->field->components() : std::vector<Expr>{};
  auto report = check_functional_commutation(*b_def.morphism, *s_def.section, variation);
  out.passed = report.holds;
  out.text.push_back(std::string("commutation: ") + (report.holds ? "holds" : "fails"));
  out.latex.push_back(std::string("\\text{commutation: ") + (report.holds ? "holds" : "fails") + "}");
  out.data = {{"task", "commute"}, {"morphism", b_def.name}, {"section", s_def.name}};
  out.data["variation"] = v_def ? json(v_def->name) : json(nullptr);
  out.data["holds"] = report.holds;
  if (!report.holds && report.key) {
    const auto& names = b_def.morphism->bundle().base_names();
    out.text.push_back("at " + basis_json(*report.key, names).dump() + ": " + to_string(report.left) + " vs " +
                       to_string(report.right));
    out.latex.push_back(to_latex(report.left) + " \\neq " + to_latex(report.right));
    out.data["witness"] = {
        {"basis", basis_json(*report.key, names)}, {"left", to_string(report.left)}, {"right", to_string(report.right)}};
  }
  return out;
}

TaskOutput run_order(const Definition& f, const Definition& g, unsigned k, const std::vector<Rational>& point) {
  std::string at;
  for (const auto& q : point) at += (at.empty() ? "" : ",") + to_string(q);
  TaskOutput out{"order " + f.name + " " + g.name + " k=" + std::to_string(k) + " at=" + at, true, {}, {}, {}};
  auto report = check_operator_order(*f.map, *g.map, k, point);
  std::string outcome = report.outcome == OrderOutcome::Holds     ? "holds"
                        : report.outcome == OrderOutcome::Fails   ? "fails"
                                                                  : "precondition unmet";
  out.passed = report.outcome != OrderOutcome::Fails;
  out.text.push_back("operator order: " + outcome);
  out.latex.push_back("\\text{operator order: " + outcome + "}");
  if (!report.detail.empty()) {
    std::string label = report.outcome == OrderOutcome::Fails ? "first difference: " : "jets differ at ";
    out.text.push_back(label + report.detail);
    out.latex.push_back("\\text{" + label + report.detail + "}");
  }
  json pt = json::array();
  for (const auto& q : point) pt.push_back(to_string(q));
  out.data = {{"task", "order"}, {"maps", {f.name, g.name}}, {"k", k}, {"point", pt}, {"outcome", outcome},
              {"detail", report.detail}};
  return out;
}

TaskOutput run_oracle(const Definition& def, const std::vector<Expr>& fields, const RunOptions& options) {
  TaskOutput out{"oracle " + def.name, true, {}, {}, {}};
  const Lagrangian& lambda = *def.lagrangian;
  const BundleSpec& b = lambda.bundle();
  const std::size_t m = b.m();
  const std::size_t n = options.grid.value_or(m == 1 ? 2000 : 200);
  const double tol = options.tolerance.value_or(m == 1 ? kActionToleranceLine : kActionTolerancePlane);
  std::vector<std::size_t> shape(m, n);
  std::vector<double> lower(m, 0.0);
  std::vector<double> upper(m, 1.0);
  auto s = GridSection::sample(b, shape, lower, upper, fields);
  std::vector<ScalarField> bumps(b.n(), bump(std::vector<double>(m, 0.5), 0.3));
  auto eta = GridSection::sample(shape, lower, upper, bumps);

  Expr L = lambda.value().coefficient(basis_tuples(m, lambda.degree()).front());
  json checks = json::array();
  for (std::size_t i = 0; i < m; ++i) {
    auto td = check_total_derivative(b, L, s, i);
    bool ok = td.max_relative_error <= tol;
    out.passed &= ok;
    std::string line = "total derivative D_" + b.base_names()[i] + " L: relative error " + sci(td.max_relative_error);
    out.text.push_back(line + (ok ? "" : " (above tolerance)"));
    out.latex.push_back("\\text{" + line + "}");
    checks.push_back({{"check", "total_derivative"}, {"axis", b.base_names()[i]},
                      {"relative_error", td.max_relative_error}, {"passed", ok}});
  }
  auto av = check_action_variation(lambda, s, eta);
  bool ok = av.relative_error <= tol;
  out.passed &= ok;
  std::string line = "action variation: " + sci(av.lhs) + " vs " + sci(av.rhs) + ", relative error " +
                     sci(av.relative_error);
  out.text.push_back(line + (ok ? "" : " (above tolerance)"));
  out.latex.push_back("\\text{" + line + "}");
  for (const auto& w : av.warnings) out.text.push_back("warning: " + w);
  checks.push_back({{"check", "action_variation"}, {"lhs", av.lhs}, {"rhs", av.rhs},
                    {"relative_error", av.relative_error}, {"passed", ok}});
  out.text.push_back("grid " + std::to_string(n) + " per axis, tolerance " + sci(tol));
  out.data = {{"task", "oracle"}, {"lagrangian", def.name}, {"grid", n},       {"tolerance", tol},
              {"checks", checks},  {"warnings", av.warnings}, {"passed", out.passed}};
  return out;
}

TaskOutput execute(const SpecFile& spec, const Task& task, const RunOptions& options) {
  auto def = [&](std::size_t i) -> const Definition& { return *spec.find(task.names[i]); };
  const std::string& c = task.command;
  if (c == "el") return run_el(def(0));
  if (c == "fed") return run_fed(def(0));
  if (c == "fjet") return run_fjet(def(0), task.integers.at("k"), task.integers.at("r"));
  if (c == "natural") return run_natural(def(0), def(1), task.integers.at("k"));
  if (c == "commute") return run_commute(def(0), def(1), task.names.size() == 3 ? &def(2) : nullptr);
  if (c == "order") return run_order(def(0), def(1), task.integers.at("k"), task.point);
  if (c == "oracle") return run_oracle(def(0), task.fields, options);
  throw Error("unknown task '" + c + "'");
}

// Tasks a command runs on one file. el and fed fall back to every
// Lagrangian or morphism when the file lists none.
std::vector<Task> selected_tasks(const SpecFile& spec, const std::string& command) {
  std::vector<Task> out;
  for (const auto& t : spec.tasks) {
    if (command == "check" || t.command == command) out.push_back(t);
  }
  if (!out.empty() || (command != "el" && command != "fed")) return out;
  for (const auto& d : spec.definitions) {
    bool wanted = command == "el" ? d.kind == DefinitionKind::Lagrangian
                                  : d.kind == DefinitionKind::Morphism || d.kind == DefinitionKind::Lagrangian;
    if (!wanted) continue;
    Task t;
    t.command = command;
    t.names = {d.name};
    t.line = d.line;
    out.push_back(t);
  }
  return out;
}

void print_task(const TaskOutput& t, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Latex) {
    out << "% " << t.title << "\n";
    for (const auto& l : t.latex) out << "\\[ " << l << " \\]\n";
  } else {
    out << "[" << t.title << "]\n";
    for (const auto& l : t.text) out << l << "\n";
  }
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string lpad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

int run(const std::string& command, const std::vector<std::string>& files, const RunOptions& options,
        std::ostream& out, std::ostream& err) {
  bool known = false;
  for (const auto& n : command_names()) known |= n == command;
  if (!known) {
    err << "error: unknown command '" << command << "'\n";
    return kExitInvalid;
  }
  if (files.empty() && command != "check") {
    err << "error: '" << command << "' needs at least one spec file\n";
    return kExitInvalid;
  }

  std::vector<SpecFile> specs;
  bool invalid = false;
  for (const auto& path : files) {
    try {
      specs.push_back(load_spec(path));
    } catch (const ParseError& e) {
      err << path << ":" << e.what() << "\n";
      invalid = true;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      invalid = true;
    }
  }
  if (invalid) return kExitInvalid;

  struct Ran {
    const SpecFile* spec;
    TaskOutput output;
  };
  std::vector<Ran> ran;
  std::size_t task_count = 0;
  for (const auto& spec : specs) {
    for (const auto& task : selected_tasks(spec, command)) {
      ++task_count;
      try {
        ran.push_back({&spec, execute(spec, task, options)});
      } catch (const Error& e) {
        err << spec.path << ":" << task.line << ": error: " << task.command << ": " << e.what() << "\n";
        invalid = true;
      }
    }
  }
  if (invalid) return kExitInvalid;
  if (command != "check" && task_count == 0) {
    err << "error: no '" << command << "' tasks in the given files\n";
    return kExitInvalid;
  }

  bool failed = false;
  for (const auto& r : ran) {
    if (!r.output.passed) {
      failed = true;
      err << r.spec->path << ": " << r.output.title << ": check failed\n";
    }
  }

  std::vector<PropertyResult> properties;
  if (command == "check") {
    properties = full_suite(options.seed);
    for (const auto& p : properties) {
      if (p.ok()) continue;
      failed = true;
      for (const auto& f : p.failures) err << p.name << ": " << f << "\n";
    }
  }

  if (options.format == OutputFormat::Json) {
    json doc = {{"command", command}};
    if (command == "check") {
      doc["seed"] = options.seed;
      json props = json::array();
      for (const auto& p : properties) {
        props.push_back({{"name", p.name}, {"trials", p.trials}, {"passed", p.passed}, {"note", p.note}});
      }
      doc["properties"] = props;
    }
    json results = json::array();
    for (const auto& r : ran) {
      json entry = r.output.data;
      entry["file"] = r.spec->path;
      entry["passed"] = r.output.passed;
      results.push_back(entry);
    }
    doc["results"] = results;
    doc["status"] = failed ? "failed" : "ok";
    out << doc.dump(2) << "\n";
  } else if (command == "check") {
    const std::size_t width = 62;
    out << pad("property", width) << lpad("trials", 8) << lpad("passed", 8) << "\n";
    for (const auto& p : properties) {
      out << pad(p.name, width) << lpad(std::to_string(p.trials), 8) << lpad(std::to_string(p.passed), 8);
      if (!p.note.empty()) out << "  " << p.note;
      out << "\n";
    }
    for (const auto& spec : specs) {
      std::size_t total = 0;
      std::size_t passed = 0;
      for (const auto& r : ran) {
        if (r.spec != &spec) continue;
        ++total;
        passed += r.output.passed ? 1 : 0;
      }
      out << pad("tasks in " + spec.path, width) << lpad(std::to_string(total), 8) << lpad(std::to_string(passed), 8)
          << "\n";
    }
    out << (failed ? "FAILED" : "all checks passed") << "\n";
  } else {
    const SpecFile* current = nullptr;
    bool first = true;
    for (const auto& r : ran) {
      if (specs.size() > 1 && r.spec != current) {
        current = r.spec;
        out << (first ? "" : "\n") << (options.format == OutputFormat::Latex ? "% == " : "== ") << current->path
            << " ==\n";
      } else if (!first) {
        out << "\n";
      }
      first = false;
      print_task(r.output, options.format, out);
    }
  }
  return failed ? kExitCheckFailed : kExitOk;
}

}  // namespace jetvar
