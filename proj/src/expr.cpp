#include "jetvar/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "jetvar/errors.hpp"

namespace jetvar {

struct Expr::Data {
  TermMap terms;
  std::vector<Symbol> free;
};

namespace {

int sign_of(int c) { return (c > 0) - (c < 0); }

std::vector<Symbol> merge_free(const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
  std::vector<Symbol> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

int compare_monomials(const Monomial& a, const Monomial& b) {
  if (int da = a.degree(), db = b.degree(); da != db) return da < db ? -1 : 1;
  const std::size_t n = std::min(a.factors.size(), b.factors.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(a.factors[i].atom, b.factors[i].atom); c != 0) return c;
    if (a.factors[i].exponent != b.factors[i].exponent) {
      return a.factors[i].exponent > b.factors[i].exponent ? -1 : 1;
    }
  }
  if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size() ? -1 : 1;
  return 0;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() || j < b.factors.size()) {
    if (j == b.factors.size()) {
      out.factors.push_back(a.factors[i++]);
    } else if (i == a.factors.size()) {
      out.factors.push_back(b.factors[j++]);
    } else {
      int c = compare(a.factors[i].atom, b.factors[j].atom);
      if (c < 0) {
        out.factors.push_back(a.factors[i++]);
      } else if (c > 0) {
        out.factors.push_back(b.factors[j++]);
      } else {
        int e = a.factors[i].exponent + b.factors[j].exponent;
        if (e != 0) out.factors.push_back({a.factors[i].atom, e});
        ++i;
        ++j;
      }
    }
  }
  return out;
}

void accumulate(TermMap& out, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = out.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) out.erase(it);
  }
}

// out += (c * m) * e
void accumulate_product(TermMap& out, const Monomial& m, const Rational& c, const Expr& e) {
  for (const auto& [m2, c2] : e.terms()) {
    Rational prod = c * c2;
    accumulate(out, m.empty() ? m2 : multiply(m, m2), prod);
  }
}

Atom make_symbol_atom(const Symbol& s) {
  auto node = std::make_shared<AtomNode>();
  node->kind = AtomNode::Kind::Symbol;
  node->symbol = s;
  node->free = {s};
  return node;
}

bool atom_depends_on(const AtomNode& a, const Symbol& s) {
  return std::binary_search(a.free.begin(), a.free.end(), s);
}

bool atom_touches(const AtomNode& a, const Bindings& b) {
  for (const auto& s : a.free) {
    if (b.count(s)) return true;
  }
  return false;
}

const char* function_name(Function f) {
  switch (f) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Exp: return "exp";
    case Function::Ln: return "ln";
  }
  return "?";
}

}  // namespace

int Monomial::degree() const {
  int d = 0;
  for (const auto& f : factors) d += f.exponent;
  return d;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  return compare_monomials(a, b) < 0;
}

int compare(const Atom& a, const Atom& b) {
  if (a == b) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case AtomNode::Kind::Symbol: {
      auto c = a->symbol <=> b->symbol;
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case AtomNode::Kind::Function:
      if (a->function != b->function) return a->function < b->function ? -1 : 1;
      return compare(a->args[0], b->args[0]);
    case AtomNode::Kind::Reciprocal:
      return compare(a->args[0], b->args[0]);
    case AtomNode::Kind::Opaque: {
      if (int c = a->name.compare(b->name); c != 0) return sign_of(c);
      if (a->partials != b->partials) return a->partials < b->partials ? -1 : 1;
      if (a->args.size() != b->args.size()) return a->args.size() < b->args.size() ? -1 : 1;
      for (std::size_t i = 0; i < a->args.size(); ++i) {
        if (int c = compare(a->args[i], b->args[i]); c != 0) return c;
      }
      return 0;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Expr

Expr::Expr() {
  static const auto zero = std::make_shared<const Data>();
  data_ = zero;
}

Expr::Expr(int value) : Expr(Rational(value)) {}

Expr::Expr(const Rational& value) : Expr() {
  if (value != 0) {
    auto d = std::make_shared<Data>();
    Rational q = value;
    q.canonicalize();
    d->terms.emplace(Monomial{}, std::move(q));
    data_ = std::move(d);
  }
}

Expr::Expr(const Symbol& symbol) : Expr(from_atom(make_symbol_atom(symbol))) {}

Expr Expr::from_atom(Atom atom, int exponent) {
  if (exponent == 0) return Expr(1);
  auto d = std::make_shared<Data>();
  d->free = atom->free;
  Monomial m;
  m.factors.push_back({std::move(atom), exponent});
  d->terms.emplace(std::move(m), Rational(1));
  return Expr(std::shared_ptr<const Data>(std::move(d)));
}

Expr Expr::from_terms(TermMap terms) {
  for (auto it = terms.begin(); it != terms.end();) {
    it = it->second == 0 ? terms.erase(it) : std::next(it);
  }
  if (terms.empty()) return Expr();
  auto d = std::make_shared<Data>();
  for (const auto& [m, c] : terms) {
    for (const auto& f : m.factors) d->free = merge_free(d->free, f.atom->free);
  }
  d->terms = std::move(terms);
  return Expr(std::shared_ptr<const Data>(std::move(d)));
}

const TermMap& Expr::terms() const { return data_->terms; }

bool Expr::is_zero() const { return data_->terms.empty(); }

bool Expr::is_constant() const {
  return data_->terms.empty() ||
         (data_->terms.size() == 1 && data_->terms.begin()->first.empty());
}

Rational Expr::constant_value() const {
  if (!is_constant()) throw std::logic_error("expression is not constant: " + to_string(*this));
  return is_zero() ? Rational(0) : data_->terms.begin()->second;
}

std::vector<Symbol> Expr::free_symbols() const { return data_->free; }

bool Expr::depends_on(const Symbol& s) const {
  return std::binary_search(data_->free.begin(), data_->free.end(), s);
}

Expr& Expr::operator+=(const Expr& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  TermMap t = terms();
  for (const auto& [m, c] : other.terms()) accumulate(t, m, c);
  return *this = from_terms(std::move(t));
}

Expr& Expr::operator-=(const Expr& other) { return *this += -other; }

Expr& Expr::operator*=(const Expr& other) {
  if (is_zero() || other.is_zero()) return *this = Expr();
  TermMap t;
  for (const auto& [m, c] : terms()) accumulate_product(t, m, c, other);
  return *this = from_terms(std::move(t));
}

Expr operator-(const Expr& a) {
  if (a.is_zero()) return a;
  TermMap t = a.terms();
  for (auto& [m, c] : t) c = -c;
  return Expr::from_terms(std::move(t));
}

bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

int compare(const Expr& a, const Expr& b) {
  if (&a.terms() == &b.terms()) return 0;
  auto ia = a.terms().begin(), ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (int c = compare_monomials(ia->first, ib->first); c != 0) return c;
    if (int c = cmp(ia->second, ib->second); c != 0) return sign_of(c);
  }
  if (ia != a.terms().end()) return 1;
  if (ib != b.terms().end()) return -1;
  return 0;
}

bool operator<(const Expr& a, const Expr& b) { return compare(a, b) < 0; }

// ---------------------------------------------------------------------------
// Constructors of compound atoms

namespace {

// base^n for an atom; reciprocal atoms never carry negative exponents.
Expr atom_power(const Atom& atom, int n) {
  if (atom->kind == AtomNode::Kind::Reciprocal && n < 0) return pow(atom->args[0], -n);
  return Expr::from_atom(atom, n);
}

Expr reciprocal(const Expr& sum) {
  // Scale so the leading coefficient is 1; the scale moves outside.
  Rational lead = sum.terms().begin()->second;
  Expr monic = sum * Expr(Rational(1) / lead);
  auto node = std::make_shared<AtomNode>();
  node->kind = AtomNode::Kind::Reciprocal;
  node->free = monic.free_symbols();
  node->args.push_back(monic);
  return Expr(Rational(1) / lead) * Expr::from_atom(std::move(node));
}

}  // namespace

Expr pow(const Expr& base, int n) {
  if (n == 0) return Expr(1);
  if (n > 0) {
    Expr result(1), sq = base;
    for (unsigned k = static_cast<unsigned>(n); k != 0; k >>= 1) {
      if (k & 1u) result *= sq;
      if (k > 1) sq *= sq;
    }
    return result;
  }
  if (base.is_zero()) throw std::domain_error("division by zero");
  if (base.size() == 1) {
    const auto& [m, c] = *base.terms().begin();
    Rational inv = Rational(1) / c;
    Rational cpow = 1;
    for (int k = 0; k < -n; ++k) cpow *= inv;
    Expr result(cpow);
    for (const auto& f : m.factors) result *= atom_power(f.atom, f.exponent * n);
    return result;
  }
  return pow(reciprocal(base), -n);
}

Expr apply(Function f, const Expr& arg) {
  if (arg.is_zero()) {
    if (f == Function::Sin) return Expr(0);
    if (f == Function::Cos || f == Function::Exp) return Expr(1);
  }
  if (f == Function::Ln && arg.is_constant() && arg.constant_value() == 1) return Expr(0);
  auto node = std::make_shared<AtomNode>();
  node->kind = AtomNode::Kind::Function;
  node->function = f;
  node->free = arg.free_symbols();
  node->args.push_back(arg);
  return Expr::from_atom(std::move(node));
}

Expr opaque(const std::string& name, std::vector<unsigned> partials, std::vector<Expr> args) {
  if (partials.size() != args.size()) {
    throw std::invalid_argument("opaque function " + name + ": partial count mismatch");
  }
  auto node = std::make_shared<AtomNode>();
  node->kind = AtomNode::Kind::Opaque;
  node->name = name;
  node->partials = std::move(partials);
  for (const auto& a : args) node->free = merge_free(node->free, a.free_symbols());
  node->args = std::move(args);
  return Expr::from_atom(std::move(node));
}

// ---------------------------------------------------------------------------
// Differentiation and substitution

namespace {

Expr diff_atom(const Atom& atom, const Symbol& c) {
  switch (atom->kind) {
    case AtomNode::Kind::Symbol:
      return atom->symbol == c ? Expr(1) : Expr(0);
    case AtomNode::Kind::Function: {
      const Expr& arg = atom->args[0];
      Expr d = diff(arg, c);
      if (d.is_zero()) return d;
      switch (atom->function) {
        case Function::Sin: return apply(Function::Cos, arg) * d;
        case Function::Cos: return -(apply(Function::Sin, arg) * d);
        case Function::Exp: return Expr::from_atom(atom) * d;
        case Function::Ln: return pow(arg, -1) * d;
      }
      return Expr();
    }
    case AtomNode::Kind::Reciprocal: {
      Expr d = diff(atom->args[0], c);
      if (d.is_zero()) return d;
      return -(Expr::from_atom(atom, 2) * d);
    }
    case AtomNode::Kind::Opaque: {
      Expr out;
      for (std::size_t j = 0; j < atom->args.size(); ++j) {
        Expr d = diff(atom->args[j], c);
        if (d.is_zero()) continue;
        auto partials = atom->partials;
        ++partials[j];
        out += opaque(atom->name, std::move(partials), atom->args) * d;
      }
      return out;
    }
  }
  return Expr();
}

Expr substitute_atom(const Atom& atom, const Bindings& b) {
  switch (atom->kind) {
    case AtomNode::Kind::Symbol: {
      auto it = b.find(atom->symbol);
      return it == b.end() ? Expr::from_atom(atom) : it->second;
    }
    case AtomNode::Kind::Function:
      return apply(atom->function, substitute(atom->args[0], b));
    case AtomNode::Kind::Reciprocal:
      return pow(substitute(atom->args[0], b), -1);
    case AtomNode::Kind::Opaque: {
      std::vector<Expr> args;
      for (const auto& a : atom->args) args.push_back(substitute(a, b));
      return opaque(atom->name, atom->partials, std::move(args));
    }
  }
  return Expr();
}

}  // namespace

Expr diff(const Expr& e, const Symbol& c) {
  if (!e.depends_on(c)) return Expr();
  TermMap out;
  for (const auto& [m, coeff] : e.terms()) {
    for (std::size_t k = 0; k < m.factors.size(); ++k) {
      const Factor& f = m.factors[k];
      if (!atom_depends_on(*f.atom, c)) continue;
      Expr d = diff_atom(f.atom, c);
      if (d.is_zero()) continue;
      Monomial rest = m;
      if (--rest.factors[k].exponent == 0) {
        rest.factors.erase(rest.factors.begin() + static_cast<std::ptrdiff_t>(k));
      }
      accumulate_product(out, rest, coeff * f.exponent, d);
    }
  }
  return Expr::from_terms(std::move(out));
}

Expr substitute(const Expr& e, const Bindings& bindings) {
  if (bindings.empty()) return e;
  bool touched = false;
  for (const auto& s : e.free_symbols()) {
    if (bindings.count(s)) {
      touched = true;
      break;
    }
  }
  if (!touched) return e;

  Expr result;
  for (const auto& [m, c] : e.terms()) {
    Monomial kept;
    Expr replaced(1);
    for (const auto& f : m.factors) {
      if (atom_touches(*f.atom, bindings)) {
        replaced *= pow(substitute_atom(f.atom, bindings), f.exponent);
      } else {
        kept.factors.push_back(f);
      }
    }
    TermMap piece;
    accumulate_product(piece, kept, c, replaced);
    result += Expr::from_terms(std::move(piece));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double evaluate_atom(const AtomNode& a, const std::function<double(const Symbol&)>& lookup) {
  switch (a.kind) {
    case AtomNode::Kind::Symbol:
      return lookup(a.symbol);
    case AtomNode::Kind::Function: {
      double x = evaluate(a.args[0], lookup);
      switch (a.function) {
        case Function::Sin: return std::sin(x);
        case Function::Cos: return std::cos(x);
        case Function::Exp: return std::exp(x);
        case Function::Ln: return std::log(x);
      }
      return 0.0;
    }
    case AtomNode::Kind::Reciprocal:
      return 1.0 / evaluate(a.args[0], lookup);
    case AtomNode::Kind::Opaque:
      throw Error("cannot evaluate undeclared function " + a.name + " numerically");
  }
  return 0.0;
}

}  // namespace

double evaluate(const Expr& e, const std::function<double(const Symbol&)>& lookup) {
  double total = 0.0;
  for (const auto& [m, c] : e.terms()) {
    double term = c.get_d();
    for (const auto& f : m.factors) term *= std::pow(evaluate_atom(*f.atom, lookup), f.exponent);
    total += term;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Rendering

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

std::string atom_text(const AtomNode& a, bool latex);

std::string expr_text(const Expr& e, bool latex);

std::string opaque_text(const AtomNode& a, bool latex) {
  std::string head = a.name;
  bool any = std::any_of(a.partials.begin(), a.partials.end(), [](unsigned p) { return p != 0; });
  if (any) {
    if (a.partials.size() == 1) {
      head += std::string(a.partials[0], '\'');
    } else {
      head += "'[";
      for (std::size_t i = 0; i < a.partials.size(); ++i) {
        if (i) head += ",";
        head += std::to_string(a.partials[i]);
      }
      head += "]";
    }
  }
  std::string out = head + (latex ? "\\left(" : "(");
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ", ";
    out += expr_text(a.args[i], latex);
  }
  return out + (latex ? "\\right)" : ")");
}

std::string atom_text(const AtomNode& a, bool latex) {
  switch (a.kind) {
    case AtomNode::Kind::Symbol:
      return latex ? render_latex(a.symbol) : render(a.symbol);
    case AtomNode::Kind::Function:
      if (latex) {
        return std::string("\\") + function_name(a.function) + "\\left(" +
               expr_text(a.args[0], true) + "\\right)";
      }
      return std::string(function_name(a.function)) + "(" + expr_text(a.args[0], false) + ")";
    case AtomNode::Kind::Reciprocal:
      return latex ? "\\left(" + expr_text(a.args[0], true) + "\\right)"
                   : "(" + expr_text(a.args[0], false) + ")";
    case AtomNode::Kind::Opaque:
      return opaque_text(a, latex);
  }
  return "?";
}

std::string factor_text(const Factor& f, bool latex) {
  std::string base = atom_text(*f.atom, latex);
  int e = f.exponent;
  if (f.atom->kind == AtomNode::Kind::Reciprocal) e = -e;
  if (e == 1) return base;
  if (latex) return base + "^{" + std::to_string(e) + "}";
  return base + "^" + std::to_string(e);
}

std::string rational_latex(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

std::string expr_text(const Expr& e, bool latex) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    bool negative = c < 0;
    Rational mag = abs(c);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string coeff = latex ? rational_latex(mag) : to_string(mag);
    if (m.empty()) {
      out += coeff;
      continue;
    }
    if (mag != 1) out += coeff + (latex ? " " : "*");
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
      if (i) out += latex ? " " : "*";
      out += factor_text(m.factors[i], latex);
    }
  }
  return out;
}

}  // namespace

std::string to_string(const Expr& e) { return expr_text(e, false); }
std::string to_latex(const Expr& e) { return expr_text(e, true); }

}  // namespace jetvar
