#include "jetvar/term.hpp"

#include <stdexcept>

namespace jetvar {

Term Term::num(const Rational& q) {
  Term t;
  t.kind = Kind::Number;
  t.number = q;
  return t;
}

Term Term::var(const Symbol& s) {
  Term t;
  t.kind = Kind::Variable;
  t.symbol = s;
  return t;
}

Term Term::unary(Kind k, Term a) {
  Term t;
  t.kind = k;
  t.children.push_back(std::move(a));
  return t;
}

Term Term::binary(Kind k, Term a, Term b) {
  Term t;
  t.kind = k;
  t.children.push_back(std::move(a));
  t.children.push_back(std::move(b));
  return t;
}

Term Term::power(Term base, int exponent) {
  Term t;
  t.kind = Kind::Pow;
  t.exponent = exponent;
  t.children.push_back(std::move(base));
  return t;
}

Term Term::call(std::string callee, std::vector<Term> args, std::vector<unsigned> partials) {
  Term t;
  t.kind = Kind::Call;
  t.callee = std::move(callee);
  t.children = std::move(args);
  t.partials = std::move(partials);
  return t;
}

namespace {

bool elementary(const std::string& name, Function& f) {
  if (name == "sin") f = Function::Sin;
  else if (name == "cos") f = Function::Cos;
  else if (name == "exp") f = Function::Exp;
  else if (name == "ln") f = Function::Ln;
  else return false;
  return true;
}

}  // namespace

Expr normalize(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Number:
      return Expr(t.number);
    case Term::Kind::Variable:
      return Expr(t.symbol);
    case Term::Kind::Neg:
      return -normalize(t.children[0]);
    case Term::Kind::Add:
      return normalize(t.children[0]) + normalize(t.children[1]);
    case Term::Kind::Sub:
      return normalize(t.children[0]) - normalize(t.children[1]);
    case Term::Kind::Mul:
      return normalize(t.children[0]) * normalize(t.children[1]);
    case Term::Kind::Div:
      return normalize(t.children[0]) * pow(normalize(t.children[1]), -1);
    case Term::Kind::Pow:
      return pow(normalize(t.children[0]), t.exponent);
    case Term::Kind::Call: {
      std::vector<Expr> args;
      for (const auto& c : t.children) args.push_back(normalize(c));
      Function f;
      if (t.partials.empty() && args.size() == 1 && elementary(t.callee, f)) {
        return apply(f, args[0]);
      }
      auto partials = t.partials.empty() ? std::vector<unsigned>(args.size(), 0) : t.partials;
      return opaque(t.callee, std::move(partials), std::move(args));
    }
  }
  throw std::logic_error("unknown term kind");
}

namespace {

const char* elementary_name(Function f) {
  switch (f) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Exp: return "exp";
    case Function::Ln: return "ln";
  }
  return "";
}

Term atom_term(const AtomNode& a) {
  switch (a.kind) {
    case AtomNode::Kind::Symbol:
      return Term::var(a.symbol);
    case AtomNode::Kind::Function:
      return Term::call(elementary_name(a.function), {to_term(a.args[0])});
    case AtomNode::Kind::Reciprocal:
      return Term::power(to_term(a.args[0]), -1);
    case AtomNode::Kind::Opaque: {
      std::vector<Term> args;
      for (const auto& x : a.args) args.push_back(to_term(x));
      return Term::call(a.name, std::move(args), a.partials);
    }
  }
  throw std::logic_error("unknown atom kind");
}

}  // namespace

Term to_term(const Expr& e) {
  if (e.is_zero()) return Term::num(0);
  Term sum;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    Term product = Term::num(c);
    for (const auto& f : m.factors) {
      Term base = atom_term(*f.atom);
      Term factor = f.exponent == 1 ? std::move(base) : Term::power(std::move(base), f.exponent);
      product = Term::binary(Term::Kind::Mul, std::move(product), std::move(factor));
    }
    sum = first ? std::move(product) : Term::binary(Term::Kind::Add, std::move(sum), std::move(product));
    first = false;
  }
  return sum;
}

}  // namespace jetvar
