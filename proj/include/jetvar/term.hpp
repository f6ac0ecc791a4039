#pragma once

#include <string>
#include <vector>

#include "jetvar/expr.hpp"

namespace jetvar {

// Unsimplified expression tree, as produced by the parser. normalize()
// turns it into the canonical Expr.
struct Term {
  enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind = Kind::Number;
  Rational number;                 // Number
  Symbol symbol;                   // Variable
  std::string callee;              // Call: sin, cos, exp, ln or an opaque name
  std::vector<unsigned> partials;  // Call on an opaque name
  int exponent = 1;                // Pow
  std::vector<Term> children;

  static Term num(const Rational& q);
  static Term var(const Symbol& s);
  static Term unary(Kind k, Term a);
  static Term binary(Kind k, Term a, Term b);
  static Term power(Term base, int exponent);
  static Term call(std::string callee, std::vector<Term> args, std::vector<unsigned> partials = {});
};

Expr normalize(const Term& t);

// Tree whose normalization reproduces e exactly.
Term to_term(const Expr& e);

}  // namespace jetvar
