#pragma once

// Surface grammar for scalar expressions over a bundle.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' ['-' | '+'] integer)?
//   primary := number | '(' expr ')' | name
//            | sin|cos|exp|ln '(' expr ')'
//            | fn '(' expr, ... ')' | fn'... '(' expr ')' | fn'[n, ...] '(' expr, ... ')'
//
// Names: base coordinates, pi, fiber jets u, u_xy or u[1,1], verticals du,
// du_x or du[1,0]. Numbers are exact: 0.25 is 1/4.

#include <set>
#include <string>

#include "jetvar/bundle.hpp"
#include "jetvar/expr.hpp"

namespace jetvar {

struct ParseContext {
  BundleSpec bundle;
  Orders orders;
  std::set<std::string> functions;  // declared opaque function names
  unsigned line = 1;
  unsigned column = 1;  // column of the first character of the text
};

// Throws ParseError with the position of the offending token.
Expr parse_expression(const std::string& text, const ParseContext& context);

}  // namespace jetvar
