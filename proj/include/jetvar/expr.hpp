#pragma once

// Canonical symbolic scalars.
//
// An Expr is always stored in normal form: an expanded sum of monomials with
// exact rational coefficients, monomials kept in a fixed graded order over
// atoms. Atoms are coordinate symbols, elementary-function applications
// (sin, cos, exp, ln), reciprocals of non-monomial sums, and applications of
// opaque user functions together with their formal partial derivatives.
// Atom arguments are themselves Exprs, hence normalized recursively.
//
// Distinct atoms are treated as independent variables, so the zero test is
// complete on polynomials and sound but incomplete once function atoms appear
// (sin(u)^2 + cos(u)^2 - 1 stays as written).

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "jetvar/symbol.hpp"

namespace jetvar {

using Rational = mpq_class;

class Expr;
struct AtomNode;
using Atom = std::shared_ptr<const AtomNode>;

struct Factor {
  Atom atom;
  int exponent = 1;
};

struct Monomial {
  std::vector<Factor> factors;  // sorted by atom, no zero exponents
  int degree() const;
  bool empty() const { return factors.empty(); }
};

struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using TermMap = std::map<Monomial, Rational, MonomialOrder>;

class Expr {
 public:
  Expr();  // canonical zero
  Expr(int value);
  Expr(const Rational& value);
  explicit Expr(const Symbol& symbol);

  static Expr from_atom(Atom atom, int exponent = 1);
  static Expr from_terms(TermMap terms);

  const TermMap& terms() const;
  std::size_t size() const { return terms().size(); }

  bool is_zero() const;
  bool is_constant() const;
  // Throws std::logic_error if not constant.
  Rational constant_value() const;

  std::vector<Symbol> free_symbols() const;
  bool depends_on(const Symbol& s) const;

  Expr& operator+=(const Expr& other);
  Expr& operator-=(const Expr& other);
  Expr& operator*=(const Expr& other);

  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(Expr a, const Expr& b) { return a *= b; }
  friend Expr operator-(const Expr& a);

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Data;
  explicit Expr(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

int compare(const Expr& a, const Expr& b);
bool operator<(const Expr& a, const Expr& b);

enum class Function : std::uint8_t { Sin, Cos, Exp, Ln };

struct AtomNode {
  enum class Kind : std::uint8_t { Symbol, Function, Reciprocal, Opaque };

  Kind kind = Kind::Symbol;
  jetvar::Symbol symbol;           // Kind::Symbol
  jetvar::Function function{};     // Kind::Function
  std::string name;                // Kind::Opaque
  std::vector<unsigned> partials;  // Kind::Opaque, derivative count per argument
  std::vector<Expr> args;          // argument(s) of Function / Reciprocal / Opaque
  std::vector<jetvar::Symbol> free;  // sorted free symbols
};

int compare(const Atom& a, const Atom& b);

// e^n for any integer n. A negative power of a single monomial stays a
// Laurent monomial; of a sum it becomes a reciprocal atom.
Expr pow(const Expr& base, int n);
Expr apply(Function f, const Expr& arg);
// Opaque function symbol (undeclared function) with formal partials.
Expr opaque(const std::string& name, std::vector<unsigned> partials, std::vector<Expr> args);

// ∂e/∂c with every other coordinate symbol independent.
Expr diff(const Expr& e, const Symbol& c);

// Simultaneous replacement of symbols.
using Bindings = std::map<Symbol, Expr>;
Expr substitute(const Expr& e, const Bindings& bindings);

// Numeric value with symbols resolved by `lookup`. Opaque functions throw.
double evaluate(const Expr& e, const std::function<double(const Symbol&)>& lookup);

std::string to_string(const Expr& e);
std::string to_latex(const Expr& e);
std::string to_string(const Rational& q);

}  // namespace jetvar
