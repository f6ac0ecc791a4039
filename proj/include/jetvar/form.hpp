#pragma once

#include <functional>
#include <map>
#include <vector>

#include "jetvar/expr.hpp"

namespace jetvar {

// Strictly increasing basis tuple (i1 < ... < il), 0-based.
using BasisTuple = std::vector<unsigned>;

// Exterior form of fixed degree over a coordinate range of size `dim`,
// stored on strictly increasing tuples. Missing keys are zero coefficients;
// stored coefficients are never zero.
class Form {
 public:
  Form(std::size_t dim, unsigned degree);

  static Form scalar(std::size_t dim, const Expr& value);
  // c * dx^{i1} ∧ ... ∧ dx^{il} for an arbitrary index sequence; the
  // sequence is sorted with its permutation sign, repeated indices give zero.
  static Form monomial(std::size_t dim, const std::vector<unsigned>& indices, const Expr& c);

  std::size_t dim() const { return dim_; }
  unsigned degree() const { return degree_; }
  const std::map<BasisTuple, Expr>& coefficients() const { return coeffs_; }
  Expr coefficient(const BasisTuple& key) const;
  bool is_zero() const { return coeffs_.empty(); }

  // Adds c * dx^{indices...} with sign resolution. Throws RangeError on an
  // out-of-range index and DegreeError on a length mismatch.
  void add(const std::vector<unsigned>& indices, const Expr& c);

  Form& operator+=(const Form& other);
  Form& operator-=(const Form& other);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  Form operator-() const;
  // Scalar (0-form) multiplication.
  Form operator*(const Expr& c) const;

  // Coefficient-wise transform; zero results are dropped.
  Form map(const std::function<Expr(const Expr&)>& f) const;

  bool operator==(const Form& other) const;

 private:
  std::size_t dim_;
  unsigned degree_;
  std::map<BasisTuple, Expr> coeffs_;
};

// Sign of the permutation sorting `indices`, and the sorted tuple; sign 0 if
// an index repeats.
int sort_with_sign(std::vector<unsigned>& indices);

// All strictly increasing tuples of the given length, lexicographic.
std::vector<BasisTuple> basis_tuples(std::size_t dim, unsigned degree);

// ω ∧ θ. Throws RangeError if the base ranges differ.
Form wedge(const Form& omega, const Form& theta);

// ∂/∂x^j ⌟ ω. Throws DegreeError on a 0-form, RangeError if j >= dim.
Form interior_product(unsigned j, const Form& omega);

std::string to_string(const Form& f, const std::vector<std::string>& base_names);
std::string to_latex(const Form& f, const std::vector<std::string>& base_names);

}  // namespace jetvar
