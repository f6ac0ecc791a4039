#include "jetvar/form.hpp"

#include <algorithm>

#include "jetvar/errors.hpp"

namespace jetvar {

int sort_with_sign(std::vector<unsigned>& indices) {
  int sign = 1;
  // Insertion sort; each adjacent swap is a transposition.
  for (std::size_t i = 1; i < indices.size(); ++i) {
    for (std::size_t j = i; j > 0 && indices[j - 1] >= indices[j]; --j) {
      if (indices[j - 1] == indices[j]) return 0;
      std::swap(indices[j - 1], indices[j]);
      sign = -sign;
    }
  }
  return sign;
}

Form::Form(std::size_t dim, unsigned degree) : dim_(dim), degree_(degree) {}

Form Form::scalar(std::size_t dim, const Expr& value) {
  Form f(dim, 0);
  f.add({}, value);
  return f;
}

Form Form::monomial(std::size_t dim, const std::vector<unsigned>& indices, const Expr& c) {
  Form f(dim, static_cast<unsigned>(indices.size()));
  f.add(indices, c);
  return f;
}

Expr Form::coefficient(const BasisTuple& key) const {
  auto it = coeffs_.find(key);
  return it == coeffs_.end() ? Expr() : it->second;
}

void Form::add(const std::vector<unsigned>& indices, const Expr& c) {
  if (indices.size() != degree_) {
    throw DegreeError("basis tuple of length " + std::to_string(indices.size()) +
                      " added to a form of degree " + std::to_string(degree_));
  }
  for (unsigned i : indices) {
    if (i >= dim_) throw RangeError("form index " + std::to_string(i) + " outside base range");
  }
  if (c.is_zero()) return;
  BasisTuple key = indices;
  int sign = sort_with_sign(key);
  if (sign == 0) return;
  Expr term = sign > 0 ? c : -c;
  auto [it, inserted] = coeffs_.try_emplace(key, term);
  if (!inserted) {
    it->second += term;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

Form& Form::operator+=(const Form& other) {
  if (other.dim_ != dim_ || other.degree_ != degree_) {
    throw RangeError("adding forms of different range or degree");
  }
  for (const auto& [key, c] : other.coeffs_) add(key, c);
  return *this;
}

Form& Form::operator-=(const Form& other) { return *this += -other; }

Form Form::operator-() const {
  return map([](const Expr& c) { return -c; });
}

Form Form::operator*(const Expr& c) const {
  return map([&](const Expr& a) { return a * c; });
}

Form Form::map(const std::function<Expr(const Expr&)>& f) const {
  Form out(dim_, degree_);
  for (const auto& [key, c] : coeffs_) {
    Expr v = f(c);
    if (!v.is_zero()) out.coeffs_.emplace(key, std::move(v));
  }
  return out;
}

bool Form::operator==(const Form& other) const {
  return dim_ == other.dim_ && degree_ == other.degree_ && coeffs_ == other.coeffs_;
}

std::vector<BasisTuple> basis_tuples(std::size_t dim, unsigned degree) {
  std::vector<BasisTuple> out;
  if (degree > dim) return out;
  BasisTuple t(degree);
  for (unsigned i = 0; i < degree; ++i) t[i] = i;
  while (true) {
    out.push_back(t);
    int i = static_cast<int>(degree) - 1;
    while (i >= 0 && t[i] == dim - degree + static_cast<unsigned>(i)) --i;
    if (i < 0) break;
    ++t[i];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < degree; ++j) t[j] = t[j - 1] + 1;
  }
  return out;
}

Form wedge(const Form& omega, const Form& theta) {
  if (omega.dim() != theta.dim()) throw RangeError("wedge of forms over different base ranges");
  Form out(omega.dim(), omega.degree() + theta.degree());
  if (out.degree() > out.dim()) return out;
  for (const auto& [a, ca] : omega.coefficients()) {
    for (const auto& [b, cb] : theta.coefficients()) {
      std::vector<unsigned> indices = a;
      indices.insert(indices.end(), b.begin(), b.end());
      out.add(indices, ca * cb);
    }
  }
  return out;
}

Form interior_product(unsigned j, const Form& omega) {
  if (omega.degree() == 0) throw DegreeError("interior product of a 0-form");
  if (j >= omega.dim()) throw RangeError("contraction index outside base range");
  Form out(omega.dim(), omega.degree() - 1);
  for (const auto& [key, c] : omega.coefficients()) {
    auto it = std::find(key.begin(), key.end(), j);
    if (it == key.end()) continue;
    auto q = static_cast<std::size_t>(it - key.begin());  // 0-based slot: sign (-1)^q
    BasisTuple rest = key;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(q));
    out.add(rest, q % 2 == 0 ? c : -c);
  }
  return out;
}

namespace {

std::string form_text(const Form& f, const std::vector<std::string>& names, bool latex) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : f.coefficients()) {
    if (!first) out += " + ";
    first = false;
    std::string coeff = latex ? to_latex(c) : to_string(c);
    if (key.empty()) {
      out += coeff;
      continue;
    }
    out += "(" + coeff + ")";
    std::string basis;
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i) basis += latex ? " \\wedge " : "^";
      basis += (latex ? "\\mathrm{d}" : "d") + names.at(key[i]);
    }
    out += (latex ? " \\, " : " ") + basis;
  }
  return out;
}

}  // namespace

std::string to_string(const Form& f, const std::vector<std::string>& base_names) {
  return form_text(f, base_names, false);
}

std::string to_latex(const Form& f, const std::vector<std::string>& base_names) {
  return form_text(f, base_names, true);
}

}  // namespace jetvar
