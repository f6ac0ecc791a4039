#include "jetvar/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jetvar/errors.hpp"

namespace jetvar {

GridSection::GridSection(std::vector<std::size_t> shape, std::vector<double> lower,
                         std::vector<double> upper, std::size_t fibers)
    : shape_(std::move(shape)), lower_(std::move(lower)), fibers_(fibers) {
  if (shape_.empty() || shape_.size() > 2) throw RangeError("grid sections support m = 1 or 2");
  if (lower_.size() != shape_.size() || upper.size() != shape_.size()) {
    throw RangeError("grid bounds need one interval per axis");
  }
  if (fibers_ == 0) throw RangeError("grid section needs at least one fiber");
  std::size_t total = fibers_;
  for (std::size_t a = 0; a < shape_.size(); ++a) {
    if (shape_[a] < 5) throw RangeError("grid needs at least 5 points per axis");
    if (!(upper[a] > lower_[a])) throw RangeError("grid interval is empty");
    h_.push_back((upper[a] - lower_[a]) / static_cast<double>(shape_[a] - 1));
    total *= shape_[a];
  }
  values_.assign(total, 0.0);
}

GridSection GridSection::sample(std::vector<std::size_t> shape, std::vector<double> lower,
                                std::vector<double> upper, const std::vector<ScalarField>& fields) {
  GridSection g(std::move(shape), std::move(lower), std::move(upper), fields.size());
  for (const auto& point : g.interior(0)) {
    auto x = g.position(point);
    for (std::size_t p = 0; p < fields.size(); ++p) g.value(p, point) = fields[p](x);
  }
  return g;
}

GridSection GridSection::sample(const BundleSpec& bundle, std::vector<std::size_t> shape,
                                std::vector<double> lower, std::vector<double> upper,
                                const std::vector<Expr>& fields) {
  if (shape.size() != bundle.m()) throw RangeError("grid dimension differs from base dimension");
  std::vector<ScalarField> fns;
  for (const auto& e : fields) {
    for (const auto& s : e.free_symbols()) {
      if (s.kind != SymbolKind::Base && s.kind != SymbolKind::Constant) {
        throw CoordinateError("sampled field depends on '" + render(s) + "'");
      }
    }
    fns.push_back([e](const std::vector<double>& x) {
      return evaluate(e, [&](const Symbol& s) {
        if (s.kind == SymbolKind::Constant) return std::numbers::pi;
        return x[s.slot];
      });
    });
  }
  return sample(std::move(shape), std::move(lower), std::move(upper), fns);
}

double GridSection::coordinate(std::size_t axis, std::size_t index) const {
  return lower_[axis] + h_[axis] * static_cast<double>(index);
}

std::vector<double> GridSection::position(const GridPoint& point) const {
  std::vector<double> x;
  for (std::size_t a = 0; a < m(); ++a) x.push_back(coordinate(a, point[a]));
  return x;
}

std::size_t GridSection::offset(std::size_t fiber, const GridPoint& point) const {
  std::size_t idx = 0;
  for (std::size_t a = m(); a-- > 0;) {
    if (point[a] >= shape_[a]) throw StencilError("grid index outside the grid");
    idx = idx * shape_[a] + point[a];
  }
  return idx * fibers_ + fiber;
}

double GridSection::value(std::size_t fiber, const GridPoint& point) const {
  return values_[offset(fiber, point)];
}

double& GridSection::value(std::size_t fiber, const GridPoint& point) {
  return values_[offset(fiber, point)];
}

double GridSection::derivative(std::size_t fiber, const MultiIndex& alpha, const GridPoint& point) const {
  if (alpha.range() != m()) throw RangeError("multi-index range differs from grid dimension");
  const unsigned order = alpha.order();
  if (order > 2) throw OrderError("finite-difference stencils cover jet order <= 2");
  for (std::size_t a = 0; a < m(); ++a) {
    if (alpha[a] > 0 && (point[a] < 1 || point[a] + 1 >= shape_[a])) {
      throw StencilError("stencil leaves the grid at index " + std::to_string(point[a]));
    }
  }
  auto at = [&](std::size_t a, int da, std::size_t b = 0, int db = 0) {
    GridPoint q = point;
    q[a] = static_cast<std::size_t>(static_cast<long>(q[a]) + da);
    if (db != 0) q[b] = static_cast<std::size_t>(static_cast<long>(q[b]) + db);
    return value(fiber, q);
  };
  if (order == 0) return value(fiber, point);
  auto seq = alpha.as_sequence();
  if (order == 1) {
    std::size_t a = seq[0];
    return (at(a, 1) - at(a, -1)) / (2.0 * h_[a]);
  }
  std::size_t a = seq[0];
  std::size_t b = seq[1];
  if (a == b) return (at(a, 1) - 2.0 * value(fiber, point) + at(a, -1)) / (h_[a] * h_[a]);
  return (at(a, 1, b, 1) - at(a, 1, b, -1) - at(a, -1, b, 1) + at(a, -1, b, -1)) /
         (4.0 * h_[a] * h_[b]);
}

std::vector<GridPoint> GridSection::interior(std::size_t margin) const {
  std::vector<GridPoint> out;
  for (std::size_t a = 0; a < m(); ++a) {
    if (shape_[a] <= 2 * margin) return out;
  }
  GridPoint p(m(), margin);
  while (true) {
    out.push_back(p);
    std::size_t a = 0;
    while (a < m()) {
      if (++p[a] + margin < shape_[a]) break;
      p[a] = margin;
      ++a;
    }
    if (a == m()) break;
  }
  return out;
}

GridSection GridSection::combined(double factor, const GridSection& other) const {
  if (other.shape_ != shape_ || other.fibers_ != fibers_ || other.lower_ != lower_ || other.h_ != h_) {
    throw RangeError("combining sections on different grids");
  }
  GridSection out = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] += factor * other.values_[i];
  return out;
}

double eval_jet(const BundleSpec& bundle, const Expr& e, const GridSection& s, const GridPoint& point) {
  if (s.m() != bundle.m() || s.fibers() != bundle.n()) {
    throw RangeError("grid section does not match the bundle dimensions");
  }
  require_coordinates(bundle, e, Orders{2, std::nullopt});
  return evaluate(e, [&](const Symbol& sym) -> double {
    switch (sym.kind) {
      case SymbolKind::Constant:
        return std::numbers::pi;
      case SymbolKind::Base:
        return s.coordinate(sym.slot, point[sym.slot]);
      case SymbolKind::Jet:
        return s.derivative(sym.slot, sym.index, point);
      case SymbolKind::Vertical:
        break;
    }
    throw CoordinateError("vertical coordinate '" + render(sym) + "' has no grid value");
  });
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double total = 0.0;
    for (double v : values) total += v;
    return total;
  }
  std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

TotalDerivativeCheck check_total_derivative(const BundleSpec& bundle, const Expr& e,
                                            const GridSection& s, std::size_t axis) {
  if (axis >= bundle.m()) throw RangeError("axis outside base range");
  require_coordinates(bundle, e, Orders{1, std::nullopt});
  Expr De = total_derivative(bundle, e, axis, Orders{1, std::nullopt});
  const double h = s.spacing(axis);
  double max_diff = 0.0;
  double max_lhs = 0.0;
  TotalDerivativeCheck result;
  for (const auto& point : s.interior(2)) {
    GridPoint up = point;
    GridPoint down = point;
    ++up[axis];
    --down[axis];
    double lhs = eval_jet(bundle, De, s, point);
    double rhs = (eval_jet(bundle, e, s, up) - eval_jet(bundle, e, s, down)) / (2.0 * h);
    max_diff = std::max(max_diff, std::abs(lhs - rhs));
    max_lhs = std::max(max_lhs, std::abs(lhs));
    ++result.points;
  }
  result.max_relative_error = max_lhs > 0.0 ? max_diff / max_lhs : max_diff;
  return result;
}

namespace {

double quadrature(const BundleSpec& bundle, const Expr& integrand, const GridSection& s,
                  const std::vector<GridPoint>& points) {
  double weight = 1.0;
  for (std::size_t a = 0; a < s.m(); ++a) weight *= s.spacing(a);
  std::vector<double> terms;
  terms.reserve(points.size());
  for (const auto& p : points) terms.push_back(weight * eval_jet(bundle, integrand, s, p));
  return pairwise_sum(terms);
}

}  // namespace

ActionVariation check_action_variation(const Lagrangian& lambda, const GridSection& s,
                                       const GridSection& eta, double epsilon) {
  if (!lambda.classical()) throw DegreeError("action variation needs l = m");
  const BundleSpec& bundle = lambda.bundle();
  const BasisTuple top = basis_tuples(bundle.m(), lambda.degree()).front();
  const Expr L = lambda.value().coefficient(top);
  const auto points = s.interior(1);

  ActionVariation out;
  for (const auto& p : eta.interior(0)) {
    bool near_boundary = false;
    for (std::size_t a = 0; a < eta.m(); ++a) {
      near_boundary |= p[a] < 3 || p[a] + 3 >= eta.shape()[a];
    }
    if (!near_boundary) continue;
    for (std::size_t f = 0; f < eta.fibers(); ++f) {
      if (eta.value(f, p) != 0.0) {
        out.warnings.push_back("variation does not vanish near the boundary; boundary terms are ignored");
        break;
      }
    }
    if (!out.warnings.empty()) break;
  }

  const double plus = quadrature(bundle, L, s.combined(epsilon, eta), points);
  const double minus = quadrature(bundle, L, s.combined(-epsilon, eta), points);
  out.lhs = (plus - minus) / (2.0 * epsilon);

  EulerLagrangeResult el = euler_lagrange(lambda);
  double weight = 1.0;
  for (std::size_t a = 0; a < s.m(); ++a) weight *= s.spacing(a);
  std::vector<Expr> E;
  for (std::size_t q = 0; q < bundle.n(); ++q) E.push_back(el.component(q, top));
  std::vector<double> terms;
  terms.reserve(points.size());
  for (const auto& p : points) {
    double v = 0.0;
    for (std::size_t q = 0; q < bundle.n(); ++q) {
      if (E[q].is_zero()) continue;
      v += eval_jet(bundle, E[q], s, p) * eta.value(q, p);
    }
    terms.push_back(weight * v);
  }
  out.rhs = pairwise_sum(terms);

  double scale = std::max(std::abs(out.lhs), std::abs(out.rhs));
  out.relative_error = scale > 0.0 ? std::abs(out.lhs - out.rhs) / scale : 0.0;
  return out;
}

ScalarField bump(std::vector<double> center, double radius) {
  return [center = std::move(center), radius](const std::vector<double>& x) {
    double rho2 = 0.0;
    for (std::size_t a = 0; a < center.size(); ++a) {
      double d = (x[a] - center[a]) / radius;
      rho2 += d * d;
    }
    if (rho2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - rho2));
  };
}

}  // namespace jetvar
