#pragma once

// Finite-difference checks of symbolic results on sampled sections.
// Central second-order stencils of radius 1; double precision.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "jetvar/variational.hpp"

namespace jetvar {

using GridPoint = std::vector<std::size_t>;
using ScalarField = std::function<double(const std::vector<double>&)>;

// Uniform grid on a box in R^m (m = 1 or 2) carrying one real sample per
// fiber coordinate at every node. Axis 0 varies fastest in storage.
class GridSection {
 public:
  // Throws RangeError if m is not 1 or 2, an axis has fewer than 5 points,
  // or an interval is empty.
  GridSection(std::vector<std::size_t> shape, std::vector<double> lower, std::vector<double> upper,
              std::size_t fibers);

  static GridSection sample(std::vector<std::size_t> shape, std::vector<double> lower,
                            std::vector<double> upper, const std::vector<ScalarField>& fields);

  // Samples expressions in the base coordinates (and pi) of a bundle.
  static GridSection sample(const BundleSpec& bundle, std::vector<std::size_t> shape,
                            std::vector<double> lower, std::vector<double> upper,
                            const std::vector<Expr>& fields);

  std::size_t m() const { return shape_.size(); }
  std::size_t fibers() const { return fibers_; }
  const std::vector<std::size_t>& shape() const { return shape_; }
  double spacing(std::size_t axis) const { return h_[axis]; }
  double coordinate(std::size_t axis, std::size_t index) const;
  std::vector<double> position(const GridPoint& point) const;
  std::size_t size() const { return values_.size() / fibers_; }

  double value(std::size_t fiber, const GridPoint& point) const;
  double& value(std::size_t fiber, const GridPoint& point);

  // Central difference of the given order along a multi-index of order <= 2.
  // Throws StencilError if the stencil leaves the grid, OrderError above order 2.
  double derivative(std::size_t fiber, const MultiIndex& alpha, const GridPoint& point) const;

  // Every grid point at distance >= margin from the boundary, axis 0 fastest.
  std::vector<GridPoint> interior(std::size_t margin) const;

  // this + factor * other, on the same grid.
  GridSection combined(double factor, const GridSection& other) const;

 private:
  std::size_t offset(std::size_t fiber, const GridPoint& point) const;

  std::vector<std::size_t> shape_;
  std::vector<double> lower_;
  std::vector<double> h_;
  std::size_t fibers_;
  std::vector<double> values_;
};

// e with x^i, x^p_α (‖α‖ <= 2) and pi resolved at a grid point. Vertical
// coordinates are rejected with CoordinateError.
double eval_jet(const BundleSpec& bundle, const Expr& e, const GridSection& s, const GridPoint& point);

// Sum in a fixed pairwise order.
double pairwise_sum(std::span<const double> values);

struct TotalDerivativeCheck {
  double max_relative_error = 0.0;
  std::size_t points = 0;
};

// eval_jet(D_axis e) against the central difference along the axis of the
// field p -> eval_jet(e, p), over points two nodes inside the boundary.
// Relative error = max |difference| / max |eval_jet(D_axis e)|, 0 when both vanish.
TotalDerivativeCheck check_total_derivative(const BundleSpec& bundle, const Expr& e,
                                            const GridSection& s, std::size_t axis = 0);

struct ActionVariation {
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_error = 0.0;
  std::vector<std::string> warnings;
};

constexpr double kActionStep = 1e-4;

// lhs = (A(ε) − A(−ε)) / 2ε with A the grid quadrature of L(j^1(s + εη));
// rhs = quadrature of Σ_p E_p(j^2 s) η^p. Both use nodes one step inside the
// boundary with weight Π h. Requires l = m; warns if η is nonzero within
// three nodes of the boundary, where its differences would reach the edge.
ActionVariation check_action_variation(const Lagrangian& lambda, const GridSection& s,
                                       const GridSection& eta, double epsilon = kActionStep);

// Smooth compact bump exp(1 − 1/(1 − ρ²)) for ρ < 1, ρ = |x − center| / radius.
ScalarField bump(std::vector<double> center, double radius);

}  // namespace jetvar
