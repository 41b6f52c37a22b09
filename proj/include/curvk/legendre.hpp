#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "curvk/convex_function.hpp"

namespace curvk {

/// Samples of a function on a regular lattice in dimension 1 or 2. +inf
/// entries mark points outside the effective domain.
struct GridFunction {
  Lattice grid;
  std::vector<double> values;

  int dim() const { return grid.dim(); }
  std::size_t size() const { return values.size(); }
  Vec point(std::size_t i) const { return grid.point(i); }
  /// Throws InputError on size mismatch, NaN, dim > 2 or an all-infinite grid.
  void validate() const;
};

GridFunction sample_grid(const ConvexFunction& f, const Lattice& grid);

/// Slope lattice spanning [min, max] of the adjacent difference quotients
/// along each axis, padded by 5% per side. `count` defaults to 4(N-1)+1
/// for an N-point axis, fine enough that every subdifferential interval of
/// the piecewise-linear input contains a slope node.
Lattice slope_lattice(const GridFunction& f, int count = 0);

/// Conjugate of the piecewise-linear extension of a 1-D grid function: lower
/// hull of the finite samples, then a single walk along the sorted slopes.
GridFunction conjugate_grid_1d(const GridFunction& f, int slope_count = 0);
GridFunction conjugate_grid_1d(const GridFunction& f, const Lattice& slopes);

/// f*(s) = max over grid points of <s,x> - f(x), by exhaustive search.
GridFunction conjugate_bruteforce(const GridFunction& f, const Lattice& slopes);

/// Closed-form conjugate of a catalog function.
struct ConjugatePair {
  std::string primal;
  std::function<double(const Vec&)> dual;
  std::function<std::optional<Mat>(const Vec&)> dual_hessian;
  /// Slopes y for which the formula equals the conjugate of the function
  /// restricted to its catalog domain.
  Box validity;

  /// The dual as a ConvexFunction on `box` (defaults to validity, clipped to
  /// half-width 1e3).
  ConvexFunction as_function(std::optional<Box> box = std::nullopt) const;
};

/// Supports quadratics with invertible Q, powers with k > 1, hemispheres
/// and the negative semicircle. Throws InputError otherwise.
ConjugatePair closed_form_conjugate(const ConvexFunction& f);
ConjugatePair closed_form_conjugate(const std::string& label);

/// f(y) >= f(x) + <s, y - x> - tol for every y on a probe lattice around x.
/// Probe half-width defaults to 5% of the domain width; tol defaults to
/// 1e-9 (1 + |f(x)|).
bool subdifferential_contains(const ConvexFunction& f, const Vec& x, const Vec& s,
                              std::optional<double> tol = std::nullopt,
                              std::optional<double> half_width = std::nullopt);

/// max |f - f**| over interior grid points with finite f. The biconjugate is
/// taken by brute force on the original lattice.
double biconjugate_check(const GridFunction& f);

/// Piecewise-linear interpolant of a 1-D grid (multilinear in 2-D) as a
/// ConvexFunction on the grid bounds.
ConvexFunction grid_to_function(const GridFunction& g, std::string label);

/// Upper bound on the gap between a convex function and its piecewise-linear
/// interpolant on this 1-D grid: max second difference / 8.
double interpolation_error_bound(const GridFunction& g);

/// CSV with header `x,value` or `x,y,value`; `inf` allowed as a value.
void write_grid_csv(std::ostream& os, const GridFunction& g);
GridFunction read_grid_csv(std::istream& is);

}  // namespace curvk
