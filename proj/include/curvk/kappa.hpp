#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "curvk/convex_function.hpp"
#include "curvk/extended_real.hpp"

namespace curvk {

/// Geometric sequence eps_j = eps0 * ratio^j, j < count.
struct EpsilonSchedule {
  double eps0 = 0.1;
  double ratio = 0.5;
  int count = 14;

  void validate() const;
  std::vector<double> values() const;
};

/// Finite, symmetric set of unit directions in R^n.
class DirectionSet {
 public:
  /// Deterministic defaults: {-1,+1} in 1-D, 256 equally spaced angles in
  /// 2-D, 1024 points (512 spherical-Fibonacci points and their antipodes)
  /// in 3-D.
  static DirectionSet standard(int dim);
  /// `count` directions; must be even for dim >= 2.
  static DirectionSet uniform(int dim, int count);
  /// Validates unit length (1e-12) and symmetry.
  static DirectionSet from(std::vector<Vec> vectors);

  int dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<Vec>& vectors() const { return vectors_; }

  /// A superset with twice as many directions.
  DirectionSet refined() const;

 private:
  DirectionSet(int dim, std::vector<Vec> vectors) : dim_(dim), vectors_(std::move(vectors)) {}
  int dim_ = 1;
  std::vector<Vec> vectors_;
};

struct KappaEstimate {
  ExtendedReal value;
  bool gradient_defined = true;
  bool diverging = false;
  std::vector<std::pair<double, double>> per_eps;  // (eps, max over h of the quotient)
  int tail_window = 4;
  Vec argmax_direction;  // maximising direction at the smallest eps
};

struct KappaOptions {
  EpsilonSchedule schedule;
  int directions = 0;  // 0: DirectionSet::standard
  int tail_window = 4;
};

/// 2 eps^-2 (u(x0 + eps h) - u(x0) - eps <grad u(x0), h>), or +inf when the
/// gradient at x0 does not exist. Throws DomainError when x0 + eps h leaves
/// the domain.
ExtendedReal peano_quotient(const ConvexFunction& u, const Vec& x0, const Vec& h, double eps);

/// Numerical surrogate of the generalised largest eigenvalue K(u, x0): the
/// maximum over directions of the Peano quotient, maximised again over the
/// trailing `tail_window` radii of the schedule.
///
/// Only eps > 0 is evaluated: with a symmetric direction set, (-eps) h ranges
/// over the same points as eps h, so negative radii add nothing.
///
/// The value is +inf with `diverging` set when the tail quotients grow
/// monotonically by more than a factor 2 across the window.
KappaEstimate estimate_K(const ConvexFunction& u, const Vec& x0, const EpsilonSchedule& sched,
                         const DirectionSet& dirs, int tail_window = 4);
KappaEstimate estimate_K(const ConvexFunction& u, const Vec& x0, const KappaOptions& opts = {});

/// Largest eigenvalue of the analytic Hessian at x0.
double analytic_lambda_max(const ConvexFunction& u, const Vec& x0);

/// max |grad u(x) - grad u(y)| / |x - y| over the given pairs; pairs with an
/// undefined gradient are skipped. Throws DomainError if every pair is.
double lipschitz_grad_bound(const ConvexFunction& u,
                            const std::vector<std::pair<Vec, Vec>>& pairs);

/// Sampled version over `region`: half the pairs are uniform, half are short
/// pairs at log-uniform separations, all from a seeded generator.
double lipschitz_grad_bound(const ConvexFunction& u, const Box& region, int samples,
                            std::uint64_t seed = 0);

}  // namespace curvk
