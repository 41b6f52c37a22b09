#include "curvk/kappa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "curvk/parallel.hpp"

namespace curvk {

void EpsilonSchedule::validate() const {
  if (!(eps0 > 0.0)) throw DomainError("epsilon schedule needs eps0 > 0");
  if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("epsilon schedule ratio must lie in (0,1)");
  if (count < 1) throw DomainError("epsilon schedule needs a positive count");
}

std::vector<double> EpsilonSchedule::values() const {
  validate();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  double e = eps0;
  for (int j = 0; j < count; ++j) {
    out.push_back(e);
    e *= ratio;
  }
  return out;
}

namespace {

std::vector<Vec> fibonacci_sphere(int m) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / m;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    Vec v = make_vec({rho * std::cos(phi), rho * std::sin(phi), z});
    pts.push_back(v / v.norm());
  }
  return pts;
}

std::vector<Vec> with_antipodes(std::vector<Vec> half) {
  const std::size_t m = half.size();
  for (std::size_t i = 0; i < m; ++i) half.push_back(-half[i]);
  return half;
}

}  // namespace

DirectionSet DirectionSet::standard(int dim) {
  check_dim(dim);
  switch (dim) {
    case 1: return uniform(1, 2);
    case 2: return uniform(2, 256);
    default: return uniform(3, 1024);
  }
}

DirectionSet DirectionSet::uniform(int dim, int count) {
  check_dim(dim);
  if (dim == 1) return DirectionSet(1, {vec1(1.0), vec1(-1.0)});
  if (count < 2 || count % 2 != 0) throw DomainError("direction count must be even and >= 2");
  const int half = count / 2;
  std::vector<Vec> vs;
  if (dim == 2) {
    for (int j = 0; j < half; ++j) {
      const double theta = 2.0 * std::numbers::pi * (static_cast<double>(j) / count);
      vs.push_back(make_vec({std::cos(theta), std::sin(theta)}));
    }
  } else {
    vs = fibonacci_sphere(half);
  }
  return DirectionSet(dim, with_antipodes(std::move(vs)));
}

DirectionSet DirectionSet::from(std::vector<Vec> vectors) {
  if (vectors.empty()) throw InputError("direction set is empty");
  const int dim = static_cast<int>(vectors.front().size());
  check_dim(dim);
  for (const auto& v : vectors) {
    if (v.size() != dim) throw InputError("directions differ in dimension");
    if (std::abs(v.norm() - 1.0) > 1e-12) throw InputError("direction is not a unit vector");
  }
  for (const auto& v : vectors) {
    const bool has_opposite = std::any_of(vectors.begin(), vectors.end(), [&](const Vec& w) {
      return (w + v).cwiseAbs().maxCoeff() <= 1e-12;
    });
    if (!has_opposite) throw InputError("direction set is not symmetric");
  }
  return DirectionSet(dim, std::move(vectors));
}

DirectionSet DirectionSet::refined() const {
  if (dim_ == 1) return *this;
  if (dim_ == 2) {
    // Angles 2 pi j / m reappear exactly as 2 pi (2j) / (2m).
    return uniform(2, static_cast<int>(2 * vectors_.size()));
  }
  // Add a rotated copy of the set; the result contains the original.
  std::vector<Vec> vs = vectors_;
  const double a = 0.5 * std::numbers::pi * (std::sqrt(5.0) - 1.0);
  Mat R = Mat::Identity(3, 3);
  R(0, 0) = std::cos(a);
  R(0, 1) = -std::sin(a);
  R(1, 0) = std::sin(a);
  R(1, 1) = std::cos(a);
  for (const auto& v : vectors_) vs.push_back(R * v);
  return DirectionSet(dim_, std::move(vs));
}

namespace {

double quotient_at(const ConvexFunction& u, const Vec& x0, double u0, const Vec& g, const Vec& h,
                   double eps) {
  const Vec step = eps * h;
  const Vec x = x0 + step;
  if (!u.contains(x)) {
    throw DomainError("probe x0 + eps h leaves the domain of '" + u.label() + "'");
  }
  return 2.0 / (eps * eps) * ((u(x) - u0) - g.dot(step));
}

}  // namespace

ExtendedReal peano_quotient(const ConvexFunction& u, const Vec& x0, const Vec& h, double eps) {
  if (!(eps > 0.0)) throw DomainError("peano quotient needs eps > 0");
  if (x0.size() != u.dim() || h.size() != u.dim()) throw InputError("dimension mismatch");
  const auto g = u.gradient(x0);
  if (!g) return ExtendedReal::infinity();
  return quotient_at(u, x0, u(x0), *g, h, eps);
}

KappaEstimate estimate_K(const ConvexFunction& u, const Vec& x0, const EpsilonSchedule& sched,
                         const DirectionSet& dirs, int tail_window) {
  const auto eps = sched.values();
  if (dirs.dim() != u.dim() || x0.size() != u.dim()) throw InputError("dimension mismatch");
  if (tail_window < 1 || tail_window > sched.count) {
    throw DomainError("tail window must lie in 1..count");
  }
  if (!u.contains(x0)) throw DomainError("estimate_K: point outside the domain");

  KappaEstimate out;
  out.tail_window = tail_window;
  const auto g = u.gradient(x0);
  if (!g) {
    out.value = ExtendedReal::infinity();
    out.gradient_defined = false;
    return out;
  }
  const double u0 = u(x0);
  const std::size_t nd = dirs.size();
  const std::size_t ne = eps.size();
  std::vector<double> q(ne * nd);
  parallel_for(q.size(), [&](std::size_t i) {
    q[i] = quotient_at(u, x0, u0, *g, dirs.vectors()[i % nd], eps[i / nd]);
  });

  std::size_t best_dir = 0;
  for (std::size_t j = 0; j < ne; ++j) {
    const auto first = q.begin() + static_cast<std::ptrdiff_t>(j * nd);
    const auto it = std::max_element(first, first + static_cast<std::ptrdiff_t>(nd));
    out.per_eps.emplace_back(eps[j], *it);
    if (j + 1 == ne) best_dir = static_cast<std::size_t>(it - first);
  }
  out.argmax_direction = dirs.vectors()[best_dir];

  const auto tail_begin = ne - static_cast<std::size_t>(tail_window);
  double tail_max = out.per_eps[tail_begin].second;
  bool monotone = true;
  for (std::size_t j = tail_begin + 1; j < ne; ++j) {
    tail_max = std::max(tail_max, out.per_eps[j].second);
    if (out.per_eps[j].second < out.per_eps[j - 1].second) monotone = false;
  }
  const double q_first = out.per_eps[tail_begin].second;
  const double q_last = out.per_eps.back().second;
  // Floor keeps a tail of rounding-level quotients from counting as growth.
  constexpr double kGrowthFloor = 1e-6;
  if (tail_window > 1 && monotone && q_last > 2.0 * std::max(q_first, kGrowthFloor)) {
    out.diverging = true;
    out.value = ExtendedReal::infinity();
  } else {
    out.value = tail_max;
  }
  return out;
}

KappaEstimate estimate_K(const ConvexFunction& u, const Vec& x0, const KappaOptions& opts) {
  const auto dirs = opts.directions > 0 ? DirectionSet::uniform(u.dim(), opts.directions)
                                        : DirectionSet::standard(u.dim());
  return estimate_K(u, x0, opts.schedule, dirs, opts.tail_window);
}

double analytic_lambda_max(const ConvexFunction& u, const Vec& x0) {
  const auto H = u.hessian(x0);
  if (!H) throw DomainError("Hessian of '" + u.label() + "' undefined at the requested point");
  if (H->rows() == 1) return (*H)(0, 0);
  Eigen::SelfAdjointEigenSolver<Mat> es(*H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double lipschitz_grad_bound(const ConvexFunction& u,
                            const std::vector<std::pair<Vec, Vec>>& pairs) {
  double best = 0.0;
  bool any = false;
  for (const auto& [x, y] : pairs) {
    const double dist = (x - y).norm();
    if (dist == 0.0) continue;
    const auto gx = u.gradient(x);
    const auto gy = u.gradient(y);
    if (!gx || !gy) continue;
    any = true;
    best = std::max(best, (*gx - *gy).norm() / dist);
  }
  if (!any) throw DomainError("lipschitz_grad_bound: every sampled pair was skipped");
  return best;
}

double lipschitz_grad_bound(const ConvexFunction& u, const Box& region, int samples,
                            std::uint64_t seed) {
  if (samples < 1) throw DomainError("lipschitz_grad_bound needs a positive sample count");
  const int n = u.dim();
  if (region.dim() != n) throw InputError("region dimension mismatch");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double width = region.max_width();

  auto draw_point = [&] {
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = region.lo(i) + unit(rng) * (region.hi(i) - region.lo(i));
    return x;
  };
  std::vector<std::pair<Vec, Vec>> pairs;
  pairs.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    const Vec x = draw_point();
    Vec y;
    if (s % 2 == 0) {
      y = draw_point();
    } else {
      Vec dir(n);
      for (int i = 0; i < n; ++i) dir(i) = normal(rng);
      if (dir.norm() == 0.0) continue;
      const double sep = width * std::pow(10.0, -6.0 + 5.0 * unit(rng));
      y = x + sep * dir / dir.norm();
    }
    if (region.contains(x) && region.contains(y) && u.contains(x) && u.contains(y)) {
      pairs.emplace_back(x, y);
    }
  }
  return lipschitz_grad_bound(u, pairs);
}

}  // namespace curvk
