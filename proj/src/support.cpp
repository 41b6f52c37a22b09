#include "curvk/support.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "curvk/catalog.hpp"
#include "curvk/parallel.hpp"

namespace curvk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int default_nodes(int dim, int d1, int d2, int d3) {
  return dim == 1 ? d1 : dim == 2 ? d2 : d3;
}

// Calls fn(flat) for every lattice node whose coordinates lie within the
// bounding box of B(c, r); nodes just outside may be visited too.
template <class Fn>
void for_nodes_near(const Lattice& lat, const Vec& c, double r, Fn&& fn) {
  const int n = lat.dim();
  std::vector<int> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) {
    const Axis& ax = lat.axis(d);
    const double step = ax.step();
    const auto sd = static_cast<std::size_t>(d);
    lo[sd] = std::max(0, static_cast<int>(std::floor((c(d) - r - ax.lo) / step)) - 1);
    hi[sd] = std::min(ax.count - 1, static_cast<int>(std::ceil((c(d) + r - ax.lo) / step)) + 1);
    if (lo[sd] > hi[sd]) return;
  }
  std::vector<int> idx = lo;
  while (true) {
    fn(lat.flat_index(idx));
    int d = n - 1;
    while (d >= 0) {
      const auto sd = static_cast<std::size_t>(d);
      if (++idx[sd] <= hi[sd]) break;
      idx[sd] = lo[sd];
      --d;
    }
    if (d < 0) return;
  }
}

struct DropCore {
  double height = -kInf;
  double tol = 0.0;
  std::vector<std::size_t> contacts;
};

template <class ValueAt>
DropCore drop_core(const Lattice& probe, ValueAt&& value_at, const Vec& c, double r) {
  std::vector<std::pair<std::size_t, double>> cand;
  const double r2 = r * r;
  for_nodes_near(probe, c, r, [&](std::size_t i) {
    const Vec x = probe.point(i);
    const double d2 = (x - c).squaredNorm();
    if (d2 > r2) return;
    const double ux = value_at(i, x);
    if (!std::isfinite(ux)) return;
    cand.emplace_back(i, ux + std::sqrt(r2 - d2));
  });
  DropCore out;
  for (const auto& [i, v] : cand) out.height = std::max(out.height, v);
  if (cand.empty()) return out;
  out.tol = 1e-8 * (r + std::abs(out.height));
  for (const auto& [i, v] : cand) {
    if (v >= out.height - out.tol) out.contacts.push_back(i);
  }
  std::sort(out.contacts.begin(), out.contacts.end());
  return out;
}

}  // namespace

double Sphere::distance_to_center(const Vec& x, double y) const {
  const double dy = y - t;
  return std::sqrt((x - center).squaredNorm() + dy * dy);
}

Lattice probe_lattice(const ConvexFunction& u, const Vec& c, double r, int per_axis) {
  if (c.size() != u.dim()) throw InputError("centre dimension mismatch");
  if (!(r > 0.0)) throw DomainError("sphere radius must be positive");
  const Box box = Box::around(c, r).intersect(u.domain());
  for (int d = 0; d < box.dim(); ++d) {
    if (!(box.hi(d) > box.lo(d))) throw DomainError("ball around the centre misses the domain");
  }
  const int m = per_axis > 0 ? per_axis : default_nodes(u.dim(), 513, 129, 33);
  return Lattice::over(box, m);
}

bool is_sphere_of_support(const ConvexFunction& u, const Sphere& S, const Vec& x0,
                          const Lattice& probe, std::optional<double> tol,
                          std::optional<double> locality) {
  if (S.dim() != u.dim() || x0.size() != u.dim() || probe.dim() != u.dim()) {
    throw InputError("dimension mismatch");
  }
  if (!(S.r > 0.0)) throw DomainError("sphere radius must be positive");
  const double slack = tol ? *tol : 1e-8 * (S.r + std::abs(S.t));
  const double reach = locality ? *locality : 2.0 * S.r;
  const double u0 = u(x0);
  if (!std::isfinite(u0)) throw DomainError("x0 lies outside the domain");
  if (std::abs(S.distance_to_center(x0, u0) - S.r) > slack) {
    throw DomainError("sphere does not pass through (x0, u(x0))");
  }
  // Centre above the graph; off the domain there is no graph to be above.
  if (u.contains(S.center) && !(S.t > u(S.center))) return false;

  std::atomic<bool> ok{true};
  std::vector<std::size_t> nodes;
  for_nodes_near(probe, S.center, S.r, [&](std::size_t i) { nodes.push_back(i); });
  parallel_for(nodes.size(), [&](std::size_t j) {
    if (!ok.load(std::memory_order_relaxed)) return;
    const Vec x = probe.point(nodes[j]);
    if ((x - S.center).norm() > S.r || (x - x0).norm() > reach) return;
    const double ux = u(x);
    if (!std::isfinite(ux)) return;
    if (S.distance_to_center(x, ux) < S.r - slack) ok.store(false, std::memory_order_relaxed);
  });
  return ok.load();
}

ContactResult drop_sphere(const ConvexFunction& u, const Vec& c, double r, const Lattice& probe) {
  if (c.size() != u.dim() || probe.dim() != u.dim()) throw InputError("dimension mismatch");
  if (!(r > 0.0)) throw DomainError("sphere radius must be positive");
  const DropCore core = drop_core(probe, [&](std::size_t, const Vec& x) { return u(x); }, c, r);
  if (core.contacts.empty()) throw DomainError("no feasible probe point inside the ball");
  ContactResult out;
  out.height = core.height;
  out.tolerance = core.tol;
  out.contact_indices = core.contacts;
  for (auto i : core.contacts) out.contacts.push_back(probe.point(i));
  out.multiple = out.contacts.size() > 1;
  out.sphere = Sphere{c, core.height, r};
  return out;
}

ContactResult drop_sphere(const ConvexFunction& u, const Vec& c, double r) {
  return drop_sphere(u, c, r, probe_lattice(u, c, r));
}

double c11_bound(double grad_norm, double r) {
  if (!(r > 0.0)) throw DomainError("c11_bound needs r > 0");
  if (!(grad_norm >= 0.0)) throw DomainError("c11_bound needs a non-negative gradient norm");
  return std::pow(1.0 + grad_norm * grad_norm, 1.5) / r;
}

HemisphereEigen hemisphere_hessian_eigen(double r, double s, int dim) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  if (!(s >= 0.0 && s < r)) throw DomainError("need 0 <= s < r");
  if (dim < 2) throw DomainError("hemisphere_hessian_eigen needs dim >= 2");
  const auto d = make_hemisphere(zeros(dim), 0.0, r);
  Vec x = zeros(dim);
  x(0) = s;
  HemisphereEigen out;
  const double q = r * r - s * s;
  out.lambda_max = r * r / std::pow(q, 1.5);
  out.lambda_other = 1.0 / std::sqrt(q);
  const Mat H = *d.hessian(x);
  const Vec g = *d.gradient(x);
  const double residual = (H * g - out.lambda_max * g).norm();
  out.eigvec_check = residual <= 1e-12 * out.lambda_max * std::max(1.0, g.norm());
  return out;
}

OsculatingRadius osculating_radius(const ConvexFunction& u, const Vec& x0) {
  const auto H = u.hessian(x0);
  if (!H) throw DomainError("Hessian undefined at the requested point");
  const auto g = u.gradient(x0);
  if (!g) throw DomainError("gradient undefined at the requested point");
  const int n = u.dim();
  Eigen::SelfAdjointEigenSolver<Mat> es(*H, Eigen::EigenvaluesOnly);
  const double lmax = es.eigenvalues().maxCoeff();
  const Mat G = Mat::Identity(n, n) + (*g) * g->transpose();
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(*H, G, Eigen::EigenvaluesOnly);
  const double kappa = ges.eigenvalues().maxCoeff() / std::sqrt(1.0 + g->squaredNorm());
  OsculatingRadius out;
  out.radius = lmax > 0.0 ? ExtendedReal(1.0 / lmax) : ExtendedReal::infinity();
  out.curvature_radius = kappa > 0.0 ? ExtendedReal(1.0 / kappa) : ExtendedReal::infinity();
  return out;
}

Sphere tangent_sphere(const ConvexFunction& u, const Vec& x0, double r) {
  if (!(r > 0.0)) throw DomainError("sphere radius must be positive");
  const auto g = u.gradient(x0);
  if (!g) throw DomainError("gradient undefined: no tangent sphere");
  const double w = std::sqrt(1.0 + g->squaredNorm());
  return Sphere{x0 - (r / w) * (*g), u(x0) + r / w, r};
}

std::vector<bool> support_radius_partition(const ConvexFunction& u, const Vec& x0,
                                           const std::vector<double>& radii,
                                           std::optional<double> locality) {
  std::vector<bool> out;
  for (double r : radii) {
    const Sphere S = tangent_sphere(u, x0, r);
    const double reach = locality ? *locality : 0.02 * r;
    const Lattice probe = Lattice::over(Box::around(x0, reach).intersect(u.domain()),
                                        default_nodes(u.dim(), 201, 41, 15));
    out.push_back(is_sphere_of_support(u, S, x0, probe, std::nullopt, reach));
  }
  return out;
}

std::vector<XrContact> compute_Xr(const ConvexFunction& u, double r, const Lattice& centers,
                                  const Lattice& probe) {
  if (centers.dim() != u.dim() || probe.dim() != u.dim()) throw InputError("dimension mismatch");
  if (!(r > 0.0)) throw DomainError("sphere radius must be positive");
  std::vector<double> uvals(probe.size());
  parallel_for(probe.size(), [&](std::size_t i) { uvals[i] = u(probe.point(i)); });

  std::vector<DropCore> drops(centers.size());
  parallel_for(centers.size(), [&](std::size_t j) {
    drops[j] = drop_core(probe, [&](std::size_t i, const Vec&) { return uvals[i]; },
                         centers.point(j), r);
  });

  std::vector<XrContact> out;
  std::vector<char> seen(probe.size(), 0);
  for (std::size_t j = 0; j < centers.size(); ++j) {
    for (auto i : drops[j].contacts) {
      if (seen[i]) continue;
      seen[i] = 1;
      out.push_back({probe.point(i), centers.point(j), drops[j].height});
    }
  }
  return out;
}

bool in_Xr(const ConvexFunction& u, const Vec& x, double r, const Lattice& probe) {
  if (!u.contains(x) || !u.gradient(x)) return false;
  const Sphere S = tangent_sphere(u, x, r);
  if (!is_sphere_of_support(u, S, x, probe)) return false;
  const Box near = Box::around(x, 0.05 * r).intersect(u.domain());
  for (int d = 0; d < near.dim(); ++d) {
    if (!(near.hi(d) > near.lo(d))) return true;
  }
  const Lattice fine = Lattice::over(near, default_nodes(u.dim(), 101, 21, 9));
  return is_sphere_of_support(u, S, x, fine);
}

}  // namespace curvk
