#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <random>

#include "curvk/catalog.hpp"
#include "curvk/dual.hpp"
#include "curvk/kappa.hpp"
#include "curvk/legendre.hpp"
#include "curvk/runner.hpp"
#include "curvk/support.hpp"

namespace curvk {

namespace {

std::string g6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

CheckResult make(std::string name, bool pass, std::string detail) {
  return CheckResult{std::move(name), pass, std::move(detail)};
}

// Runs a check, turning any exception into a failure line.
template <class Fn>
CheckResult guarded(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return make(name, false, std::string("error: ") + e.what());
  }
}

Vec draw(std::mt19937_64& rng, const Box& box) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vec x(box.dim());
  for (int i = 0; i < box.dim(); ++i) x(i) = box.lo(i) + unit(rng) * (box.hi(i) - box.lo(i));
  return x;
}

// Random convex function sampled on `points` nodes of [-2, 2].
GridFunction random_convex_grid(std::mt19937_64& rng, int points) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double q = 0.5 * (u(rng) + 1.0);
  const double b = u(rng);
  double kinks[3][2];
  for (auto& k : kinks) {
    k[0] = 2.0 * u(rng);
    k[1] = 0.5 * (u(rng) + 1.0);
  }
  const double hinge = u(rng);
  const Lattice grid = Lattice::over(Box::cube(1, 2.0), points);
  GridFunction g{grid, std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.axis(0).at(static_cast<int>(i));
    double v = q * x * x + b * x;
    for (const auto& k : kinks) v += k[1] * std::abs(x - k[0]);
    v += std::pow(std::max(0.0, x - hinge), 2);
    g.values[i] = v;
  }
  return g;
}

// Largest gap, over interior nodes, between f and the best supporting line
// whose slope is one of the two lattice slopes bracketing the node's
// subdifferential. The biconjugate is at least that line at the node, so this
// bounds the recovery error when the subdifferential misses the lattice.
double lattice_slope_deficit(const GridFunction& g, const Lattice& slopes) {
  const Axis& xs = g.grid.axis(0);
  const Axis& ss = slopes.axis(0);
  const int n = xs.count;
  double worst = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    const double a = (g.values[i] - g.values[i - 1]) / (xs.at(i) - xs.at(i - 1));
    const double b = (g.values[i + 1] - g.values[i]) / (xs.at(i + 1) - xs.at(i));
    const int lo = std::clamp(static_cast<int>(std::floor((a - ss.lo) / ss.step())), 0, ss.count - 1);
    const int hi = std::clamp(static_cast<int>(std::ceil((b - ss.lo) / ss.step())), 0, ss.count - 1);
    if (hi > lo + 1) continue;  // a lattice slope lies in [a, b]: exact
    double best = std::numeric_limits<double>::infinity();
    for (const int k : {lo, hi}) {
      const double s = ss.at(k);
      double deficit = 0.0;
      for (int j = 0; j < n; ++j) deficit = std::max(deficit, g.values[i] - g.values[j] - s * (xs.at(i) - xs.at(j)));
      best = std::min(best, deficit);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

std::vector<CheckResult> paper_checks() {
  std::vector<CheckResult> out;
  const ConvexFunction path = make_pathological();

  out.push_back(guarded("catalog: |x|^{4/3} at 1 equals 1", [&] {
    const double v = make_power(1.0, 4.0 / 3.0)(1.0);
    return make("catalog: |x|^{4/3} at 1 equals 1", std::abs(v - 1.0) <= 1e-15, "value " + g6(v));
  }));

  out.push_back(guarded("catalog: pathological quotient on I_4 is 8", [&] {
    const auto [a, b] = pathological_interval(4);
    const double q = ((*path.gradient(b))(0) - (*path.gradient(a))(0)) / (b - a);
    return make("catalog: pathological quotient on I_4 is 8", std::abs(q - 8.0) <= 1e-10 * 8.0, "quotient " + g6(q));
  }));

  out.push_back(guarded("catalog: pathological f'(x_n) <= 1/(2(n+3)^2)", [&] {
    bool ok = true;
    for (int n = 0; n < 16; ++n) {
      const double xn = 1.0 / ((n + 4.0) * (n + 4.0));
      ok = ok && (*path.gradient(xn))(0) <= 1.0 / (2.0 * (n + 3.0) * (n + 3.0));
    }
    return make("catalog: pathological f'(x_n) <= 1/(2(n+3)^2)", ok, "n = 0..15");
  }));

  out.push_back(guarded("kappa: |x| quotient at 0 is +inf", [&] {
    const auto absx = make_max_affine({{vec1(1.0), 0.0}, {vec1(-1.0), 0.0}});
    const auto q = peano_quotient(absx, vec1(0.0), vec1(1.0), 1e-3);
    return make("kappa: |x| quotient at 0 is +inf", q.is_infinite(), "quotient " + q.to_string());
  }));

  out.push_back(guarded("kappa: K(|x|^{4/3}, 0) = +inf", [&] {
    const auto est = estimate_K(make_power(1.0, 4.0 / 3.0), vec1(0.0));
    return make("kappa: K(|x|^{4/3}, 0) = +inf", est.value.is_infinite() && est.diverging,
                "diverging " + std::string(est.diverging ? "yes" : "no"));
  }));

  out.push_back(guarded("kappa: pathological gradient quotient on I_n is n+4", [&] {
    bool ok = true;
    for (int n = 0; n < 16; ++n) {
      const auto [a, b] = pathological_interval(n);
      const double L = lipschitz_grad_bound(path, {{vec1(a), vec1(b)}});
      ok = ok && std::abs(L - (n + 4.0)) <= 1e-10 * (n + 4.0);
    }
    return make("kappa: pathological gradient quotient on I_n is n+4", ok, "n = 0..15");
  }));

  out.push_back(guarded("legendre: |x|^3/3 dual is |y|^{3/2}/(3/2)", [&] {
    const auto f = make_power(1.0 / 3.0, 3.0);
    const GridFunction g = sample_grid(f, Lattice::over(f.domain(), 601));
    const GridFunction c = conjugate_grid_1d(g);
    const double step = g.grid.axis(0).step();
    double worst = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double y = c.grid.axis(0).at(static_cast<int>(i));
      if (std::abs(y) > 3.9) continue;
      worst = std::max(worst, std::abs(c.values[i] - std::pow(std::abs(y), 1.5) / 1.5));
    }
    return make("legendre: |x|^3/3 dual is |y|^{3/2}/(3/2)", worst <= step, "max error " + g6(worst));
  }));

  out.push_back(guarded("legendre: semicircle dual is sqrt(1+y^2)", [&] {
    const auto cp = closed_form_conjugate("semicircle");
    const auto f = parse_function_label("semicircle");
    const GridFunction g = sample_grid(f, Lattice::over(f.domain(), 601));
    const GridFunction c = conjugate_grid_1d(g);
    double worst = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double y = c.grid.axis(0).at(static_cast<int>(i));
      if (std::abs(y) > 3.0) continue;
      worst = std::max(worst, std::abs(c.values[i] - std::sqrt(1.0 + y * y)));
    }
    const double at0 = cp.dual(vec1(0.0));
    return make("legendre: semicircle dual is sqrt(1+y^2)", at0 == 1.0 && worst <= 1e-3,
                "f*(0) " + g6(at0) + ", grid error " + g6(worst));
  }));

  out.push_back(guarded("legendre: hemisphere dual curvature at 0 is r", [&] {
    const auto d = make_hemisphere(vec1(0.0), 1.0, 1.0);
    const auto cp = closed_form_conjugate(d);
    const double closed = (*cp.dual_hessian(vec1(0.0)))(0, 0);
    double slack = 0.0;
    const ConvexFunction F = reduced_conjugate(d, vec1(0.0), vec1(1.0), slack, 0.5);
    const double s = 0.01;
    const double second = (F(vec1(s)) - 2.0 * F(vec1(0.0)) + F(vec1(-s))) / (s * s);
    return make("legendre: hemisphere dual curvature at 0 is r",
                std::abs(closed - 1.0) <= 1e-15 && std::abs(second - 1.0) <= 0.02,
                "closed form " + g6(closed) + ", grid " + g6(second));
  }));

  out.push_back(guarded("legendre: |x|^{4/3}/(4/3) dual is |y|^4/4", [&] {
    const auto cp = closed_form_conjugate(make_power(0.75, 4.0 / 3.0));
    double worst = 0.0;
    for (double y : {-1.5, -0.3, 0.0, 0.7, 1.2}) {
      worst = std::max(worst, std::abs(cp.dual(vec1(y)) - std::pow(y, 4) / 4.0));
    }
    return make("legendre: |x|^{4/3}/(4/3) dual is |y|^4/4", worst <= 1e-12, "max error " + g6(worst));
  }));

  out.push_back(guarded("support: unit sphere at (0,1) supports the pathological graph", [&] {
    const Sphere S{vec1(0.0), 1.0, 1.0};
    const bool ok = is_sphere_of_support(path, S, vec1(0.0), probe_lattice(path, S.center, S.r, 4097));
    return make("support: unit sphere at (0,1) supports the pathological graph", ok, "");
  }));

  const auto p43 = make_power(1.0, 4.0 / 3.0);
  const auto p3 = make_power(1.0, 3.0);
  out.push_back(guarded("dual: |x|^{4/3} quadratically convex at 0", [&] {
    QuadOptions o;
    o.eps = 0.1;
    const auto c = check_quadratic_convexity(p43, vec1(0.0), 0.5, o);
    return make("dual: |x|^{4/3} quadratically convex at 0", c.holds, "m 0.5, eps " + g6(c.eps_used));
  }));
  out.push_back(guarded("dual: |x|^{4/3} not sub-quadratically convex at 0", [&] {
    bool any = false;
    for (double m : classification_moduli()) any = any || check_subquadratic_convexity(p43, vec1(0.0), m).holds;
    return make("dual: |x|^{4/3} not sub-quadratically convex at 0", !any, "moduli 0.01..100");
  }));
  out.push_back(guarded("dual: |x|^3 sub-quadratically convex at 0", [&] {
    QuadOptions o;
    o.eps = 0.3;
    const auto c = check_subquadratic_convexity(p3, vec1(0.0), 1.0, o);
    return make("dual: |x|^3 sub-quadratically convex at 0", c.holds, "m 1, eps " + g6(c.eps_used));
  }));
  out.push_back(guarded("dual: |x|^3 not quadratically convex at 0", [&] {
    bool any = false;
    for (double m : classification_moduli()) any = any || check_quadratic_convexity(p3, vec1(0.0), m).holds;
    return make("dual: |x|^3 not quadratically convex at 0", !any, "moduli 0.01..100");
  }));

  out.push_back(guarded("dual: pathological C^{1,1} bound through the conjugate", [&] {
    const auto rep = prop39_bound(path, vec1(0.0), Sphere{vec1(0.0), 1.0, 1.0});
    return make("dual: pathological C^{1,1} bound through the conjugate", rep.verdict == Verdict::Pass,
                "K " + rep.k_estimate.to_string() + " <= " + g6(rep.bound));
  }));

  out.push_back(guarded("cli: pathological drop at 0 touches at 0 with height 1", [&] {
    const auto cr = drop_sphere(path, vec1(0.0), 1.0);
    const bool ok = cr.contacts.size() == 1 && cr.contacts[0](0) == 0.0 && std::abs(cr.height - 1.0) <= 1e-12;
    return make("cli: pathological drop at 0 touches at 0 with height 1", ok,
                "height " + g6(cr.height) + ", contacts " + std::to_string(cr.contacts.size()));
  }));
  return out;
}

std::vector<CheckResult> invariant_checks(std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  const auto catalog = property_catalog();

  out.push_back(guarded("catalog: midpoint convexity", [&] {
    int bad = 0;
    for (const auto& e : catalog) {
      const Box& dom = e.f.domain();
      for (int i = 0; i < 10000; ++i) {
        const Vec x = draw(rng, dom), y = draw(rng, dom);
        const double fx = e.f(x), fy = e.f(y);
        if (!std::isfinite(fx) || !std::isfinite(fy)) continue;
        const double fm = e.f(Vec(0.5 * (x + y)));
        if (fm > 0.5 * (fx + fy) + 1e-12 * (1.0 + std::abs(fx) + std::abs(fy))) ++bad;
      }
    }
    return make("catalog: midpoint convexity", bad == 0, std::to_string(bad) + " violations");
  }));

  out.push_back(guarded("catalog: gradients match central differences", [&] {
    double worst = 0.0;
    for (const auto& e : catalog) {
      const double h = 1e-5 * e.f.domain().max_width();
      for (int i = 0; i < 100; ++i) {
        const Vec x = draw(rng, e.region);
        const auto g = e.f.gradient(x);
        if (!g) continue;
        for (int d = 0; d < e.f.dim(); ++d) {
          Vec step = Vec::Zero(e.f.dim());
          step(d) = h;
          const double fd = (e.f(Vec(x + step)) - e.f(Vec(x - step))) / (2.0 * h);
          worst = std::max(worst, std::abs(fd - (*g)(d)) / std::max(1.0, std::abs((*g)(d))));
        }
      }
    }
    return make("catalog: gradients match central differences", worst <= 1e-6, "max relative gap " + g6(worst));
  }));

  out.push_back(guarded("kappa: matches lambda_max of the Hessian", [&] {
    double worst = 0.0;
    for (const auto& e : catalog) {
      for (int i = 0; i < 5; ++i) {
        const Vec x = draw(rng, e.region);
        const double lam = analytic_lambda_max(e.f, x);
        const double est = estimate_K(e.f, x).value.as_double();
        worst = std::max(worst, std::abs(est - lam) / std::max(lam, 1e-4));
      }
    }
    return make("kappa: matches lambda_max of the Hessian", worst <= 0.01, "max relative gap " + g6(worst));
  }));

  out.push_back(guarded("kappa: invariant under normalisation", [&] {
    bool ok = true;
    for (const auto& e : catalog) {
      const Vec x = draw(rng, e.region);
      const auto a = estimate_K(e.f, x);
      const auto b = estimate_K(shift_normalize(e.f, x), zeros(e.f.dim()));
      ok = ok && a.value == b.value && a.per_eps == b.per_eps;
    }
    return make("kappa: invariant under normalisation", ok, "bitwise per-eps equality");
  }));

  out.push_back(guarded("kappa: refining directions never lowers the maximum", [&] {
    bool ok = true;
    for (const auto& e : catalog) {
      if (e.f.dim() < 2) continue;
      const Vec x = draw(rng, e.region);
      const auto coarse = DirectionSet::uniform(e.f.dim(), 32);
      const EpsilonSchedule s;
      const auto a = estimate_K(e.f, x, s, coarse);
      const auto b = estimate_K(e.f, x, s, coarse.refined());
      for (std::size_t j = 0; j < a.per_eps.size(); ++j) ok = ok && b.per_eps[j].second >= a.per_eps[j].second;
    }
    return make("kappa: refining directions never lowers the maximum", ok, "");
  }));

  out.push_back(guarded("kappa: K below the local gradient Lipschitz constant", [&] {
    bool ok = true;
    int tested = 0;
    for (const auto& e : catalog) {
      if (!e.c11) continue;
      for (int i = 0; i < 50; ++i) {
        const Vec x = draw(rng, e.region);
        const double K = estimate_K(e.f, x).value.as_double();
        const Box local = Box::around(x, 0.05).intersect(e.f.domain());
        const double L = lipschitz_grad_bound(e.f, local, 400, rng());
        ok = ok && K <= L * 1.01 + 1e-9;
        ++tested;
      }
    }
    return make("kappa: K below the local gradient Lipschitz constant", ok, std::to_string(tested) + " points");
  }));

  out.push_back(guarded("legendre: hull conjugate equals brute force", [&] {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const GridFunction g = random_convex_grid(rng, 601);
      const Lattice s = slope_lattice(g);
      const auto a = conjugate_grid_1d(g, s), b = conjugate_bruteforce(g, s);
      for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a.values[j] - b.values[j]));
    }
    return make("legendre: hull conjugate equals brute force", worst <= 1e-9, "max gap " + g6(worst));
  }));

  out.push_back(guarded("legendre: Fenchel-Young and order reversal", [&] {
    bool ok = true;
    for (int i = 0; i < 10; ++i) {
      GridFunction f = random_convex_grid(rng, 201);
      GridFunction g = f;
      for (auto& v : g.values) v += 0.1;  // g >= f
      const Lattice s = slope_lattice(f);
      const auto fc = conjugate_bruteforce(f, s), gc = conjugate_bruteforce(g, s);
      for (std::size_t j = 0; j < s.size(); ++j) {
        ok = ok && fc.values[j] >= gc.values[j];
        const double y = s.axis(0).at(static_cast<int>(j));
        for (std::size_t k = 0; k < f.size(); ++k) {
          ok = ok && f.values[k] + fc.values[j] >= y * f.grid.axis(0).at(static_cast<int>(k)) - 1e-9;
        }
      }
    }
    return make("legendre: Fenchel-Young and order reversal", ok, "");
  }));

  out.push_back(guarded("legendre: biconjugate recovers convex grids", [&] {
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < 10; ++i) {
      const GridFunction g = random_convex_grid(rng, 601);
      const double dev = biconjugate_check(g);
      ok = ok && dev <= lattice_slope_deficit(g, slope_lattice(g)) + 1e-9;
      worst = std::max(worst, dev);
    }
    return make("legendre: biconjugate recovers convex grids", ok, "max deviation " + g6(worst));
  }));

  out.push_back(guarded("support: gradient is the top Hessian eigenvector of a hemisphere", [&] {
    bool ok = true;
    for (int i = 1; i <= 20; ++i) {
      const double r = 0.25 * i;
      for (int j = 0; j < 20; ++j) ok = ok && hemisphere_hessian_eigen(r, r * j / 20.0).eigvec_check;
    }
    return make("support: gradient is the top Hessian eigenvector of a hemisphere", ok, "20 x 20 grid");
  }));

  out.push_back(guarded("support: C^{1,1} bound equals the hemisphere eigenvalue", [&] {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      const double r = 0.1 + 3.0 * u(rng), s = 0.99 * r * u(rng);
      const double grad = s / std::sqrt(r * r - s * s);
      const double lam = r * r / std::pow(r * r - s * s, 1.5);
      worst = std::max(worst, std::abs(c11_bound(grad, r) - lam) / lam);
    }
    return make("support: C^{1,1} bound equals the hemisphere eigenvalue", worst <= 1e-12, "max relative gap " + g6(worst));
  }));

  out.push_back(guarded("support: dropped spheres support the graph at every contact", [&] {
    bool ok = true;
    for (const auto& e : catalog) {
      if (e.f.dim() != 1) continue;
      const Vec c = draw(rng, e.region);
      const Lattice probe = probe_lattice(e.f, c, 0.3);
      const auto cr = drop_sphere(e.f, c, 0.3, probe);
      for (const auto& x : cr.contacts) ok = ok && is_sphere_of_support(e.f, cr.sphere, x, probe, cr.tolerance);
      for (std::size_t i = 0; i < probe.size(); ++i) {
        const Vec x = probe.point(i);
        const double d2 = (x - c).squaredNorm();
        if (d2 > 0.09 || !std::isfinite(e.f(x))) continue;
        ok = ok && e.f(x) + std::sqrt(0.09 - d2) <= cr.height;
      }
    }
    return make("support: dropped spheres support the graph at every contact", ok, "");
  }));

  out.push_back(guarded("support: densities lie in [0,1] and respect inclusion", [&] {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Lattice lat = Lattice::over(Box::cube(1, 1.0), 4001);
    std::vector<char> small(lat.size()), big(lat.size());
    for (std::size_t i = 0; i < lat.size(); ++i) {
      small[i] = u(rng) < 0.3;
      big[i] = small[i] || u(rng) < 0.5;
    }
    const auto eps = density_radii(0.5, 10);
    const auto a = lower_density(lat, small, vec1(0.0), eps);
    const auto b = lower_density(lat, big, vec1(0.0), eps);
    bool ok = true;
    for (std::size_t j = 0; j < eps.size(); ++j) {
      ok = ok && a.samples[j].second >= 0.0 && b.samples[j].second <= 1.0 && a.samples[j].second <= b.samples[j].second;
    }
    return make("support: densities lie in [0,1] and respect inclusion", ok, "");
  }));

  out.push_back(guarded("dual: classification matrix of A|x|^k at 0", [&] {
    bool ok = true;
    std::string detail;
    for (double k : {1.0, 1.5, 2.0, 3.0}) {
      const auto c = classify_convexity(make_power(1.0, k), vec1(0.0));
      const bool want_q = k <= 2.0, want_s = k >= 2.0;
      ok = ok && c.quadratic == want_q && c.subquadratic == want_s;
      detail += "k=" + g6(k) + ":" + (c.quadratic ? "Q" : "-") + (c.subquadratic ? "S" : "-") + " ";
    }
    detail.pop_back();
    return make("dual: classification matrix of A|x|^k at 0", ok, detail);
  }));

  out.push_back(guarded("dual: modulus monotonicity", [&] {
    bool ok = true;
    const auto f = make_power(1.0, 1.5);
    const auto g = make_power(1.0, 3.0);
    for (double m : {0.5, 2.0, 8.0}) {
      if (check_quadratic_convexity(f, vec1(0.0), m).holds) ok = ok && check_quadratic_convexity(f, vec1(0.0), 0.5 * m).holds;
      if (check_subquadratic_convexity(g, vec1(0.0), m).holds) ok = ok && check_subquadratic_convexity(g, vec1(0.0), 2.0 * m).holds;
    }
    return make("dual: modulus monotonicity", ok, "");
  }));

  out.push_back(guarded("dual: quadratic convexity dualises to sub-quadratic", [&] {
    bool ok = true;
    int tested = 0;
    for (const auto& e : catalog) {
      if (e.f.dim() != 1 || !e.f.strongly_convex()) continue;
      const Vec x = draw(rng, e.region);
      const double m = 0.5 * analytic_lambda_max(e.f, x);
      QuadOptions o;
      o.eps = 0.05;
      if (!check_quadratic_convexity(e.f, x, m, o).holds) continue;
      double slack = 0.0;
      const ConvexFunction F = reduced_conjugate(e.f, x, vec1(1.0), slack);
      QuadOptions od;
      od.subgradient = vec1(0.0);
      od.tol = 1e-9 + slack;
      od.eps = 0.01;
      ok = ok && check_subquadratic_convexity(F, *e.f.gradient(x), 1.0 / m, od).holds;
      ++tested;
    }
    return make("dual: quadratic convexity dualises to sub-quadratic", ok && tested > 0, std::to_string(tested) + " cases");
  }));
  return out;
}

}  // namespace

std::vector<CatalogEntry> property_catalog() {
  const Box one = Box::cube(1, 1.5);
  const Box two = Box::cube(2, 1.5);
  std::vector<CatalogEntry> c;
  c.push_back({parse_function_label("quad:3"), one, true});
  c.push_back({parse_function_label("quad:1,4"), two, true});
  c.push_back({parse_function_label("quad:2,1;1,3:1,-1:0.5"), two, true});
  c.push_back({parse_function_label("power:1:2"), one, true});
  c.push_back({parse_function_label("power:1:3"), one, true});
  c.push_back({parse_function_label("power:1:4:2"), two, true});
  c.push_back({parse_function_label("power:1:4/3"), Box{vec1(0.25), vec1(1.5)}, false});
  c.push_back({parse_function_label("hemisphere:0:1:1"), Box::cube(1, 0.7), false});
  c.push_back({parse_function_label("hemisphere:0,0:1:1"), Box::cube(2, 0.6), false});
  c.push_back({parse_function_label("hemisphere:0.5:2:1.5"), Box{vec1(-0.3), vec1(1.3)}, false});
  c.push_back({parse_function_label("pathological"), Box{vec1(0.07), vec1(0.9)}, false});
  c.push_back({parse_function_label("maxquad:1:0:0|0:1:-1/4"), Box{vec1(-1.0), vec1(0.2)}, false});
  c.push_back({parse_function_label("maxaffine:1:0|-1:0"), Box{vec1(0.2), vec1(1.5)}, false});
  return c;
}

std::string format_check(const CheckResult& c) {
  std::string line = (c.pass ? "PASS  " : "FAIL  ") + c.name;
  if (!c.detail.empty()) line += "  (" + c.detail + ")";
  return line;
}

std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "paper-checks") return paper_checks();
  if (name == "invariants") return invariant_checks(seed);
  throw InputError("unknown suite '" + name + "'");
}

}  // namespace curvk
