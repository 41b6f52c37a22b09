// Acceptance criteria: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "curvk/catalog.hpp"
#include "curvk/dual.hpp"
#include "curvk/kappa.hpp"
#include "curvk/legendre.hpp"
#include "curvk/parallel.hpp"
#include "curvk/runner.hpp"
#include "curvk/support.hpp"

using namespace curvk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Vec draw(std::mt19937_64& rng, const Box& box) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec x(box.dim());
  for (int d = 0; d < box.dim(); ++d) x(d) = box.lo(d) + u(rng) * (box.hi(d) - box.lo(d));
  return x;
}

// Rounding floor of the difference quotient at the smallest default eps.
double quotient_floor(double fx) {
  const double e = EpsilonSchedule{}.values().back();
  return 2.0 / (e * e) * 8.0 * 2.2e-16 * (1.0 + std::abs(fx));
}

Outcome hemisphere_lambda() {
  const auto d = make_hemisphere(vec1(0.0), 1.0, 1.0);
  bool ok = true;
  double worst = 0.0, slowest = 0.0;
  for (double s : {0.0, 0.3, 0.6, 0.8}) {
    const auto t0 = Clock::now();
    const double K = estimate_K(d, vec1(s)).value.as_double();
    slowest = std::max(slowest, seconds_since(t0));
    const double oracle = 1.0 / std::pow(1.0 - s * s, 1.5);
    const double rel = std::abs(K - oracle) / oracle;
    worst = std::max(worst, rel);
    ok = ok && rel <= 0.01;
  }
  ok = ok && slowest < 1.0;
  return {ok, "max relative error " + g6(worst) + ", slowest point " + g6(slowest) + " s"};
}

Outcome contact_bound() {
  std::mt19937_64 rng(2);
  const auto catalog = property_catalog();
  int pairs = 0, contacts = 0;
  bool ok = true;
  double worst = 0.0;
  const double radii[] = {0.1, 0.2};
  for (int attempt = 0; pairs < 20 && attempt < 400; ++attempt) {
    const auto& e = catalog[static_cast<std::size_t>(attempt) % catalog.size()];
    const double r = radii[(attempt / catalog.size()) % 2];
    const auto cr = drop_sphere(e.f, draw(rng, e.region), r);
    bool counted = false;
    for (const auto& x : cr.contacts) {
      const auto g = e.f.gradient(x);
      if (!g) continue;
      double K = 0.0;
      try {
        K = estimate_K(e.f, x).value.as_double();
      } catch (const DomainError&) {
        continue;  // quotient probes leave the domain at boundary contacts
      }
      const double bound = c11_bound(g->norm(), r);
      ok = ok && K <= 1.01 * bound + quotient_floor(e.f(x));
      worst = std::max(worst, K / bound);
      ++contacts;
      counted = true;
    }
    if (counted) ++pairs;
  }
  ok = ok && pairs == 20;
  return {ok, std::to_string(pairs) + " pairs, " + std::to_string(contacts) + " contacts, max K/bound " + g6(worst)};
}

GridFunction random_convex_grid(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double q = 0.5 * (u(rng) + 1.0), b = u(rng), k1 = u(rng), w1 = 0.5 * (u(rng) + 1.0);
  const double k2 = u(rng), c = 0.3 * u(rng);
  const Lattice grid = Lattice::over(Box::cube(1, 2.0), 601);
  GridFunction g{grid, std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.point(i)(0);
    g.values[i] = q * x * x + b * x + w1 * std::abs(x - k1) + std::pow(std::max(0.0, x - k2), 3) + std::exp(c * x);
  }
  return g;
}

Outcome conjugate_engine() {
  std::mt19937_64 rng(3);
  bool ok = true;
  double worst_gap = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto g = random_convex_grid(rng);
    const Lattice s = slope_lattice(g);
    const auto a = conjugate_grid_1d(g, s), b = conjugate_bruteforce(g, s);
    const double tol = 1e-9 + interpolation_error_bound(g);
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double gap = std::abs(a.values[j] - b.values[j]);
      worst_gap = std::max(worst_gap, gap);
      ok = ok && gap <= tol;
    }
  }
  // |x|^3/3 <-> |y|^{3/2}/(3/2) on the slopes the grid attains.
  const auto f = make_power(1.0 / 3.0, 3.0);
  const auto g = sample_grid(f, Lattice::over(f.domain(), 601));
  const auto c = conjugate_grid_1d(g);
  const double step = g.grid.axis(0).step();
  double pair_err = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double y = c.grid.axis(0).at(static_cast<int>(j));
    if (std::abs(y) > 4.0) continue;  // |f'| <= 4 on [-2, 2]
    pair_err = std::max(pair_err, std::abs(c.values[j] - std::pow(std::abs(y), 1.5) / 1.5));
  }
  ok = ok && pair_err <= step;
  // Hemisphere dual curvature at 0 from a grid conjugate of the reduction.
  const auto d = make_hemisphere(vec1(0.0), 1.0, 1.0);
  double slack = 0.0;
  const ConvexFunction F = reduced_conjugate(d, vec1(0.0), vec1(1.0), slack, 0.5);
  const double h = 0.01;
  const double second = (F(vec1(h)) - 2.0 * F(vec1(0.0)) + F(vec1(-h))) / (h * h);
  ok = ok && std::abs(second - 1.0) <= 0.02;
  return {ok, "hull vs brute force " + g6(worst_gap) + ", power pair error " + g6(pair_err) + " (step " + g6(step) +
                  "), hemisphere d*''(0) " + g6(second)};
}

Outcome classification() {
  struct Row {
    double k;
    bool quad, sub;
  };
  bool ok = true;
  std::string detail;
  for (const Row row : {Row{1.0, true, false}, Row{1.5, true, false}, Row{2.0, true, true}, Row{3.0, false, true}}) {
    const auto c = classify_convexity(make_power(1.0, row.k), vec1(0.0));
    ok = ok && c.quadratic == row.quad && c.subquadratic == row.sub;
    detail += "k=" + g6(row.k) + ":" + (c.quadratic ? "Q" : "-") + (c.subquadratic ? "S" : "-") + " ";
  }
  detail.pop_back();
  return {ok, detail};
}

Outcome duality_theorems() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<CatalogEntry> smooth;
  for (const auto& e : property_catalog()) {
    if (e.f.strongly_convex()) smooth.push_back(e);
  }
  int fwd = 0, conv = 0;
  for (int t = 0; t < 10; ++t) {
    const auto& e = smooth[static_cast<std::size_t>(u(rng) * static_cast<double>(smooth.size()))];
    const Vec x = draw(rng, e.region);
    const double k = analytic_lambda_max(e.f, x) * (1.2 + u(rng));
    if (theorem19_forward(e.f, x, k).verdict == Verdict::Pass) ++fwd;
    if (theorem19_converse(e.f, x, k).verdict == Verdict::Pass) ++conv;
  }
  // Dual route against the direct contact check on shared cases.
  int shared = 0, agree = 0;
  for (const char* label : {"quad:1", "quad:3", "power:1/4:4", "hemisphere:0:1:1", "pathological", "power:1:3"}) {
    const auto f = parse_function_label(label);
    for (double x : {0.0, 0.15, 0.35}) {
      for (double r : {0.1, 0.25}) {
        const Vec x0 = vec1(x);
        const auto rep = prop39_bound(f, x0, tangent_sphere(f, x0, r));
        if (rep.verdict == Verdict::NotApplicable) continue;
        const double K = estimate_K(f, x0).value.as_double();
        const bool primal = K <= 1.01 * c11_bound(f.gradient(x0)->norm(), r) + quotient_floor(f(x0));
        ++shared;
        if (rep.primal_holds == primal && rep.dual_holds == primal) ++agree;
      }
    }
  }
  const bool ok = fwd == 10 && conv == 10 && shared > 0 && agree == shared;
  return {ok, "forward " + std::to_string(fwd) + "/10, converse " + std::to_string(conv) + "/10, dual vs primal " +
                  std::to_string(agree) + "/" + std::to_string(shared)};
}

Outcome pathological() {
  const auto f = make_pathological(16);
  bool quotients = true, derivatives = true;
  for (int n = 0; n < 16; ++n) {
    const long long m = n + 4;
    // Endpoints m^-2 (1 - m^-2) and m^-2, width m^-4, built from integers.
    const double b = 1.0 / static_cast<double>(m * m);
    const double a = static_cast<double>(m * m - 1) / static_cast<double>(m * m * m * m);
    const double q = ((*f.gradient(b))(0) - (*f.gradient(a))(0)) / (b - a);
    quotients = quotients && std::abs(q - static_cast<double>(m)) <= 1e-10 * static_cast<double>(m);
    derivatives = derivatives && (*f.gradient(b))(0) <= 1.0 / (2.0 * (n + 3.0) * (n + 3.0));
  }
  const Sphere S{vec1(0.0), 1.0, 1.0};
  const bool support = is_sphere_of_support(f, S, vec1(0.0), probe_lattice(f, S.center, S.r, 4097));
  return {quotients && derivatives && support, std::string("quotients ") + (quotients ? "ok" : "bad") +
                                                   ", derivatives " + (derivatives ? "ok" : "bad") +
                                                   ", unit sphere " + (support ? "supports" : "fails")};
}

Outcome density_suite() {
  struct Case {
    const char* label;
    Vec at;
    double k;
  };
  const std::vector<Case> cases = {
      {"quad:1", vec1(0.0), 2.0},
      {"quad:3", vec1(0.4), 5.0},
      {"quad:1,2", make_vec({0.0, 0.0}), 4.0},
      {"hemisphere:0:1:1", vec1(0.3), 2.0},
      {"hemisphere:0,0:1:1", make_vec({0.2, 0.0}), 3.0},
      {"maxquad:1:0:0|0:1:-1/4", vec1(0.28), 2.0},
  };
  bool ok = true;
  double slowest = 0.0;
  std::string detail;
  for (const auto& c : cases) {
    const auto t0 = Clock::now();
    const auto rep = verify_density_theorem(parse_function_label(c.label), c.at, c.k);
    const double dt = seconds_since(t0);
    slowest = std::max(slowest, dt);
    const bool pass = rep.verdict == Verdict::Pass && dt < 120.0;
    ok = ok && pass;
    detail += std::string(c.label) + " " + g6(rep.theorem.liminf_estimate) + ">=" + g6(rep.theorem_bound) + "; ";
  }
  return {ok, detail + "slowest " + g6(slowest) + " s"};
}

Outcome lipschitz_bound() {
  std::mt19937_64 rng(8);
  bool ok = true;
  int points = 0;
  double worst = 0.0;
  for (const auto& e : property_catalog()) {
    if (!e.c11) continue;
    for (int i = 0; i < 50; ++i) {
      const Vec x = draw(rng, e.region);
      const double K = estimate_K(e.f, x).value.as_double();
      const Box local = Box::around(x, 0.05).intersect(e.f.domain());
      const double L = lipschitz_grad_bound(e.f, local, 400, rng());
      ok = ok && K <= 1.01 * L + quotient_floor(e.f(x));
      if (L > 0.0) worst = std::max(worst, K / L);
      ++points;
    }
  }
  return {ok, std::to_string(points) + " points, max K/L " + g6(worst)};
}

Outcome determinism() {
  std::vector<std::string> outputs;
  for (int threads : {1, 4, 8}) {
    set_thread_count(threads);
    std::string text;
    for (const auto& c : run_suite("paper-checks")) text += format_check(c) + "\n";
    outputs.push_back(text);
  }
  set_thread_count(1);
  const bool ok = outputs[0] == outputs[1] && outputs[0] == outputs[2];
  return {ok, std::to_string(outputs[0].size()) + " bytes at 1, 4 and 8 threads"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "hemisphere lambda_max reproduction", hemisphere_lambda},
      {"AC2", "K at sphere contacts below the C^{1,1} bound", contact_bound},
      {"AC3", "conjugate engine", conjugate_engine},
      {"AC4", "quadratic / sub-quadratic classification matrix", classification},
      {"AC5", "duality theorem both directions and dual-route bound", duality_theorems},
      {"AC6", "pathological function", pathological},
      {"AC7", "density theorem at desk scale", density_suite},
      {"AC8", "K below the empirical gradient Lipschitz bound", lipschitz_bound},
      {"AC9", "paper-checks output identical across thread counts", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %s  %s  (%s; %.2f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
