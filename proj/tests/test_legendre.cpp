#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "curvk/catalog.hpp"
#include "curvk/legendre.hpp"

using namespace curvk;

namespace {

GridFunction sampled(double (*fn)(double), double lo, double hi, int n) {
  const Lattice grid = Lattice::over(Box{vec1(lo), vec1(hi)}, n);
  GridFunction g{grid, std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) g.values[i] = fn(grid.point(i)(0));
  return g;
}

double slope_at(const GridFunction& c, std::size_t j) { return c.grid.axis(0).at(static_cast<int>(j)); }

// Conjugate of the piecewise-linear interpolant evaluated by scanning the
// breakpoints, written independently of the library's brute-force scan.
double pl_conjugate(const GridFunction& f, double s) {
  double best = -INFINITY;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f.values[i])) continue;
    best = std::fmax(best, s * f.grid.axis(0).at(static_cast<int>(i)) - f.values[i]);
  }
  return best;
}

GridFunction random_convex(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a = 1.0 + u(rng), b = u(rng), c = u(rng), k = u(rng);
  const Lattice grid = Lattice::over(Box::cube(1, 2.0), n);
  GridFunction g{grid, std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.point(i)(0);
    g.values[i] = a * x * x + b * x + std::abs(c) * std::abs(x - k) + std::exp(0.3 * c * x);
  }
  return g;
}

}  // namespace

TEST_CASE("self-dual quadratic") {
  const auto f = sampled([](double x) { return 0.5 * x * x; }, -3, 3, 601);
  const auto c = conjugate_grid_1d(f);
  const double step = f.grid.axis(0).step();
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double y = slope_at(c, j);
    if (std::abs(y) > 2.95) continue;
    CHECK(std::abs(c.values[j] - 0.5 * y * y) <= step * step);
  }
}

TEST_CASE("zero function has the support function of the interval as dual") {
  const auto f = sampled([](double) { return 0.0; }, -1, 1, 11);
  const Lattice slopes = Lattice::over(Box::cube(1, 2.0), 9);
  const auto c = conjugate_bruteforce(f, slopes);
  for (std::size_t j = 0; j < c.size(); ++j) CHECK(c.values[j] == doctest::Approx(std::abs(slope_at(c, j))));
}

TEST_CASE("semicircle and hemisphere pairs") {
  const auto f = sampled([](double x) { return -std::sqrt(1.0 - x * x); }, -1, 1, 2001);
  const auto c = conjugate_grid_1d(f);
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double y = slope_at(c, j);
    if (std::abs(y) > 3.0) continue;
    CHECK(c.values[j] == doctest::Approx(std::sqrt(1.0 + y * y)).epsilon(1e-4));
  }
  const auto d = make_hemisphere(vec1(0.0), 1.0, 1.0);
  const auto g = sample_grid(d, Lattice::over(d.domain(), 2001));
  const auto dc = conjugate_bruteforce(g, Lattice::over(Box::cube(1, 2.0), 41));
  for (std::size_t j = 0; j < dc.size(); ++j) {
    const double y = slope_at(dc, j);
    CHECK(dc.values[j] == doctest::Approx(-1.0 + std::sqrt(1.0 + y * y)).epsilon(1e-4));
  }
}

TEST_CASE("closed-form conjugates") {
  const auto half = closed_form_conjugate("power:1/2:2");
  CHECK(half.dual(vec1(1.3)) == doctest::Approx(0.5 * 1.69));
  const auto p43 = closed_form_conjugate(make_power(0.75, 4.0 / 3.0));
  CHECK(p43.dual(vec1(1.5)) == doctest::Approx(std::pow(1.5, 4) / 4.0));
  const auto hemi = closed_form_conjugate("hemisphere:0.5:2:1.5");
  const double y = 0.7;
  CHECK(hemi.dual(vec1(y)) == doctest::Approx(-2.0 + 0.5 * y + 1.5 * std::sqrt(1.0 + y * y)));
  const auto h0 = closed_form_conjugate("hemisphere:0:1:1");
  CHECK((*h0.dual_hessian(vec1(0.0)))(0, 0) == doctest::Approx(1.0));
  CHECK((*h0.dual_hessian(vec1(2.0)))(0, 0) == doctest::Approx(1.0 / std::pow(5.0, 1.5)));
  Mat Q(2, 2);
  Q << 2, 1, 1, 3;
  const auto qf = make_quadratic(Q, make_vec({1.0, 0.0}), 0.25);
  const auto qc = closed_form_conjugate(qf);
  const Vec s = make_vec({0.4, -0.2});
  const Vec z = s - make_vec({1.0, 0.0});
  CHECK(qc.dual(s) == doctest::Approx(0.5 * z.dot(Q.inverse() * z) - 0.25));
  CHECK_THROWS_AS(closed_form_conjugate("pathological"), InputError);
  CHECK_THROWS_AS(closed_form_conjugate("maxaffine:1:0|-1:0"), InputError);
}

TEST_CASE("closed forms agree with the grid conjugate") {
  // The interpolant lies above f, so its conjugate lies below f* by at most
  // the largest gap between the interpolant and f.
  for (const char* label : {"power:1/3:3", "power:1:4/3", "quad:2:1:0.5", "hemisphere:0:1:1"}) {
    const auto f = parse_function_label(label);
    const auto cp = closed_form_conjugate(f);
    const auto g = sample_grid(f, Lattice::over(f.domain(), 4001));
    const auto c = conjugate_grid_1d(g);
    const Axis& xs = g.grid.axis(0);
    double gap = 0.0;
    for (int i = 0; i + 1 < xs.count; ++i) {
      // Interpolant minus f is concave on a cell: ternary search for its max.
      auto cell_gap = [&](double t) { return (1 - t) * g.values[i] + t * g.values[i + 1] - f(xs.at(i) + t * xs.step()); };
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60; ++it) {
        const double a = lo + (hi - lo) / 3.0, b = hi - (hi - lo) / 3.0;
        if (cell_gap(a) < cell_gap(b)) lo = a;
        else hi = b;
      }
      gap = std::max(gap, cell_gap(0.5 * (lo + hi)));
    }
    for (std::size_t j = 0; j < c.size(); ++j) {
      const double y = slope_at(c, j);
      if (!cp.validity.contains(vec1(y))) continue;
      const double diff = cp.dual(vec1(y)) - c.values[j];
      CHECK_MESSAGE(diff >= -1e-9 * (1.0 + std::abs(c.values[j])), std::string(label) << " y=" << y);
      CHECK_MESSAGE(diff <= gap + 1e-9 * (1.0 + std::abs(c.values[j])), std::string(label) << " y=" << y);
    }
  }
}

TEST_CASE("slope lattice covers the difference quotients with padding") {
  const auto f = sampled([](double x) { return x * x; }, -1, 1, 11);
  const Lattice s = slope_lattice(f);
  CHECK(s.axis(0).count == 4 * 10 + 1);
  CHECK(s.axis(0).lo < -1.8);
  CHECK(s.axis(0).hi > 1.8);
  CHECK(slope_lattice(f, 7).axis(0).count == 7);
}

TEST_CASE("infinite samples are excluded") {
  auto f = sampled([](double x) { return x * x; }, -1, 1, 21);
  f.values.front() = INFINITY;
  f.values.back() = INFINITY;
  const auto c = conjugate_grid_1d(f);
  const auto b = conjugate_bruteforce(f, c.grid);
  for (std::size_t j = 0; j < c.size(); ++j) CHECK(c.values[j] == doctest::Approx(b.values[j]).epsilon(1e-12));
  GridFunction bad = f;
  for (auto& v : bad.values) v = INFINITY;
  CHECK_THROWS_AS(conjugate_grid_1d(bad), InputError);
  bad.values[3] = NAN;
  CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("biconjugate examples") {
  CHECK(biconjugate_check(sampled([](double x) { return 0.5 * x * x; }, -3, 3, 601)) <= 1e-6);
  const auto absx = sampled([](double x) { return std::abs(x); }, -1, 1, 201);
  CHECK(biconjugate_check(absx) <= absx.grid.axis(0).step());
  const auto crease = sampled([](double x) { return std::max(0.0, x * x - 1.0); }, -2, 2, 401);
  CHECK(biconjugate_check(crease) <= crease.grid.axis(0).step());
}

TEST_CASE("subdifferential membership") {
  const auto absx = make_max_affine({{vec1(1.0), 0.0}, {vec1(-1.0), 0.0}});
  CHECK(subdifferential_contains(absx, vec1(0.0), vec1(0.5)));
  CHECK_FALSE(subdifferential_contains(absx, vec1(0.0), vec1(2.0)));
  CHECK(subdifferential_contains(make_quadratic(1.0), vec1(1.0), vec1(1.0)));
  CHECK_FALSE(subdifferential_contains(make_quadratic(1.0), vec1(1.0), vec1(1.1)));
}

TEST_CASE("grid CSV round trip") {
  const auto f = parse_function_label("quad:1,2");
  auto g = sample_grid(f, Lattice::over(Box::cube(2, 1.0), 5));
  g.values[3] = INFINITY;
  std::stringstream ss;
  write_grid_csv(ss, g);
  CHECK(ss.str().rfind("x,y,value\n", 0) == 0);
  const auto back = read_grid_csv(ss);
  REQUIRE(back.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(back.values[i] == g.values[i]);
  std::istringstream dup("x,value\n0,1\n0,1\n1,2\n");
  CHECK_THROWS_AS(read_grid_csv(dup), InputError);
  std::istringstream header("a,b\n0,1\n");
  CHECK_THROWS_AS(read_grid_csv(header), InputError);
}

TEST_CASE("property: hull walk equals brute force and the interpolant conjugate") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const auto g = random_convex(rng, 601);
    const Lattice s = slope_lattice(g);
    const auto a = conjugate_grid_1d(g, s);
    const auto b = conjugate_bruteforce(g, s);
    const double tol = 1e-9 + interpolation_error_bound(g);
    for (std::size_t j = 0; j < a.size(); ++j) {
      CHECK(std::abs(a.values[j] - b.values[j]) <= tol);
      if (j % 97 == 0) CHECK(a.values[j] == doctest::Approx(pl_conjugate(g, slope_at(a, j))).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: Fenchel-Young and order reversal") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 5; ++t) {
    const auto f = random_convex(rng, 101);
    auto g = f;
    for (std::size_t i = 0; i < g.size(); ++i) g.values[i] += 0.01 * static_cast<double>(i % 3);
    const Lattice s = slope_lattice(f);
    const auto fc = conjugate_bruteforce(f, s), gc = conjugate_bruteforce(g, s);
    for (std::size_t j = 0; j < s.size(); ++j) {
      CHECK(fc.values[j] >= gc.values[j]);
      for (std::size_t i = 0; i < f.size(); i += 5) {
        CHECK(f.values[i] + fc.values[j] >= slope_at(fc, j) * f.grid.point(i)(0) - 1e-9);
      }
    }
  }
}

TEST_CASE("property: strongly convex quadratics have Lipschitz dual gradients") {
  for (double c : {0.5, 1.0, 4.0}) {
    const auto f = make_quadratic(c);
    const auto g = sample_grid(f, Lattice::over(f.domain(), 801));
    const auto d = conjugate_grid_1d(g);
    const double ds = d.grid.axis(0).step();
    // Gradient differences over a baseline of m cells: each kink of the
    // piecewise-linear dual moves the gradient by at most one primal step.
    const std::size_t m = 40;
    double L = 0.0;
    for (std::size_t j = 0; j + m + 1 < d.size(); ++j) {
      const double g0 = (d.values[j + 1] - d.values[j]) / ds;
      const double g1 = (d.values[j + m + 1] - d.values[j + m]) / ds;
      L = std::max(L, std::abs(g1 - g0) / (m * ds));
    }
    CHECK(L <= 1.0 / c + 2.0 * g.grid.axis(0).step() / (m * ds));
  }
}

TEST_CASE("2-D brute force on a separable quadratic") {
  const auto f = parse_function_label("quad:1,2");
  const auto g = sample_grid(f, Lattice::over(Box::cube(2, 2.0), 81));
  const auto c = conjugate_bruteforce(g, Lattice::over(Box::cube(2, 1.0), 11));
  for (std::size_t j = 0; j < c.size(); ++j) {
    const Vec y = c.point(j);
    CHECK(c.values[j] == doctest::Approx(0.5 * y(0) * y(0) + 0.25 * y(1) * y(1)).epsilon(1e-2));
  }
}
