#include <doctest.h>

#include <cmath>
#include <random>

#include "curvk/catalog.hpp"
#include "curvk/kappa.hpp"
#include "curvk/runner.hpp"
#include "curvk/support.hpp"

using namespace curvk;

TEST_CASE("unit sphere supports the pathological graph at the origin") {
  const auto f = make_pathological();
  const Sphere S{vec1(0.0), 1.0, 1.0};
  CHECK(is_sphere_of_support(f, S, vec1(0.0), probe_lattice(f, S.center, S.r, 4097)));
  const Sphere off{vec1(0.0), 1.5, 1.0};
  CHECK_THROWS_AS(is_sphere_of_support(f, off, vec1(0.0), probe_lattice(f, off.center, off.r)), DomainError);
}

TEST_CASE("spheres too large for the curvature penetrate the graph") {
  const auto f = make_quadratic(4.0);  // curvature radius at 0 is 1/4
  const auto small = tangent_sphere(f, vec1(0.0), 0.2);
  const auto large = tangent_sphere(f, vec1(0.0), 0.3);
  CHECK(is_sphere_of_support(f, small, vec1(0.0), probe_lattice(f, small.center, small.r)));
  CHECK_FALSE(is_sphere_of_support(f, large, vec1(0.0), probe_lattice(f, large.center, large.r)));
}

TEST_CASE("drop sphere on the pathological function") {
  const auto cr = drop_sphere(make_pathological(16), vec1(0.0), 1.0);
  CHECK(cr.height == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(cr.contacts.size() == 1);
  CHECK(cr.contacts[0](0) == 0.0);
  CHECK_FALSE(cr.multiple);
}

TEST_CASE("drop sphere on |x| touches twice") {
  const auto absx = make_max_affine({{vec1(1.0), 0.0}, {vec1(-1.0), 0.0}});
  // Tangency to the line y = x from a centre on the axis: x = r / sqrt(2).
  const double r = 0.5;
  const auto cr = drop_sphere(absx, vec1(0.0), r, Lattice::over(Box::cube(1, 0.5), 2001));
  CHECK(cr.height == doctest::Approx(r * std::sqrt(2.0)).epsilon(1e-6));
  CHECK(cr.multiple);
  double lo = 1.0, hi = -1.0;
  for (const auto& x : cr.contacts) {
    lo = std::min(lo, x(0));
    hi = std::max(hi, x(0));
  }
  CHECK(lo == doctest::Approx(-r / std::sqrt(2.0)).epsilon(1e-3));
  CHECK(hi == doctest::Approx(r / std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("C^{1,1} bound and hemisphere eigenvalues") {
  CHECK(c11_bound(0.0, 2.0) == doctest::Approx(0.5));
  CHECK(c11_bound(1.0, 1.0) == doctest::Approx(std::pow(2.0, 1.5)));
  CHECK_THROWS_AS(c11_bound(1.0, 0.0), DomainError);
  for (double s : {0.0, 0.3, 0.6, 0.8}) {
    const auto e = hemisphere_hessian_eigen(1.0, s, 3);
    CHECK(e.lambda_max == doctest::Approx(1.0 / std::pow(1.0 - s * s, 1.5)));
    CHECK(e.lambda_other == doctest::Approx(1.0 / std::sqrt(1.0 - s * s)));
    CHECK(e.eigvec_check);
  }
  CHECK_THROWS_AS(hemisphere_hessian_eigen(1.0, 1.0), DomainError);
}

TEST_CASE("osculating radii") {
  const auto f = make_quadratic(2.0);
  const auto at0 = osculating_radius(f, vec1(0.0));
  CHECK(at0.radius.value() == doctest::Approx(0.5));
  CHECK(at0.curvature_radius.value() == doctest::Approx(0.5));
  // Parabola x^2 at x = 1: curvature radius (1 + 4)^{3/2} / 2.
  const auto at1 = osculating_radius(f, vec1(1.0));
  CHECK(at1.curvature_radius.value() == doctest::Approx(std::pow(5.0, 1.5) / 2.0));
  const auto flat = osculating_radius(make_power(1.0, 3.0), vec1(0.0));
  CHECK(flat.radius.is_infinite());
}

TEST_CASE("support radius partition is monotone") {
  const auto f = make_quadratic(1.0);
  const std::vector<double> radii = {0.5, 0.9, 0.99, 1.01, 1.5, 3.0};
  const auto ok = support_radius_partition(f, vec1(0.0), radii);
  REQUIRE(ok.size() == radii.size());
  CHECK(ok[0]);
  CHECK(ok[1]);
  CHECK(ok[2]);
  CHECK_FALSE(ok[3]);
  CHECK_FALSE(ok[5]);
}

TEST_CASE("X_r of a parabola is everything, of |x| misses the kink") {
  const auto f = make_quadratic(1.0);
  const Lattice centers = Lattice::over(Box::cube(1, 0.5), 33);
  const Lattice probe = Lattice::over(Box::cube(1, 1.5), 1025);
  const auto pts = compute_Xr(f, 0.5, centers, probe);
  CHECK(pts.size() >= 30);
  CHECK(in_Xr(f, vec1(0.0), 0.5, probe));
  const auto absx = make_max_affine({{vec1(1.0), 0.0}, {vec1(-1.0), 0.0}});
  CHECK_FALSE(in_Xr(absx, vec1(0.0), 0.5, probe));
  CHECK(in_Xr(absx, vec1(0.4), 0.1, probe));
}

TEST_CASE("lower density of simple sets") {
  const Lattice lat = Lattice::cell_centred(Box::cube(1, 1.0), 2000);
  std::vector<char> half(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) half[i] = lat.point(i)(0) > 0.0;
  const auto d = lower_density(lat, half, vec1(0.0), density_radii(0.5, 10));
  CHECK(d.liminf_estimate == doctest::Approx(0.5).epsilon(d.lattice_tolerance));
  const auto disc = lower_density([](const Vec& x) { return x.norm() <= 0.01; }, zeros(2), {0.02, 0.01}, 64);
  CHECK(disc.samples[1].second == doctest::Approx(1.0));
  CHECK(disc.samples[0].second == doctest::Approx(0.25).epsilon(0.1));
  CHECK_THROWS_AS(lower_density(lat, half, vec1(0.0), {1e-3}), ResolutionError);
}

TEST_CASE("density theorem on a quadratic") {
  const auto rep = verify_density_theorem(make_quadratic(1.0), vec1(0.0), 2.0);
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(rep.theorem_bound == doctest::Approx(0.25));
  CHECK(rep.k0.value() == doctest::Approx(1.0).epsilon(1e-9));
  const auto na = verify_density_theorem(make_quadratic(1.0), vec1(0.0), 0.5);
  CHECK(na.verdict == Verdict::NotApplicable);
  const auto absx = make_max_affine({{vec1(1.0), 0.0}, {vec1(-1.0), 0.0}});
  CHECK(verify_density_theorem(absx, vec1(0.0), 2.0).verdict == Verdict::NotApplicable);
}

TEST_CASE("property: gradient is the top eigenvector of the hemisphere Hessian") {
  for (int i = 1; i <= 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double r = 0.2 * i, s = r * j / 20.0;
      CHECK(hemisphere_hessian_eigen(r, s).eigvec_check);
      const double g = s / std::sqrt(r * r - s * s);
      CHECK(c11_bound(g, r) == doctest::Approx(hemisphere_hessian_eigen(r, s).lambda_max).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: K at contact points obeys the C^{1,1} bound") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int cases = 0;
  for (const auto& e : property_catalog()) {
    for (int i = 0; i < 2; ++i) {
      Vec c(e.region.dim());
      for (int d = 0; d < c.size(); ++d) c(d) = e.region.lo(d) + u(rng) * (e.region.hi(d) - e.region.lo(d));
      const double r = 0.1;
      const auto cr = drop_sphere(e.f, c, r);
      for (const auto& x : cr.contacts) {
        const auto g = e.f.gradient(x);
        if (!g) continue;
        ExtendedReal K;
        try {
          K = estimate_K(e.f, x).value;
        } catch (const DomainError&) {
          continue;
        }
        CHECK_MESSAGE(K.as_double() <= 1.01 * c11_bound(g->norm(), r) + 1e-9, e.f.label());
        ++cases;
      }
    }
  }
  CHECK(cases >= 20);
}
