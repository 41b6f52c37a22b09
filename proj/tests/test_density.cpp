#include <doctest.h>

#include <cmath>

#include "curvk/catalog.hpp"
#include "curvk/kappa.hpp"
#include "curvk/support.hpp"

using namespace curvk;

TEST_CASE("radii schedule") {
  const auto r = density_radii(0.05);
  REQUIRE(r.size() == 20);
  CHECK(r[0] == 0.05);
  CHECK(r[1] == doctest::Approx(0.04));
  CHECK_THROWS_AS(lower_density([](const Vec&) { return true; }, vec1(0.0), {}), DomainError);
}

TEST_CASE("density of a cone in 2-D") {
  // Quarter plane has density exactly 1/4 at its corner.
  const auto d = lower_density([](const Vec& x) { return x(0) >= 0.0 && x(1) >= 0.0; }, zeros(2),
                               density_radii(0.1, 5), 65);
  for (const auto& [eps, ratio] : d.samples) CHECK(std::abs(ratio - 0.25) <= d.lattice_tolerance);
}

TEST_CASE("density theorem: smooth quadratics") {
  const auto one = verify_density_theorem(make_quadratic(1.0), vec1(0.3), 3.0);
  CHECK(one.verdict == Verdict::Pass);
  CHECK(one.theorem_bound == doctest::Approx(std::pow((3.0 - 1.0) / 6.0, 1)));
  CHECK(one.theorem.liminf_estimate >= one.theorem_bound - one.theorem.lattice_tolerance);
  const auto two = verify_density_theorem(parse_function_label("quad:1,2"), make_vec({0.1, -0.1}), 4.0);
  CHECK(two.verdict == Verdict::Pass);
  CHECK(two.theorem_bound == doctest::Approx(0.25 * 0.25));
}

TEST_CASE("density theorem: hemisphere and crease") {
  const auto h = verify_density_theorem(make_hemisphere(vec1(0.0), 1.0, 1.0), vec1(0.2), 2.0);
  CHECK(h.verdict == Verdict::Pass);
  const auto crease = parse_function_label("maxquad:1:0:0|0:1:-1/4");
  // Away from the crease both pieces are smooth; the max-quadratic acts like x^2/2 there.
  const auto c = verify_density_theorem(crease, vec1(0.3), 2.0);
  CHECK(c.verdict == Verdict::Pass);
}

TEST_CASE("density report fields") {
  const auto rep = verify_density_theorem(make_quadratic(1.0), vec1(0.0), 2.0);
  CHECK(rep.dim == 1);
  CHECK(rep.R == doctest::Approx(1.0 / (1.0 + 0.1)));
  CHECK(rep.r == doctest::Approx(1.0 / (2.0 - 0.1)));
  CHECK(rep.lemma_applicable);
  CHECK(rep.lemma_pass);
  CHECK(rep.lemma_bound == doctest::Approx((rep.R - rep.r) / (2.0 * rep.R)));
}

TEST_CASE("property: densities are fractions and monotone under inclusion") {
  for (double a : {0.1, 0.3, 0.7}) {
    auto inner = [a](const Vec& x) { return std::abs(x(0)) <= a * 0.01; };
    auto outer = [a](const Vec& x) { return std::abs(x(0)) <= a * 0.02; };
    const auto eps = density_radii(0.02, 8);
    const auto di = lower_density(inner, vec1(0.0), eps, 256);
    const auto dout = lower_density(outer, vec1(0.0), eps, 256);
    for (std::size_t j = 0; j < eps.size(); ++j) {
      CHECK(di.samples[j].second >= 0.0);
      CHECK(dout.samples[j].second <= 1.0);
      CHECK(di.samples[j].second <= dout.samples[j].second);
    }
  }
}

TEST_CASE("K-sublevel set has density one half at a curvature crease") {
  // max(x^2/2, 2x^2 - 0.015): curvature 1 inside |x| < 0.1, 4 outside.
  const auto u = parse_function_label("maxquad:1:0:0|4:0:-0.015");
  auto member = [&u](const Vec& x) {
    try {
      return estimate_K(u, x).value.as_double() <= 2.0;
    } catch (const DomainError&) {
      return false;
    }
  };
  const auto d = lower_density(member, vec1(0.1), density_radii(0.05, 10), 1025);
  for (const auto& [eps, ratio] : d.samples) CHECK(std::abs(ratio - 0.5) <= d.lattice_tolerance + 0.01);
}
