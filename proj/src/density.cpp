#include <algorithm>
#include <cmath>

#include "curvk/catalog.hpp"
#include "curvk/parallel.hpp"
#include "curvk/support.hpp"

namespace curvk {

namespace {

constexpr int kMinCellsAcross = 32;

double trailing_min(const std::vector<std::pair<double, double>>& samples) {
  const std::size_t half = std::max<std::size_t>(1, samples.size() / 2);
  double m = 1.0;
  for (std::size_t i = samples.size() - half; i < samples.size(); ++i) m = std::min(m, samples[i].second);
  return m;
}

void check_radii(const std::vector<double>& eps) {
  if (eps.empty()) throw DomainError("density needs at least one radius");
  for (double e : eps) {
    if (!(e > 0.0)) throw DomainError("density radii must be positive");
  }
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::NotApplicable: return "N/A";
  }
  return "?";
}

std::vector<double> density_radii(double eps0, int count, double ratio) {
  EpsilonSchedule s{eps0, ratio, count};
  return s.values();
}

DensityEstimate lower_density(const Lattice& lattice, const std::vector<char>& member,
                              const Vec& x0, const std::vector<double>& eps) {
  check_radii(eps);
  if (member.size() != lattice.size()) throw InputError("membership mask does not match the lattice");
  if (x0.size() != lattice.dim()) throw InputError("dimension mismatch");
  const Box bounds = lattice.bounds();
  double max_step = 0.0;
  for (const auto& ax : lattice.axes()) max_step = std::max(max_step, ax.step());
  DensityEstimate out;
  double eps_min = eps.front();
  for (double e : eps) {
    eps_min = std::min(eps_min, e);
    if (2.0 * e / max_step < kMinCellsAcross) {
      throw ResolutionError("lattice too coarse: ball of radius " + std::to_string(e) + " spans fewer than 32 cells");
    }
    if (!bounds.contains(x0.array() - e) || !bounds.contains(x0.array() + e)) {
      throw DomainError("density ball leaves the lattice");
    }
    std::size_t total = 0, hits = 0;
    const int n = lattice.dim();
    std::vector<int> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) {
      const Axis& ax = lattice.axis(d);
      lo[static_cast<std::size_t>(d)] = std::max(0, static_cast<int>(std::floor((x0(d) - e - ax.lo) / ax.step())));
      hi[static_cast<std::size_t>(d)] = std::min(ax.count - 1, static_cast<int>(std::ceil((x0(d) + e - ax.lo) / ax.step())));
    }
    std::vector<int> idx = lo;
    while (true) {
      const std::size_t flat = lattice.flat_index(idx);
      if ((lattice.point(flat) - x0).norm() <= e) {
        ++total;
        if (member[flat]) ++hits;
      }
      int d = n - 1;
      while (d >= 0) {
        const auto sd = static_cast<std::size_t>(d);
        if (++idx[sd] <= hi[sd]) break;
        idx[sd] = lo[sd];
        --d;
      }
      if (d < 0) break;
    }
    if (total == 0) throw ResolutionError("density ball contains no lattice node");
    out.samples.emplace_back(e, static_cast<double>(hits) / static_cast<double>(total));
  }
  out.liminf_estimate = trailing_min(out.samples);
  out.lattice_tolerance = 2.0 * max_step / eps_min;
  return out;
}

DensityEstimate lower_density(const std::function<bool(const Vec&)>& member, const Vec& x0,
                              const std::vector<double>& eps, int cells) {
  check_radii(eps);
  const int n = static_cast<int>(x0.size());
  check_dim(n);
  if (cells <= 0) cells = n == 1 ? 1025 : n == 2 ? 33 : 17;
  if (cells < kMinCellsAcross) throw ResolutionError("density lattice needs at least 32 cells across each ball");
  DensityEstimate out;
  for (double e : eps) {
    const Lattice lat = Lattice::cell_centred(Box::around(x0, e), cells);
    std::vector<Vec> inside;
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const Vec p = lat.point(i);
      if ((p - x0).norm() <= e) inside.push_back(p);
    }
    std::vector<char> hit(inside.size(), 0);
    parallel_for(inside.size(), [&](std::size_t i) { hit[i] = member(inside[i]) ? 1 : 0; });
    const auto hits = std::count(hit.begin(), hit.end(), 1);
    out.samples.emplace_back(e, static_cast<double>(hits) / static_cast<double>(inside.size()));
  }
  out.liminf_estimate = trailing_min(out.samples);
  out.lattice_tolerance = 4.0 / cells;
  return out;
}

DensityReport verify_density_theorem(const ConvexFunction& u, const Vec& x0, double k,
                                     const DensityConfig& config) {
  if (!(k > 0.0)) throw DomainError("k must be positive");
  const int n = u.dim();
  DensityReport rep;
  rep.dim = n;
  rep.k = k;
  if (!u.gradient(x0)) {
    rep.k0 = ExtendedReal::infinity();
    rep.reason = "gradient undefined at x0, so K(u,x0) = +inf";
    return rep;
  }
  const ConvexFunction v = shift_normalize(u, x0);
  const Vec origin = zeros(n);
  rep.k0 = estimate_K(v, origin, config.kappa).value;
  if (rep.k0.is_infinite()) {
    rep.reason = "K(u,x0) = +inf";
    return rep;
  }
  const double k0 = rep.k0.value();
  if (!(k > k0)) {
    rep.reason = "k must exceed K(u,x0) = " + rep.k0.to_string();
    return rep;
  }

  const auto eps = density_radii(config.eps0, config.radii, config.ratio);

  auto below_k = [&](const Vec& x) {
    try {
      return estimate_K(v, x, config.kappa).value < ExtendedReal(k);
    } catch (const DomainError&) {
      return false;  // quotient probes leave the domain: counted as outside
    }
  };
  rep.theorem = lower_density(below_k, origin, eps, config.cells);
  rep.theorem_bound = std::pow((k - k0) / (2.0 * k), n);
  rep.theorem_pass = rep.theorem.liminf_estimate >= rep.theorem_bound - rep.theorem.lattice_tolerance;

  rep.R = 1.0 / (k0 + 0.1 * (k - k0));
  rep.r = 1.0 / (k - 0.1 * (k - k0));
  try {
    const Sphere big{origin, rep.R, rep.R};
    rep.lemma_applicable = is_sphere_of_support(v, big, origin, probe_lattice(v, origin, rep.R));
    if (!rep.lemma_applicable) rep.lemma_reason = "sphere of radius R at the origin meets the graph elsewhere";
  } catch (const DomainError& e) {
    rep.lemma_reason = e.what();
  }
  if (rep.lemma_applicable) {
    const int m = config.xr_probes > 0 ? config.xr_probes : (n == 1 ? 513 : n == 2 ? 65 : 17);
    const Lattice probe = Lattice::over(Box::around(origin, config.eps0).intersect(v.domain()), m);
    auto in_set = [&](const Vec& x) { return in_Xr(v, x, rep.r, probe); };
    rep.lemma = lower_density(in_set, origin, eps, config.cells);
    rep.lemma_bound = std::pow((rep.R - rep.r) / (2.0 * rep.R), n);
    rep.lemma_pass = rep.lemma.liminf_estimate >= rep.lemma_bound - rep.lemma.lattice_tolerance;
  }

  const bool ok = rep.theorem_pass && (!rep.lemma_applicable || rep.lemma_pass);
  rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  if (!ok) rep.reason = rep.theorem_pass ? "X_r density below bound" : "{K < k} density below bound";
  return rep;
}

}  // namespace curvk
