#include "curvk/dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvk/legendre.hpp"

namespace curvk {

namespace {

int probe_nodes(int dim) { return dim == 1 ? 401 : dim == 2 ? 41 : 15; }

constexpr int kRadialLevels = 40;

// Min over probe nodes of B(x0, eps) of the signed gap f - Q (Quadratic) or
// Q - f (SubQuadratic). Nodes where f is infinite are skipped.
double sense_gap(const ConvexFunction& f, const QuadWitness& q) {
  const Box box = Box::around(q.x0, q.eps).intersect(f.domain());
  for (int d = 0; d < box.dim(); ++d) {
    if (!(box.hi(d) > box.lo(d))) return std::numeric_limits<double>::infinity();
  }
  const Lattice probe = Lattice::over(box, probe_nodes(f.dim()));
  double gap = std::numeric_limits<double>::infinity();
  auto visit = [&](const Vec& x) {
    if ((x - q.x0).norm() > q.eps || !f.contains(x)) return;
    const double fx = f(x);
    if (!std::isfinite(fx)) return;
    const double g = q.sense == Sense::Quadratic ? fx - q(x) : q(x) - fx;
    gap = std::min(gap, g);
  };
  for (std::size_t i = 0; i < probe.size(); ++i) visit(probe.point(i));
  // Violations of the touching quadratic can live at scales far below the
  // lattice step, so rays through x0 are also sampled at radii eps 2^-j.
  for (const Vec& h : DirectionSet::standard(f.dim()).vectors()) {
    double rho = q.eps;
    for (int j = 0; j < kRadialLevels; ++j, rho *= 0.5) visit(Vec(q.x0 + rho * h));
  }
  return gap;
}

QuadCheck check_sense(const ConvexFunction& f, const Vec& x0, double m, const QuadOptions& opts,
                      Sense sense) {
  if (!(m > 0.0)) throw DomainError("modulus must be positive");
  if (x0.size() != f.dim()) throw InputError("dimension mismatch");
  if (!f.contains(x0)) throw DomainError("base point outside the domain");
  if (opts.retries < 0) throw DomainError("retries must be non-negative");
  QuadWitness w;
  w.x0 = x0;
  w.fx0 = f(x0);
  w.m = m;
  w.subgradient = opts.subgradient ? *opts.subgradient : find_subgradient(f, x0);
  w.sense = sense;
  const double tol = opts.tol ? *opts.tol : 1e-9 * (1.0 + std::abs(w.fx0));
  double eps = opts.eps ? *opts.eps : 0.05 * f.domain().max_width();
  if (!(eps > 0.0)) throw DomainError("probe radius must be positive");

  QuadCheck out;
  for (int attempt = 0; attempt <= opts.retries; ++attempt, eps *= 0.5) {
    w.eps = eps;
    out.eps_used = eps;
    out.margin = sense_gap(f, w);
    if (out.margin >= -tol) {
      out.holds = true;
      out.witness = w;
      return out;
    }
  }
  return out;
}

Vec top_direction(const ConvexFunction& f, const Vec& x0, const KappaEstimate& est) {
  const int n = f.dim();
  if (n == 1) return vec1(1.0);
  if (f.has_hessian_oracle()) {
    if (const auto H = f.hessian(x0)) {
      Eigen::SelfAdjointEigenSolver<Mat> es(*H);
      Eigen::Index top = 0;
      es.eigenvalues().maxCoeff(&top);
      return es.eigenvectors().col(top);
    }
  }
  return est.argmax_direction;
}

}  // namespace

double QuadWitness::operator()(const Vec& x) const {
  const Vec d = x - x0;
  return fx0 + subgradient.dot(d) + 0.5 * m * d.squaredNorm();
}

Vec find_subgradient(const ConvexFunction& f, const Vec& x0) {
  if (const auto g = f.gradient(x0)) return *g;
  const int n = f.dim();
  const double h = 1e-6 * std::max(1.0, f.domain().max_width());
  const double fx = f(x0);
  Vec s(n);
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e(i) = h;
    const double fp = f(x0 + e);
    const double fm = f(x0 - e);
    if (!std::isfinite(fp) || !std::isfinite(fm) || !std::isfinite(fx)) {
      throw DomainError("no subgradient found: one-sided quotients leave the domain");
    }
    s(i) = 0.5 * ((fp - fx) / h + (fx - fm) / h);
  }
  if (!subdifferential_contains(f, x0, s)) throw DomainError("no subgradient found at the base point");
  return s;
}

QuadCheck check_quadratic_convexity(const ConvexFunction& f, const Vec& x0, double m,
                                    const QuadOptions& opts) {
  return check_sense(f, x0, m, opts, Sense::Quadratic);
}

QuadCheck check_subquadratic_convexity(const ConvexFunction& f, const Vec& x0, double m,
                                       const QuadOptions& opts) {
  return check_sense(f, x0, m, opts, Sense::SubQuadratic);
}

const std::vector<double>& classification_moduli() {
  static const std::vector<double> moduli{0.01, 0.1, 1.0, 10.0, 100.0};
  return moduli;
}

Classification classify_convexity(const ConvexFunction& f, const Vec& x0) {
  QuadOptions opts;
  opts.subgradient = find_subgradient(f, x0);
  Classification c;
  for (double m : classification_moduli()) {
    c.quadratic = c.quadratic || check_quadratic_convexity(f, x0, m, opts).holds;
    c.subquadratic = c.subquadratic || check_subquadratic_convexity(f, x0, m, opts).holds;
  }
  return c;
}

ConvexFunction reduced_conjugate(const ConvexFunction& f, const Vec& x0, const Vec& dir,
                                 double& slack, double half_width, int points) {
  if (dir.size() != f.dim() || x0.size() != f.dim()) throw InputError("dimension mismatch");
  if (points < 3) throw DomainError("reduction grid needs at least 3 points");
  const Vec e = dir / dir.norm();
  double w = half_width;
  int halvings = 0;
  while (!f.contains(x0 + w * e) || !f.contains(x0 - w * e)) {
    w *= 0.5;
    if (++halvings > 40) throw DomainError("no segment through x0 fits in the domain");
  }
  const Lattice line(std::vector<Axis>{{-w, w, points}});
  GridFunction phi{line, std::vector<double>(line.size())};
  for (std::size_t i = 0; i < line.size(); ++i) phi.values[i] = f(x0 + line.axis(0).at(static_cast<int>(i)) * e);
  const GridFunction conj = conjugate_grid_1d(phi);
  slack = interpolation_error_bound(phi) + interpolation_error_bound(conj);
  return grid_to_function(conj, f.label() + "|reduced*");
}

DualReport theorem19_forward(const ConvexFunction& f, const Vec& x0, double k) {
  if (!(k > 0.0)) throw DomainError("k must be positive");
  DualReport rep;
  rep.k = k;
  rep.modulus = 1.0 / k;
  const auto g = f.gradient(x0);
  if (!g) {
    rep.k0 = ExtendedReal::infinity();
    rep.reason = "gradient undefined at x0, so K(f,x0) = +inf";
    return rep;
  }
  rep.y0 = *g;
  const KappaEstimate est = estimate_K(f, x0);
  rep.k0 = est.value;
  if (rep.k0.is_infinite()) {
    rep.reason = "K(f,x0) = +inf";
    return rep;
  }
  if (!(ExtendedReal(k) > rep.k0)) {
    rep.reason = "k must exceed K(f,x0) = " + rep.k0.to_string();
    return rep;
  }
  rep.direction = top_direction(f, x0, est);
  rep.eta0 = g->dot(rep.direction);
  double slack = 0.0;
  const ConvexFunction F = reduced_conjugate(f, x0, rep.direction, slack);
  QuadOptions opts;
  opts.subgradient = vec1(0.0);  // x0 itself, in the coordinates of the reduction
  opts.tol = 1e-9 * (1.0 + std::abs(F(rep.eta0))) + slack;
  rep.dual_check = check_quadratic_convexity(F, vec1(rep.eta0), rep.modulus, opts);
  rep.eps_conj = rep.dual_check.eps_used;
  rep.verdict = rep.dual_check.holds ? Verdict::Pass : Verdict::Fail;
  if (!rep.dual_check.holds) rep.reason = "conjugate not quadratically convex with modulus 1/k";
  return rep;
}

DualReport theorem19_converse(const ConvexFunction& f, const Vec& x0, double k) {
  if (!(k > 0.0)) throw DomainError("k must be positive");
  DualReport rep;
  rep.k = k;
  rep.modulus = 1.0 / k;
  const auto g = f.gradient(x0);
  if (!g) {
    rep.k0 = ExtendedReal::infinity();
    rep.reason = "gradient undefined at x0: no matching slope";
    return rep;
  }
  rep.y0 = *g;
  const KappaEstimate est = estimate_K(f, x0);
  rep.k0 = est.value;
  rep.direction = top_direction(f, x0, est);
  rep.eta0 = g->dot(rep.direction);
  double slack = 0.0;
  const ConvexFunction F = reduced_conjugate(f, x0, rep.direction, slack);
  QuadOptions opts;
  opts.subgradient = vec1(0.0);
  opts.tol = 1e-9 * (1.0 + std::abs(F(rep.eta0))) + slack;
  rep.dual_check = check_quadratic_convexity(F, vec1(rep.eta0), rep.modulus, opts);
  rep.eps_conj = rep.dual_check.eps_used;
  if (!rep.dual_check.holds) {
    rep.reason = "precondition: conjugate not quadratically convex with modulus 1/k";
    return rep;
  }
  const bool ok = rep.k0 <= ExtendedReal(k * 1.01);
  rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  if (!ok) rep.reason = "K estimate " + rep.k0.to_string() + " exceeds k";
  return rep;
}

Prop39Report prop39_bound(const ConvexFunction& f, const Vec& x0, const Sphere& S) {
  Prop39Report rep;
  const auto g = f.gradient(x0);
  if (!g) {
    rep.reason = "no gradient at x0";
    return rep;
  }
  bool supported = false;
  try {
    supported = is_sphere_of_support(f, S, x0, probe_lattice(f, S.center, S.r));
  } catch (const DomainError&) {
    supported = false;
  }
  if (!supported) {
    rep.reason = "no sphere of support at x0";
    return rep;
  }

  const int n = f.dim();
  const double base = S.r / std::pow(1.0 + g->squaredNorm(), 1.5);
  for (double frac : {0.5, 0.75, 0.9}) rep.moduli.push_back(frac * base);
  const double gn = g->norm();
  if (gn > 0.0) rep.directions.push_back(*g / gn);
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e(i) = 1.0;
    if (gn > 0.0 && std::abs(e.dot(*g) / gn) > 1.0 - 1e-12) continue;
    rep.directions.push_back(e);
  }

  rep.dual_holds = true;
  for (const Vec& dir : rep.directions) {
    double slack = 0.0;
    const ConvexFunction F = reduced_conjugate(f, x0, dir, slack);
    const double eta0 = g->dot(dir);
    QuadOptions opts;
    opts.subgradient = vec1(0.0);
    opts.tol = 1e-9 * (1.0 + std::abs(F(eta0))) + slack;
    for (double m : rep.moduli) {
      if (!check_quadratic_convexity(F, vec1(eta0), m, opts).holds) rep.dual_holds = false;
    }
  }

  rep.k_estimate = estimate_K(f, x0).value;
  rep.bound = c11_bound(gn, S.r);
  rep.primal_holds = rep.k_estimate <= ExtendedReal(rep.bound * 1.01);
  rep.verdict = rep.primal_holds && rep.dual_holds ? Verdict::Pass : Verdict::Fail;
  if (!rep.primal_holds) rep.reason = "K estimate exceeds the C^{1,1} bound";
  else if (!rep.dual_holds) rep.reason = "conjugate fails quadratic convexity for a sampled modulus";
  return rep;
}

PropA5Report propA5_check(const ConvexFunction& u, const Vec& x0, double r_x0) {
  if (!u.strongly_convex()) throw DomainError("'" + u.label() + "' is not flagged strongly convex");
  if (!(r_x0 > 0.0)) throw DomainError("r_x0 must be positive");
  if (!u.has_hessian_oracle()) throw DomainError("'" + u.label() + "' has no Hessian oracle");
  const auto H = u.hessian(x0);
  const auto g = u.gradient(x0);
  if (!H || !g) throw DomainError("Hessian or gradient undefined at x0");
  const OsculatingRadius osc = osculating_radius(u, x0);
  if (ExtendedReal(r_x0) > ExtendedReal(osc.curvature_radius.as_double() * (1.0 + 1e-9))) {
    throw DomainError("r_x0 exceeds the curvature radius " + osc.curvature_radius.to_string());
  }

  PropA5Report rep;
  rep.r_x0 = r_x0;
  Eigen::SelfAdjointEigenSolver<Mat> es(*H);
  Eigen::Index low = 0;
  rep.r_y0 = es.eigenvalues().minCoeff(&low);
  const Vec dir = es.eigenvectors().col(low);

  double slack = 0.0;
  const ConvexFunction F = reduced_conjugate(u, x0, dir, slack);
  const double eta0 = g->dot(dir);
  // Slope step of the conjugate grid; the difference step is about its square root.
  const double ds = F.domain().max_width() / (4.0 * 4000.0);
  const double sigma = std::round(std::sqrt(ds) / ds) * ds;
  const double second = (F(vec1(eta0 + sigma)) - 2.0 * F(vec1(eta0)) + F(vec1(eta0 - sigma))) / (sigma * sigma);
  rep.r_y0_grid = second > 0.0 ? 1.0 / second : std::numeric_limits<double>::infinity();

  rep.bound = std::pow(1.0 + x0.squaredNorm(), 1.5) * std::pow(1.0 + g->squaredNorm(), 1.5) / r_x0;
  const bool ok = rep.r_y0 <= rep.bound * (1.0 + 1e-12);
  rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  if (!ok) rep.reason = "dual radius exceeds the bound";
  return rep;
}

}  // namespace curvk
