#include "curvk/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvk/catalog.hpp"
#include "curvk/parallel.hpp"

namespace curvk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void GridFunction::validate() const {
  if (grid.dim() < 1 || grid.dim() > 2) throw InputError("grid functions live in dimension 1 or 2");
  if (values.size() != grid.size()) throw InputError("grid value count does not match the lattice");
  bool any_finite = false;
  for (double v : values) {
    if (std::isnan(v)) throw InputError("grid value is NaN");
    if (v == -kInf) throw InputError("grid value is -inf");
    any_finite = any_finite || std::isfinite(v);
  }
  if (!any_finite) throw InputError("grid function has no finite value");
}

GridFunction sample_grid(const ConvexFunction& f, const Lattice& grid) {
  GridFunction g{grid, std::vector<double>(grid.size())};
  parallel_for(grid.size(), [&](std::size_t i) { g.values[i] = f(grid.point(i)); });
  return g;
}

Lattice slope_lattice(const GridFunction& f, int count) {
  f.validate();
  std::vector<Axis> axes;
  for (int d = 0; d < f.dim(); ++d) {
    const Axis& ax = f.grid.axis(d);
    double qmin = kInf;
    double qmax = -kInf;
    for (std::size_t i = 0; i < f.size(); ++i) {
      auto idx = f.grid.multi_index(i);
      if (idx[static_cast<std::size_t>(d)] + 1 >= ax.count) continue;
      const double a = f.values[i];
      idx[static_cast<std::size_t>(d)] += 1;
      const double b = f.values[f.grid.flat_index(idx)];
      if (!std::isfinite(a) || !std::isfinite(b)) continue;
      const double q = (b - a) / ax.step();
      qmin = std::min(qmin, q);
      qmax = std::max(qmax, q);
    }
    if (!std::isfinite(qmin)) throw InputError("grid has no two adjacent finite samples");
    double pad = 0.05 * (qmax - qmin);
    if (!(pad > 0.0)) pad = 0.05 * std::max(1.0, std::abs(qmax));
    const int n = count > 0 ? count : 4 * (ax.count - 1) + 1;
    axes.push_back({qmin - pad, qmax + pad, n});
  }
  return Lattice(std::move(axes));
}

GridFunction conjugate_bruteforce(const GridFunction& f, const Lattice& slopes) {
  f.validate();
  if (slopes.dim() != f.dim()) throw InputError("slope lattice dimension mismatch");
  std::vector<std::size_t> finite;
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f.values[i])) continue;
    finite.push_back(i);
    pts.push_back(f.point(i));
  }
  GridFunction out{slopes, std::vector<double>(slopes.size())};
  parallel_for(slopes.size(), [&](std::size_t j) {
    const Vec s = slopes.point(j);
    double best = -kInf;
    for (std::size_t k = 0; k < finite.size(); ++k) {
      best = std::max(best, s.dot(pts[k]) - f.values[finite[k]]);
    }
    out.values[j] = best;
  });
  return out;
}

GridFunction conjugate_grid_1d(const GridFunction& f, int slope_count) {
  return conjugate_grid_1d(f, slope_lattice(f, slope_count));
}

GridFunction conjugate_grid_1d(const GridFunction& f, const Lattice& slopes) {
  f.validate();
  if (f.dim() != 1 || slopes.dim() != 1) throw InputError("conjugate_grid_1d needs 1-D grids");

  // Lower convex hull of the finite samples (monotone chain; x is sorted).
  std::vector<double> hx;
  std::vector<double> hf;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = f.values[i];
    if (!std::isfinite(v)) continue;
    const double x = f.grid.axis(0).at(static_cast<int>(i));
    while (hx.size() >= 2) {
      const std::size_t m = hx.size();
      const double cross = (hx[m - 1] - hx[m - 2]) * (v - hf[m - 2]) -
                           (hf[m - 1] - hf[m - 2]) * (x - hx[m - 2]);
      if (cross > 0.0) break;
      hx.pop_back();
      hf.pop_back();
    }
    hx.push_back(x);
    hf.push_back(v);
  }

  GridFunction out{slopes, std::vector<double>(slopes.size())};
  std::size_t j = 0;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    const double s = slopes.axis(0).at(static_cast<int>(i));
    while (j + 1 < hx.size() && s * hx[j + 1] - hf[j + 1] >= s * hx[j] - hf[j]) ++j;
    out.values[i] = s * hx[j] - hf[j];
  }
  return out;
}

double biconjugate_check(const GridFunction& f) {
  f.validate();
  const GridFunction conj = f.dim() == 1 ? conjugate_grid_1d(f) : conjugate_bruteforce(f, slope_lattice(f));
  const GridFunction bi = conjugate_bruteforce(conj, f.grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f.values[i])) continue;
    const auto idx = f.grid.multi_index(i);
    bool interior = true;
    for (int d = 0; d < f.dim(); ++d) {
      const int k = idx[static_cast<std::size_t>(d)];
      if (k == 0 || k + 1 == f.grid.axis(d).count) interior = false;
    }
    if (interior) worst = std::max(worst, std::abs(f.values[i] - bi.values[i]));
  }
  return worst;
}

double interpolation_error_bound(const GridFunction& g) {
  g.validate();
  if (g.dim() != 1) throw InputError("interpolation_error_bound needs a 1-D grid");
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    const double a = g.values[i - 1], b = g.values[i], c = g.values[i + 1];
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) continue;
    worst = std::max(worst, std::abs(a - 2.0 * b + c));
  }
  return worst / 8.0;
}

ConvexFunction grid_to_function(const GridFunction& g, std::string label) {
  g.validate();
  auto eval = [g](const Vec& x) {
    double acc = 0.0;
    const int n = g.dim();
    // Multilinear interpolation over the cell containing x.
    std::vector<int> base(static_cast<std::size_t>(n));
    std::vector<double> frac(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) {
      const Axis& ax = g.grid.axis(d);
      const double t = (x(d) - ax.lo) / ax.step();
      int k = std::clamp(static_cast<int>(std::floor(t)), 0, ax.count - 2);
      base[static_cast<std::size_t>(d)] = k;
      frac[static_cast<std::size_t>(d)] = std::clamp(t - k, 0.0, 1.0);
    }
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int corner = 0; corner < (1 << n); ++corner) {
      double w = 1.0;
      for (int d = 0; d < n; ++d) {
        const bool up = (corner >> d) & 1;
        const auto sd = static_cast<std::size_t>(d);
        idx[sd] = base[sd] + (up ? 1 : 0);
        w *= up ? frac[sd] : 1.0 - frac[sd];
      }
      if (w == 0.0) continue;
      const double v = g.values[g.grid.flat_index(idx)];
      if (!std::isfinite(v)) return kInf;
      acc += w * v;
    }
    return acc;
  };
  return ConvexFunction(std::move(label), g.grid.bounds(), eval);
}

ConvexFunction ConjugatePair::as_function(std::optional<Box> box) const {
  Box b = box ? *box : validity.intersect(Box::cube(validity.dim(), 1e3));
  auto d = dual;
  auto h = dual_hessian;
  ConvexFunction::GradFn grad;
  return ConvexFunction(primal + "*", b, [d](const Vec& y) { return d(y); }, grad,
                        h ? ConvexFunction::HessFn([h](const Vec& y) { return h(y); })
                          : ConvexFunction::HessFn{});
}

ConjugatePair closed_form_conjugate(const ConvexFunction& f) {
  const int n = f.dim();
  const Family& fam = f.family();
  return std::visit(
      Overloaded{
          [&](const PowerFamily& p) -> ConjugatePair {
            if (!(p.k > 1.0)) throw InputError("no closed-form conjugate for power k = 1");
            const double A = p.A, k = p.k;
            const double q = k / (k - 1.0);
            const double C = (k - 1.0) * A * std::pow(A * k, -q);
            // Slopes attained by the gradient on the inscribed ball of the box.
            const double w = 0.5 * f.domain().min_width();
            ConjugatePair cp;
            cp.primal = f.label();
            cp.dual = [C, q](const Vec& y) { return C * std::pow(y.norm(), q); };
            cp.dual_hessian = [C, q, n](const Vec& y) -> std::optional<Mat> {
              const double rho = y.norm();
              if (rho == 0.0) {
                if (q == 2.0) return Mat(2.0 * C * Mat::Identity(n, n));
                if (q > 2.0) return Mat(Mat::Zero(n, n));
                return std::nullopt;
              }
              const Vec e = y / rho;
              const double radial = C * q * (q - 1.0) * std::pow(rho, q - 2.0);
              const double tangential = C * q * std::pow(rho, q - 2.0);
              return Mat(tangential * (Mat::Identity(n, n) - e * e.transpose()) +
                         radial * e * e.transpose());
            };
            cp.validity = Box::cube(n, A * k * std::pow(w, k - 1.0) / std::sqrt(static_cast<double>(n)));
            return cp;
          },
          [&](const QuadraticFamily& qf) -> ConjugatePair {
            Eigen::SelfAdjointEigenSolver<Mat> es(qf.Q, Eigen::EigenvaluesOnly);
            const double lmin = es.eigenvalues().minCoeff();
            if (!(lmin > 0.0)) throw InputError("no closed-form conjugate for singular Q");
            const Mat Qi = qf.Q.inverse();
            const Vec b = qf.b;
            const double c = qf.c;
            const double w = 0.5 * f.domain().min_width();
            ConjugatePair cp;
            cp.primal = f.label();
            cp.dual = [Qi, b, c](const Vec& y) {
              const Vec z = y - b;
              return 0.5 * z.dot(Qi * z) - c;
            };
            cp.dual_hessian = [Qi](const Vec&) -> std::optional<Mat> { return Qi; };
            cp.validity = Box::around(b, lmin * w / std::sqrt(static_cast<double>(n)));
            return cp;
          },
          [&](const HemisphereFamily& h) -> ConjugatePair {
            const Vec c = h.center;
            const double t = h.t, r = h.r;
            ConjugatePair cp;
            cp.primal = f.label();
            cp.dual = [c, t, r](const Vec& y) { return -t + c.dot(y) + r * std::sqrt(1.0 + y.squaredNorm()); };
            cp.dual_hessian = [r, n](const Vec& y) -> std::optional<Mat> {
              const double s = 1.0 + y.squaredNorm();
              return Mat(r / std::sqrt(s) * (Mat::Identity(n, n) - y * y.transpose() / s));
            };
            cp.validity = Box::cube(n, kInf);
            return cp;
          },
          [&](const auto&) -> ConjugatePair {
            throw InputError("no closed-form conjugate for '" + f.label() + "'");
          }},
      fam);
}

ConjugatePair closed_form_conjugate(const std::string& label) {
  return closed_form_conjugate(parse_function_label(label));
}

bool subdifferential_contains(const ConvexFunction& f, const Vec& x, const Vec& s,
                              std::optional<double> tol, std::optional<double> half_width) {
  if (x.size() != f.dim() || s.size() != f.dim()) throw InputError("dimension mismatch");
  if (!f.contains(x)) return false;
  const double fx = f(x);
  const double slack = tol ? *tol : 1e-9 * (1.0 + std::abs(fx));
  const double w = half_width ? *half_width : 0.05 * f.domain().max_width();
  static constexpr int kPerAxis[] = {0, 401, 41, 15};
  const Box box = Box::around(x, w).intersect(f.domain());
  const Lattice probe = Lattice::over(box, kPerAxis[f.dim()]);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const Vec y = probe.point(i);
    const double fy = f(y);
    if (!std::isfinite(fy)) continue;
    if (fy < fx + s.dot(y - x) - slack) return false;
  }
  return true;
}

}  // namespace curvk
