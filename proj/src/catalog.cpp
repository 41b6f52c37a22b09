#include "curvk/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace curvk {
namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string vec_text(const Vec& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v(i));
  return s;
}

void require_psd(const Mat& Q) {
  const double scale = 1.0 + Q.cwiseAbs().maxCoeff();
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("quadratic form matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(Q);
  if (es.eigenvalues().minCoeff() < -1e-12 * scale) {
    throw DomainError("quadratic form matrix is not positive semi-definite");
  }
}

double quad_eval(const QuadraticFamily& q, const Vec& x) {
  return 0.5 * x.dot(q.Q * x) + q.b.dot(x) + q.c;
}

}  // namespace

ConvexFunction make_power(double A, double k, int n, double half_width) {
  check_dim(n);
  if (!(k >= 1.0)) throw DomainError("power exponent k < 1 gives a non-convex function");
  if (!(A > 0.0)) throw DomainError("power coefficient A must be positive");

  auto eval = [A, k](const Vec& x) { return A * std::pow(x.norm(), k); };
  auto grad = [A, k](const Vec& x) -> std::optional<Vec> {
    const double s = x.norm();
    if (s == 0.0) {
      if (k == 1.0) return std::nullopt;
      return Vec::Zero(x.size());
    }
    return Vec(A * k * std::pow(s, k - 2.0) * x);
  };
  auto hess = [A, k](const Vec& x) -> std::optional<Mat> {
    const auto n = x.size();
    const double s = x.norm();
    if (s == 0.0) {
      if (k == 2.0) return Mat(2.0 * A * Mat::Identity(n, n));
      if (k > 2.0) return Mat(Mat::Zero(n, n));
      return std::nullopt;
    }
    const Vec u = x / s;
    return Mat(A * k * std::pow(s, k - 2.0) *
               (Mat::Identity(n, n) + (k - 2.0) * u * u.transpose()));
  };
  const std::string label = "power:" + num(A) + ":" + num(k) + (n > 1 ? ":" + std::to_string(n) : "");
  return ConvexFunction(label, Box::cube(n, half_width), eval, grad, hess)
      .with_family(PowerFamily{A, k})
      .with_strong_convexity(k == 2.0);
}

ConvexFunction make_quadratic(const Mat& Q, const Vec& b, double c, double half_width) {
  const int n = static_cast<int>(Q.rows());
  check_dim(n);
  if (Q.cols() != n || b.size() != n) throw InputError("quadratic dimensions disagree");
  require_psd(Q);
  QuadraticFamily fam{Q, b, c};
  auto eval = [fam](const Vec& x) { return quad_eval(fam, x); };
  auto grad = [fam](const Vec& x) -> std::optional<Vec> { return Vec(fam.Q * x + fam.b); };
  auto hess = [fam](const Vec&) -> std::optional<Mat> { return fam.Q; };

  std::string qtext;
  for (int i = 0; i < n; ++i) {
    if (i) qtext += ";";
    qtext += vec_text(Q.row(i).transpose());
  }
  const std::string label = "quad:" + qtext + ":" + vec_text(b) + ":" + num(c);
  Eigen::SelfAdjointEigenSolver<Mat> es(Q);
  return ConvexFunction(label, Box::cube(n, half_width), eval, grad, hess)
      .with_family(fam)
      .with_strong_convexity(es.eigenvalues().minCoeff() > 0.0);
}

ConvexFunction make_quadratic(double q, double b, double c) {
  Mat Q(1, 1);
  Q(0, 0) = q;
  return make_quadratic(Q, vec1(b), c);
}

ConvexFunction make_hemisphere(const Vec& center, double t, double r) {
  check_dim(static_cast<int>(center.size()));
  if (!(r > 0.0)) throw DomainError("hemisphere radius must be positive");
  const double r2 = r * r;
  auto inside = [center, r2](const Vec& x) { return (x - center).squaredNorm() <= r2; };
  auto eval = [center, t, r2](const Vec& x) {
    return t - std::sqrt(std::max(r2 - (x - center).squaredNorm(), 0.0));
  };
  auto grad = [center, r2](const Vec& x) -> std::optional<Vec> {
    const Vec d = x - center;
    const double q = r2 - d.squaredNorm();
    if (q <= 0.0) return std::nullopt;
    return Vec(d / std::sqrt(q));
  };
  auto hess = [center, r2](const Vec& x) -> std::optional<Mat> {
    const Vec d = x - center;
    const double q = r2 - d.squaredNorm();
    if (q <= 0.0) return std::nullopt;
    const auto n = d.size();
    return Mat(Mat::Identity(n, n) / std::sqrt(q) + d * d.transpose() / (q * std::sqrt(q)));
  };
  const std::string label = "hemisphere:" + vec_text(center) + ":" + num(t) + ":" + num(r);
  return ConvexFunction(label, Box::around(center, r), eval, grad, hess, inside)
      .with_family(HemisphereFamily{center, t, r})
      .with_strong_convexity(true);
}

std::pair<double, double> pathological_interval(int n) {
  if (n < 0) throw DomainError("interval index must be non-negative");
  const double m = n + 4.0;
  const double b = 1.0 / (m * m);
  return {b * (1.0 - b), b};
}

namespace {

// Piecewise data of the truncated pathological function on [0,1]: knots
// ascending; on [knot_j, knot_{j+1}) the second derivative is slope[j].
struct PathologicalTable {
  std::vector<double> knot;
  std::vector<double> slope;
  std::vector<double> fp;  // f' at knots
  std::vector<double> f;   // f at knots

  explicit PathologicalTable(int intervals) {
    knot.push_back(0.0);
    slope.push_back(0.0);
    for (int n = intervals - 1; n >= 0; --n) {
      const auto [a, b] = pathological_interval(n);
      knot.push_back(a);
      slope.push_back(n + 4.0);
      knot.push_back(b);
      slope.push_back(0.0);
    }
    fp.assign(knot.size(), 0.0);
    f.assign(knot.size(), 0.0);
    for (std::size_t j = 0; j + 1 < knot.size(); ++j) {
      const double h = knot[j + 1] - knot[j];
      fp[j + 1] = fp[j] + slope[j] * h;
      f[j + 1] = f[j] + fp[j] * h + 0.5 * slope[j] * h * h;
    }
  }

  std::size_t segment(double x) const {
    auto it = std::upper_bound(knot.begin(), knot.end(), x);
    return static_cast<std::size_t>(it - knot.begin()) - 1;
  }
  double value(double x) const {
    const std::size_t j = segment(x);
    const double h = x - knot[j];
    return f[j] + fp[j] * h + 0.5 * slope[j] * h * h;
  }
  double derivative(double x) const {
    const std::size_t j = segment(x);
    return fp[j] + slope[j] * (x - knot[j]);
  }
};

}  // namespace

ConvexFunction make_pathological(int intervals) {
  if (intervals < 1) throw DomainError("pathological function needs at least one interval");
  auto table = std::make_shared<const PathologicalTable>(intervals);
  auto eval = [table](const Vec& x) { return table->value(std::abs(x(0))); };
  auto grad = [table](const Vec& x) -> std::optional<Vec> {
    const double d = table->derivative(std::abs(x(0)));
    return vec1(x(0) < 0.0 ? -d : d);
  };
  auto hess = [table](const Vec& x) -> std::optional<Mat> {
    const double a = std::abs(x(0));
    const std::size_t j = table->segment(a);
    // Second derivative jumps at every interval endpoint.
    if (a == table->knot[j] && j > 0 && table->slope[j] != table->slope[j - 1]) return std::nullopt;
    Mat H(1, 1);
    H(0, 0) = table->slope[j];
    return H;
  };
  return ConvexFunction("pathological:" + std::to_string(intervals), Box::cube(1, 1.0), eval,
                        grad, hess)
      .with_family(PathologicalFamily{intervals});
}

ConvexFunction make_max_affine(const std::vector<std::pair<Vec, double>>& planes,
                               double half_width) {
  if (planes.empty()) throw InputError("max-affine function needs at least one plane");
  const int n = static_cast<int>(planes.front().first.size());
  check_dim(n);
  for (const auto& p : planes) {
    if (p.first.size() != n) throw InputError("max-affine planes differ in dimension");
  }
  auto eval = [planes](const Vec& x) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : planes) m = std::max(m, a.dot(x) + b);
    return m;
  };
  // Active set: every plane within rounding of the maximum.
  auto active = [planes](const Vec& x) {
    std::vector<double> vals;
    for (const auto& [a, b] : planes) vals.push_back(a.dot(x) + b);
    const double m = *std::max_element(vals.begin(), vals.end());
    const double tol = 1e-12 * (1.0 + std::abs(m));
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (vals[i] >= m - tol) idx.push_back(i);
    }
    return idx;
  };
  auto grad = [planes, active](const Vec& x) -> std::optional<Vec> {
    const auto idx = active(x);
    for (auto i : idx) {
      if ((planes[i].first - planes[idx.front()].first).cwiseAbs().maxCoeff() > 0.0) return std::nullopt;
    }
    return planes[idx.front()].first;
  };
  auto hess = [grad, n](const Vec& x) -> std::optional<Mat> {
    if (!grad(x)) return std::nullopt;
    return Mat(Mat::Zero(n, n));
  };
  std::string label = "maxaffine:";
  for (std::size_t i = 0; i < planes.size(); ++i) {
    label += (i ? "|" : "") + vec_text(planes[i].first) + ":" + num(planes[i].second);
  }
  return ConvexFunction(label, Box::cube(n, half_width), eval, grad, hess)
      .with_family(MaxAffineFamily{planes});
}

ConvexFunction make_max_quadratic(const std::vector<QuadraticFamily>& pieces, double half_width) {
  if (pieces.empty()) throw InputError("max-quadratic function needs at least one piece");
  const int n = static_cast<int>(pieces.front().Q.rows());
  check_dim(n);
  for (const auto& p : pieces) {
    if (p.Q.rows() != n || p.Q.cols() != n || p.b.size() != n) {
      throw InputError("max-quadratic pieces differ in dimension");
    }
    require_psd(p.Q);
  }
  auto eval = [pieces](const Vec& x) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& p : pieces) m = std::max(m, quad_eval(p, x));
    return m;
  };
  auto active = [pieces](const Vec& x) {
    std::vector<double> vals;
    for (const auto& p : pieces) vals.push_back(quad_eval(p, x));
    const double m = *std::max_element(vals.begin(), vals.end());
    const double tol = 1e-12 * (1.0 + std::abs(m));
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (vals[i] >= m - tol) idx.push_back(i);
    }
    return idx;
  };
  auto grad = [pieces, active](const Vec& x) -> std::optional<Vec> {
    const auto idx = active(x);
    const Vec g = pieces[idx.front()].Q * x + pieces[idx.front()].b;
    for (auto i : idx) {
      const Vec gi = pieces[i].Q * x + pieces[i].b;
      if ((gi - g).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + g.cwiseAbs().maxCoeff())) return std::nullopt;
    }
    return g;
  };
  auto hess = [pieces, active](const Vec& x) -> std::optional<Mat> {
    const auto idx = active(x);
    if (idx.size() > 1) return std::nullopt;
    return pieces[idx.front()].Q;
  };
  std::string label = "maxquad:";
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    std::string q;
    for (int r = 0; r < n; ++r) q += (r ? ";" : "") + vec_text(pieces[i].Q.row(r).transpose());
    label += (i ? "|" : "") + q + ":" + vec_text(pieces[i].b) + ":" + num(pieces[i].c);
  }
  return ConvexFunction(label, Box::cube(n, half_width), eval, grad, hess)
      .with_family(MaxQuadFamily{pieces});
}

ConvexFunction shift_normalize(const ConvexFunction& u, const Vec& x0) {
  if (x0.size() != u.dim()) throw InputError("point dimension does not match function");
  const auto g0 = u.gradient(x0);
  if (!g0) throw DomainError("gradient of '" + u.label() + "' undefined at the normalisation point");
  const Vec g = *g0;
  const double u0 = u(x0);
  // Evaluate as u(x + x0) so that quotients at 0 reproduce those of u at x0
  // bit for bit.
  auto eval = [u, x0, u0, g](const Vec& x) { return u(x + x0) - u0 - g.dot(x); };
  auto grad = [u, x0, g](const Vec& x) -> std::optional<Vec> {
    auto gx = u.gradient(x + x0);
    if (!gx) return std::nullopt;
    return Vec(*gx - g);
  };
  ConvexFunction::HessFn hess;
  if (u.has_hessian_oracle()) {
    hess = [u, x0](const Vec& x) { return u.hessian(x + x0); };
  }
  auto inside = [u, x0](const Vec& x) { return u.contains(x + x0); };
  return ConvexFunction("shift(" + u.label() + "@" + vec_text(x0) + ")",
                        u.domain().shifted(-x0), eval, grad, hess, inside)
      .with_family(ShiftedFamily{x0})
      .with_strong_convexity(u.strongly_convex());
}

}  // namespace curvk
