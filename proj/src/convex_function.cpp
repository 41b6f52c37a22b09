#include "curvk/convex_function.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace curvk {

ConvexFunction::ConvexFunction(std::string label, Box domain, EvalFn eval, GradFn grad,
                               HessFn hess, DomainFn in_domain)
    : label_(std::move(label)),
      domain_(std::move(domain)),
      eval_(std::move(eval)),
      grad_(std::move(grad)),
      hess_(std::move(hess)),
      in_domain_(std::move(in_domain)) {
  check_dim(domain_.dim());
  if (domain_.hi.size() != domain_.lo.size()) throw InputError("box bounds differ in size");
  if (!eval_) throw InputError("convex function needs an evaluation oracle");
}

bool ConvexFunction::contains(const Vec& x) const {
  if (!domain_.contains(x)) return false;
  return !in_domain_ || in_domain_(x);
}

double ConvexFunction::operator()(const Vec& x) const {
  if (!contains(x)) return std::numeric_limits<double>::infinity();
  return eval_(x);
}

std::optional<Vec> ConvexFunction::gradient(const Vec& x) const {
  if (!contains(x)) return std::nullopt;
  if (grad_) return grad_(x);
  return numeric_gradient(*this, x).gradient;
}

std::optional<Mat> ConvexFunction::hessian(const Vec& x) const {
  if (!hess_) throw std::logic_error("function '" + label_ + "' has no Hessian oracle");
  if (!contains(x)) return std::nullopt;
  return hess_(x);
}

ConvexFunction ConvexFunction::with_family(Family f) const {
  ConvexFunction out = *this;
  out.family_ = std::move(f);
  return out;
}

ConvexFunction ConvexFunction::with_strong_convexity(bool flag) const {
  ConvexFunction out = *this;
  out.strongly_convex_ = flag;
  return out;
}

ConvexFunction ConvexFunction::with_label(std::string label) const {
  ConvexFunction out = *this;
  out.label_ = std::move(label);
  return out;
}

ConvexFunction ConvexFunction::restricted(const Box& box, DomainFn extra) const {
  ConvexFunction out = *this;
  out.domain_ = domain_.intersect(box);
  if (extra) {
    auto prev = in_domain_;
    out.in_domain_ = [prev, extra](const Vec& x) { return (!prev || prev(x)) && extra(x); };
  }
  return out;
}

NumericGradient numeric_gradient(const ConvexFunction& f, const Vec& x, double h) {
  const int n = f.dim();
  if (h <= 0.0) h = 1e-6 * std::max(1.0, f.domain().max_width());
  const double wide = 1e3 * h;
  NumericGradient out;
  const double fx = f(x);
  Vec g(n);
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e(i) = 1.0;
    const double fp = f(x + h * e);
    const double fm = f(x - h * e);
    if (!std::isfinite(fp) || !std::isfinite(fm) || !std::isfinite(fx)) return out;
    const double fwd = (fp - fx) / h;
    const double bwd = (fx - fm) / h;
    out.mismatch = std::max(out.mismatch, std::abs(fwd - bwd));
    out.lipschitz = std::max({out.lipschitz, std::abs(fwd), std::abs(bwd)});
    // Coarser probe for the Lipschitz scale, when it stays inside the domain.
    const double fwp = f(x + wide * e);
    const double fwm = f(x - wide * e);
    if (std::isfinite(fwp)) out.lipschitz = std::max(out.lipschitz, std::abs(fwp - fx) / wide);
    if (std::isfinite(fwm)) out.lipschitz = std::max(out.lipschitz, std::abs(fx - fwm) / wide);
    g(i) = (fp - fm) / (2.0 * h);
  }
  if (out.mismatch <= 1e-4 * std::max(out.lipschitz, 1.0)) out.gradient = g;
  return out;
}

}  // namespace curvk
