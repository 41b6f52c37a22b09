#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "curvk/types.hpp"

namespace curvk {

// Parameters of the closed-form families, kept on the function so that
// conjugation and classification can dispatch on them.
struct PowerFamily {
  double A;
  double k;
};
struct QuadraticFamily {
  Mat Q;
  Vec b;
  double c;
};
struct HemisphereFamily {
  Vec center;
  double t;
  double r;
};
struct PathologicalFamily {
  int intervals;
};
struct MaxAffineFamily {
  std::vector<std::pair<Vec, double>> planes;
};
struct MaxQuadFamily {
  std::vector<QuadraticFamily> pieces;
};
struct ShiftedFamily {
  Vec origin;
};
struct GenericFamily {};

using Family = std::variant<GenericFamily, PowerFamily, QuadraticFamily, HemisphereFamily,
                            PathologicalFamily, MaxAffineFamily, MaxQuadFamily, ShiftedFamily>;

/// Evaluation oracle for a convex function on a box (optionally cut down to a
/// smaller convex set), with optional analytic gradient and Hessian oracles.
///
/// Outside the domain the function is +inf. Gradient and Hessian oracles
/// return nullopt where the derivative does not exist. Instances are
/// immutable and safe to share between threads.
class ConvexFunction {
 public:
  using EvalFn = std::function<double(const Vec&)>;
  using GradFn = std::function<std::optional<Vec>(const Vec&)>;
  using HessFn = std::function<std::optional<Mat>(const Vec&)>;
  using DomainFn = std::function<bool(const Vec&)>;

  ConvexFunction(std::string label, Box domain, EvalFn eval, GradFn grad = {},
                 HessFn hess = {}, DomainFn in_domain = {});

  int dim() const { return domain_.dim(); }
  const Box& domain() const { return domain_; }
  const std::string& label() const { return label_; }

  bool contains(const Vec& x) const;

  /// Value at x, or +inf outside the domain.
  double operator()(const Vec& x) const;
  double operator()(double x) const { return (*this)(vec1(x)); }

  bool has_gradient_oracle() const { return static_cast<bool>(grad_); }
  bool has_hessian_oracle() const { return static_cast<bool>(hess_); }

  /// Gradient from the analytic oracle when present, otherwise from the
  /// finite-difference existence test. nullopt where undefined or off-domain.
  std::optional<Vec> gradient(const Vec& x) const;
  std::optional<Vec> gradient(double x) const { return gradient(vec1(x)); }

  /// Analytic Hessian. Throws std::logic_error when no oracle is attached.
  std::optional<Mat> hessian(const Vec& x) const;

  const Family& family() const { return family_; }
  bool strongly_convex() const { return strongly_convex_; }

  ConvexFunction with_family(Family f) const;
  ConvexFunction with_strong_convexity(bool flag) const;
  ConvexFunction with_label(std::string label) const;
  /// Same function on a smaller domain (intersection of both restrictions).
  ConvexFunction restricted(const Box& box, DomainFn extra = {}) const;

 private:
  std::string label_;
  Box domain_;
  EvalFn eval_;
  GradFn grad_;
  HessFn hess_;
  DomainFn in_domain_;
  Family family_;
  bool strongly_convex_ = false;
};

/// Result of the finite-difference gradient-existence test.
struct NumericGradient {
  std::optional<Vec> gradient;
  double mismatch = 0.0;   // largest one-sided slope disagreement over axes
  double lipschitz = 0.0;  // local Lipschitz estimate of the function
};

/// One-sided difference quotients along +-e_i with step `h`. The gradient is
/// declared undefined when the forward/backward mismatch exceeds
/// 1e-4 * max(local Lipschitz estimate, 1).
NumericGradient numeric_gradient(const ConvexFunction& f, const Vec& x, double h = 0.0);

}  // namespace curvk
