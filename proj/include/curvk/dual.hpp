#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvk/convex_function.hpp"
#include "curvk/extended_real.hpp"
#include "curvk/kappa.hpp"
#include "curvk/support.hpp"

namespace curvk {

enum class Sense { Quadratic, SubQuadratic };

/// Q(x) = f(x0) + <s, x - x0> + (m/2)|x - x0|^2 together with the ball on
/// which it bounds f from below (Quadratic) or above (SubQuadratic).
struct QuadWitness {
  Vec x0;
  double fx0 = 0.0;
  double m = 0.0;
  Vec subgradient;
  double eps = 0.0;
  Sense sense = Sense::Quadratic;

  double operator()(const Vec& x) const;
};

struct QuadOptions {
  std::optional<Vec> subgradient;  // default: gradient, else a verified one-sided midpoint
  std::optional<double> eps;       // default: 5% of the domain width
  int retries = 4;                 // halvings of eps before giving up
  std::optional<double> tol;       // default: 1e-9 (1 + |f(x0)|)
};

struct QuadCheck {
  bool holds = false;
  std::optional<QuadWitness> witness;  // set when holds
  double eps_used = 0.0;               // last radius tried
  double margin = 0.0;                 // min over probes of the signed gap at eps_used
};

/// A subgradient of f at x0: the gradient when it exists, otherwise the
/// midpoint of the one-sided difference quotients, accepted only if
/// subdifferential_contains confirms it. Throws DomainError otherwise.
Vec find_subgradient(const ConvexFunction& f, const Vec& x0);

/// f >= Q - tol on the probe nodes of B(x0, eps), shrinking eps on failure.
QuadCheck check_quadratic_convexity(const ConvexFunction& f, const Vec& x0, double m,
                                    const QuadOptions& opts = {});
/// f <= Q + tol on the probe nodes of B(x0, eps), shrinking eps on failure.
QuadCheck check_subquadratic_convexity(const ConvexFunction& f, const Vec& x0, double m,
                                       const QuadOptions& opts = {});

/// Moduli tried by classify_convexity.
const std::vector<double>& classification_moduli();

struct Classification {
  bool quadratic = false;
  bool subquadratic = false;
};

/// Whether some modulus in classification_moduli() witnesses each sense.
Classification classify_convexity(const ConvexFunction& f, const Vec& x0);

struct DualReport {
  Verdict verdict = Verdict::NotApplicable;
  std::string reason;
  ExtendedReal k0;
  double k = 0.0;
  Vec y0;                          // grad f(x0)
  Vec direction;                   // reduction direction
  double eta0 = 0.0;               // <y0, direction>
  double modulus = 0.0;
  QuadCheck dual_check;
  double eps_conj = 0.0;
};

/// The 1-D reduction of f along `dir` through x0, conjugated on a grid of
/// `points` samples over |t| <= half_width (clipped to the domain) and
/// returned as a piecewise-linear function of the slope. `slack` receives
/// the interpolation error bound of the primal and dual grids.
ConvexFunction reduced_conjugate(const ConvexFunction& f, const Vec& x0, const Vec& dir,
                                 double& slack, double half_width = 0.25, int points = 4001);

/// K(f, x0) = k0 < k implies f* quadratically convex at grad f(x0) with
/// modulus 1/k, the witness subgradient being x0. Checked on the 1-D
/// reduction along the top Hessian eigenvector (or the maximising direction
/// of the K estimate when no Hessian oracle exists).
DualReport theorem19_forward(const ConvexFunction& f, const Vec& x0, double k);

/// Quadratic convexity of f* with modulus 1/k at grad f(x0) implies
/// K(f, x0) <= k; asserted with 1% slack.
DualReport theorem19_converse(const ConvexFunction& f, const Vec& x0, double k);

struct Prop39Report {
  Verdict verdict = Verdict::NotApplicable;
  std::string reason;
  ExtendedReal k_estimate;
  double bound = 0.0;              // c11_bound(|grad f(x0)|, r)
  bool primal_holds = false;       // K estimate <= bound (1 + 1%)
  bool dual_holds = false;         // every sampled modulus passes on every direction
  std::vector<double> moduli;
  std::vector<Vec> directions;
};

/// Dual-route check of the C^{1,1} estimate: for every direction through
/// grad f(x0) and along the axes, the conjugate of the reduction is
/// quadratically convex at the matching slope with moduli
/// {0.5, 0.75, 0.9} r / (1 + |y0|^2)^{3/2}; and K(f, x0) <= c11_bound.
Prop39Report prop39_bound(const ConvexFunction& f, const Vec& x0, const Sphere& S);

struct PropA5Report {
  Verdict verdict = Verdict::NotApplicable;
  std::string reason;
  double r_x0 = 0.0;
  double r_y0 = 0.0;               // lambda_min of the Hessian at x0
  double r_y0_grid = 0.0;          // same, from second differences of a grid conjugate
  double bound = 0.0;
};

/// Dual osculating radius bound r_y0 <= (1+|x0|^2)^{3/2} (1+|grad u|^2)^{3/2} / r_x0.
/// Throws DomainError unless u is flagged strongly convex, has a Hessian at
/// x0 and r_x0 does not exceed the curvature radius there.
PropA5Report propA5_check(const ConvexFunction& u, const Vec& x0, double r_x0);

}  // namespace curvk
