#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "curvk/convex_function.hpp"
#include "curvk/extended_real.hpp"
#include "curvk/kappa.hpp"

namespace curvk {

/// n-sphere in R^{n+1} with centre (c, t) and radius r.
struct Sphere {
  Vec center;
  double t = 0.0;
  double r = 1.0;

  int dim() const { return static_cast<int>(center.size()); }
  /// Euclidean distance from (x, y) to the centre (c, t).
  double distance_to_center(const Vec& x, double y) const;
};

/// Probe lattice over the bounding box of B(c, r) clipped to the domain of u.
/// Default resolution: 513 nodes per axis in 1-D, 129 in 2-D, 33 in 3-D.
Lattice probe_lattice(const ConvexFunction& u, const Vec& c, double r, int per_axis = 0);

/// Sphere of support from above at x0, checked on the probe lattice: every
/// probe x in the closed ball around c (and within `locality` of x0, default
/// 2r) has (x, u(x)) at distance >= r - tol from the centre, and t > u(c)
/// when c lies in the domain. tol defaults to 1e-8 (r + |t|).
///
/// Throws DomainError when (x0, u(x0)) is not within tol of the sphere.
bool is_sphere_of_support(const ConvexFunction& u, const Sphere& S, const Vec& x0,
                          const Lattice& probe, std::optional<double> tol = std::nullopt,
                          std::optional<double> locality = std::nullopt);

struct ContactResult {
  double height = 0.0;              // t*
  std::vector<Vec> contacts;        // probe points attaining t* within tolerance
  std::vector<std::size_t> contact_indices;
  bool multiple = false;
  double tolerance = 0.0;           // tol_height used for the contact set
  Sphere sphere;                    // (c, t*, r)
};

/// Lowers the sphere with centre (c, t) from t = +inf until it first meets the
/// graph over the probe lattice: t* = max over probes x in B(c, r) of
/// u(x) + sqrt(r^2 - |x - c|^2). Contacts are all probes within
/// tol_height = 1e-8 (r + |t*|) of t*. Throws DomainError when no probe is
/// feasible.
ContactResult drop_sphere(const ConvexFunction& u, const Vec& c, double r, const Lattice& probe);
ContactResult drop_sphere(const ConvexFunction& u, const Vec& c, double r);

/// (1 + g^2)^{3/2} / r.
double c11_bound(double grad_norm, double r);

struct HemisphereEigen {
  double lambda_max = 0.0;
  double lambda_other = 0.0;
  bool eigvec_check = false;
};

/// Closed-form Hessian eigenvalues of t - sqrt(r^2 - |x|^2) at x = (s, 0, ...),
/// plus a check that the analytic Hessian maps the gradient to lambda_max
/// times itself. dim >= 2 so that lambda_other is attained.
HemisphereEigen hemisphere_hessian_eigen(double r, double s, int dim = 2);

struct OsculatingRadius {
  ExtendedReal radius;            // 1 / lambda_max of the Hessian
  ExtendedReal curvature_radius;  // 1 / largest principal curvature of the graph
};

/// `curvature_radius` reduces to (1 + u'^2)^{3/2} / u'' in 1-D; both radii
/// coincide where the gradient vanishes.
OsculatingRadius osculating_radius(const ConvexFunction& u, const Vec& x0);

/// Sphere of radius r tangent to the graph at (x0, u(x0)), centred along the
/// upward unit normal (-grad u, 1) / sqrt(1 + |grad u|^2).
Sphere tangent_sphere(const ConvexFunction& u, const Vec& x0, double r);

/// For each radius, whether the tangent sphere at x0 is a local sphere of
/// support. Probes cover the ball of radius `locality` (default 0.02 r)
/// around x0 with 201 nodes per axis in 1-D, 41 in 2-D, 15 in 3-D.
std::vector<bool> support_radius_partition(const ConvexFunction& u, const Vec& x0,
                                           const std::vector<double>& radii,
                                           std::optional<double> locality = std::nullopt);

struct XrContact {
  Vec x;
  Vec center;   // witnessing sphere centre in R^n
  double height = 0.0;
};

/// Drops a sphere of radius r from every centre of `centers`, using the probe
/// nodes in the ball around each centre, and returns the union of contact
/// points, each with the first centre (in lattice order) that produced it.
/// u must satisfy u(0) = 0 and grad u(0) = 0.
std::vector<XrContact> compute_Xr(const ConvexFunction& u, double r, const Lattice& centers,
                                  const Lattice& probe);

/// Per-point test of X_r membership: the tangent sphere of radius r at x
/// supports the graph on the probe nodes of `probe` inside its ball, plus a
/// fine local lattice around x.
bool in_Xr(const ConvexFunction& u, const Vec& x, double r, const Lattice& probe);

struct DensityEstimate {
  std::vector<std::pair<double, double>> samples;  // (eps, ratio)
  double liminf_estimate = 0.0;
  double lattice_tolerance = 0.0;
};

/// eps_j = eps0 * ratio^j for j < count.
std::vector<double> density_radii(double eps0, int count = 20, double ratio = 0.8);

/// Ratio of member cells to all cells whose centre lies in B(x0, eps), on a
/// fixed lattice with a precomputed membership mask. Throws ResolutionError
/// when a ball spans fewer than 32 lattice steps along some axis.
DensityEstimate lower_density(const Lattice& lattice, const std::vector<char>& member,
                              const Vec& x0, const std::vector<double>& eps);

/// Same measurement with a fresh cell-centred lattice of `cells` cells per
/// axis over the bounding box of each ball (defaults: 1025 in 1-D, 33 in 2-D,
/// 17 in 3-D). Throws ResolutionError when cells < 32.
DensityEstimate lower_density(const std::function<bool(const Vec&)>& member, const Vec& x0,
                              const std::vector<double>& eps, int cells = 0);

struct DensityConfig {
  double eps0 = 0.05;
  int radii = 20;
  double ratio = 0.8;
  int cells = 0;                 // see lower_density
  int xr_probes = 0;             // probe nodes per axis over B(0, eps0); 0: 513 in 1-D, 65 in 2-D
  KappaOptions kappa;
};

enum class Verdict { Pass, Fail, NotApplicable };
std::string to_string(Verdict v);

struct DensityReport {
  Verdict verdict = Verdict::NotApplicable;
  std::string reason;
  int dim = 1;
  ExtendedReal k0;
  double k = 0.0;
  // Set of points with K < k and its bound ((k - k0) / 2k)^n.
  DensityEstimate theorem;
  double theorem_bound = 0.0;
  bool theorem_pass = false;
  // Set of points with a supporting sphere of radius r and the bound
  // ((R - r) / 2R)^n, applicable when the R-sphere at 0 supports the graph.
  double R = 0.0;
  double r = 0.0;
  bool lemma_applicable = false;
  std::string lemma_reason;
  DensityEstimate lemma;
  double lemma_bound = 0.0;
  bool lemma_pass = false;
};

/// Normalises u at x0, measures the lower density at 0 of {K < k} and of
/// X_r, and compares both with the bounds. R = 1/(k0 + (k - k0)/10) and
/// r = 1/(k - (k - k0)/10), so that r < R. Not applicable when K(u, x0) is
/// infinite or k <= K(u, x0).
DensityReport verify_density_theorem(const ConvexFunction& u, const Vec& x0, double k,
                                     const DensityConfig& config = {});

}  // namespace curvk
