#pragma once

#include <string>
#include <utility>
#include <vector>

#include "curvk/convex_function.hpp"

namespace curvk {

/// Default box half-width for catalog functions without a natural domain.
inline constexpr double kDefaultHalfWidth = 2.0;

/// f(x) = A |x|^k on [-2,2]^n. Rejects k < 1 (not convex) and A <= 0.
ConvexFunction make_power(double A, double k, int n = 1,
                          double half_width = kDefaultHalfWidth);

/// f(x) = 1/2 <Qx,x> + <b,x> + c. Q must be symmetric positive semi-definite.
ConvexFunction make_quadratic(const Mat& Q, const Vec& b, double c = 0.0,
                              double half_width = kDefaultHalfWidth);
ConvexFunction make_quadratic(double q, double b = 0.0, double c = 0.0);

/// Lower hemisphere d(x) = t - sqrt(r^2 - |x-c|^2) on the closed ball B(c,r).
/// Gradient and Hessian are undefined on the boundary sphere.
ConvexFunction make_hemisphere(const Vec& center, double t, double r);

/// Convex, C^1 function on [-1,1] whose derivative is the integral of a
/// step function equal to n+4 on I_n = b_n [1 - b_n, 1], b_n = 1/(n+4)^2,
/// for n < intervals, extended oddly. Its gradient is not Lipschitz near 0
/// in the untruncated limit, yet the unit sphere centred at (0,1) supports
/// its graph at the origin.
ConvexFunction make_pathological(int intervals = 16);

/// Endpoints [a_n, b_n] of the n-th interval of the pathological function.
std::pair<double, double> pathological_interval(int n);

/// max_i (<a_i,x> + b_i). Gradient exists wherever the maximiser is unique.
ConvexFunction make_max_affine(const std::vector<std::pair<Vec, double>>& planes,
                               double half_width = kDefaultHalfWidth);

/// Pointwise maximum of convex quadratics (creases where pieces cross).
ConvexFunction make_max_quadratic(const std::vector<QuadraticFamily>& pieces,
                                  double half_width = kDefaultHalfWidth);

/// u~(x) = u(x + x0) - u(x0) - <grad u(x0), x>, so that u~(0) = 0 and
/// grad u~(0) = 0. Throws DomainError if grad u(x0) does not exist.
ConvexFunction shift_normalize(const ConvexFunction& u, const Vec& x0);

/// Parses a catalog label (case-sensitive):
///
///   power:A:k[:n]          A|x|^k in dimension n (default 1)
///   quad:Q[:b[:c]]         Q is "q" (1-D), "q1,q2" (diagonal) or rows "a,b;c,d"
///   hemisphere:c:t:r       c is a comma list
///   semicircle             -sqrt(1 - x^2), i.e. hemisphere:0:0:1
///   pathological[:N]       N retained intervals (default 16)
///   maxaffine:a:b|a:b|...  max of affine pieces, a a comma list
///   maxquad:Q:b:c|...      max of quadratic pieces, each as in quad
///
/// Scalars accept decimal or p/q rational syntax.
ConvexFunction parse_function_label(const std::string& label);

/// Parses "x" or "x1,x2,..." into a vector.
Vec parse_point(const std::string& text);

}  // namespace curvk
