#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace curvk {

// Everything in the toolkit lives in dimension 1..3, so vectors and matrices
// are fixed-capacity and never touch the heap.
inline constexpr int kMaxDim = 3;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                          kMaxDim, kMaxDim>;

/// Raised when a point or parameter falls outside the mathematical domain of
/// an operation (k < 1 for a power, a probe step leaving the box, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a lattice is too coarse for the requested measurement.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: labels, configs, CSV grids.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void check_dim(int n);

Vec make_vec(std::initializer_list<double> xs);
Vec vec1(double x);
Vec zeros(int n);

/// Axis-aligned box in R^n.
struct Box {
  Vec lo;
  Vec hi;

  static Box cube(int n, double half_width);
  static Box around(const Vec& center, double half_width);

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Vec& x) const;
  Vec center() const { return 0.5 * (lo + hi); }
  double max_width() const { return (hi - lo).maxCoeff(); }
  double min_width() const { return (hi - lo).minCoeff(); }
  Box intersect(const Box& other) const;
  Box shifted(const Vec& by) const { return Box{lo + by, hi + by}; }
};

/// One axis of a regular lattice: `count` equally spaced nodes on [lo, hi].
struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  int count = 2;

  double step() const { return (hi - lo) / (count - 1); }
  double at(int i) const;
};

/// Regular tensor-product lattice. Flat index runs with the last axis fastest.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(std::vector<Axis> axes);

  static Lattice over(const Box& box, int count_per_axis);
  /// Cell-centred lattice: `cells` cells per axis, one node in each cell.
  static Lattice cell_centred(const Box& box, int cells);

  int dim() const { return static_cast<int>(axes_.size()); }
  std::size_t size() const { return size_; }
  const std::vector<Axis>& axes() const { return axes_; }
  const Axis& axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }

  Vec point(std::size_t flat) const;
  std::vector<int> multi_index(std::size_t flat) const;
  std::size_t flat_index(const std::vector<int>& idx) const;
  Box bounds() const;

 private:
  std::vector<Axis> axes_;
  std::size_t size_ = 0;
};

}  // namespace curvk
