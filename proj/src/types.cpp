#include "curvk/types.hpp"

#include <algorithm>

namespace curvk {

void check_dim(int n) {
  if (n < 1 || n > kMaxDim) {
    throw DomainError("dimension must be in 1.." + std::to_string(kMaxDim) +
                      ", got " + std::to_string(n));
  }
}

Vec make_vec(std::initializer_list<double> xs) {
  check_dim(static_cast<int>(xs.size()));
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Vec vec1(double x) {
  Vec v(1);
  v(0) = x;
  return v;
}

Vec zeros(int n) {
  check_dim(n);
  return Vec::Zero(n);
}

Box Box::cube(int n, double half_width) {
  check_dim(n);
  return Box{Vec::Constant(n, -half_width), Vec::Constant(n, half_width)};
}

Box Box::around(const Vec& center, double half_width) {
  return Box{center.array() - half_width, center.array() + half_width};
}

bool Box::contains(const Vec& x) const {
  if (x.size() != lo.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x(i) >= lo(i) && x(i) <= hi(i))) return false;
  }
  return true;
}

Box Box::intersect(const Box& other) const {
  return Box{lo.cwiseMax(other.lo), hi.cwiseMin(other.hi)};
}

double Axis::at(int i) const {
  if (i == count - 1) return hi;
  return lo + (hi - lo) * (static_cast<double>(i) / (count - 1));
}

Lattice::Lattice(std::vector<Axis> axes) : axes_(std::move(axes)) {
  check_dim(static_cast<int>(axes_.size()));
  size_ = 1;
  for (const auto& a : axes_) {
    if (a.count < 2) throw InputError("lattice axis needs at least 2 nodes");
    if (!(a.hi > a.lo)) throw InputError("lattice axis needs hi > lo");
    size_ *= static_cast<std::size_t>(a.count);
  }
}

Lattice Lattice::over(const Box& box, int count_per_axis) {
  std::vector<Axis> axes;
  for (int i = 0; i < box.dim(); ++i) axes.push_back({box.lo(i), box.hi(i), count_per_axis});
  return Lattice(std::move(axes));
}

Lattice Lattice::cell_centred(const Box& box, int cells) {
  std::vector<Axis> axes;
  for (int i = 0; i < box.dim(); ++i) {
    const double h = (box.hi(i) - box.lo(i)) / cells;
    axes.push_back({box.lo(i) + 0.5 * h, box.hi(i) - 0.5 * h, cells});
  }
  return Lattice(std::move(axes));
}

Vec Lattice::point(std::size_t flat) const {
  const int n = dim();
  Vec x(n);
  for (int i = n - 1; i >= 0; --i) {
    const auto& a = axes_[static_cast<std::size_t>(i)];
    const auto c = static_cast<std::size_t>(a.count);
    x(i) = a.at(static_cast<int>(flat % c));
    flat /= c;
  }
  return x;
}

std::vector<int> Lattice::multi_index(std::size_t flat) const {
  std::vector<int> idx(axes_.size());
  for (int i = dim() - 1; i >= 0; --i) {
    const auto c = static_cast<std::size_t>(axes_[static_cast<std::size_t>(i)].count);
    idx[static_cast<std::size_t>(i)] = static_cast<int>(flat % c);
    flat /= c;
  }
  return idx;
}

std::size_t Lattice::flat_index(const std::vector<int>& idx) const {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    flat = flat * static_cast<std::size_t>(axes_[i].count) + static_cast<std::size_t>(idx[i]);
  }
  return flat;
}

Box Lattice::bounds() const {
  Vec lo(dim()), hi(dim());
  for (int i = 0; i < dim(); ++i) {
    lo(i) = axis(i).lo;
    hi(i) = axis(i).hi;
  }
  return Box{lo, hi};
}

}  // namespace curvk

