#pragma once

#include <compare>
#include <limits>
#include <string>

#include "curvk/types.hpp"

namespace curvk {

/// A real number or +inf. Totally ordered; +inf exceeds every real.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  ExtendedReal(double v);  // NOLINT(google-explicit-constructor)

  static constexpr ExtendedReal infinity() { return ExtendedReal(Tag{}); }

  bool is_infinite() const { return v_ == std::numeric_limits<double>::infinity(); }
  bool is_finite() const { return !is_infinite(); }

  /// The real value; throws DomainError when infinite.
  double value() const;
  /// Real value, with +inf mapped to the IEEE infinity.
  double as_double() const { return v_; }

  std::string to_string() const;

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  struct Tag {};
  constexpr explicit ExtendedReal(Tag) : v_(std::numeric_limits<double>::infinity()) {}

  double v_ = 0.0;
};

inline ExtendedReal max(const ExtendedReal& a, const ExtendedReal& b) { return a < b ? b : a; }

}  // namespace curvk
