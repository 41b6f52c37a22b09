#include <cmath>
#include <cstdio>

#include "curvk/extended_real.hpp"

namespace curvk {

ExtendedReal::ExtendedReal(double v) : v_(v) {
  if (std::isnan(v) || v == -std::numeric_limits<double>::infinity()) {
    throw DomainError("extended real must be a real number or +inf");
  }
}

double ExtendedReal::value() const {
  if (is_infinite()) throw DomainError("value is +inf");
  return v_;
}

std::string ExtendedReal::to_string() const {
  if (is_infinite()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v_);
  return buf;
}

}  // namespace curvk
