#include <charconv>
#include <string_view>

#include "curvk/catalog.hpp"

namespace curvk {
namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_decimal(std::string_view s, std::string_view context) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last) {
    throw InputError("malformed number '" + std::string(s) + "' in " + std::string(context));
  }
  return v;
}

double parse_scalar(std::string_view s, std::string_view context) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_decimal(s, context);
  const double p = parse_decimal(s.substr(0, slash), context);
  const double q = parse_decimal(s.substr(slash + 1), context);
  if (q == 0.0) throw InputError("zero denominator in " + std::string(context));
  return p / q;
}

Vec parse_list(std::string_view s, std::string_view context) {
  const auto parts = split(s, ',');
  if (parts.size() > static_cast<std::size_t>(kMaxDim)) {
    throw InputError("too many components in " + std::string(context));
  }
  Vec v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_scalar(parts[i], context);
  return v;
}

Mat parse_matrix(std::string_view s, std::string_view context) {
  const auto rows = split(s, ';');
  if (rows.size() == 1) {
    const Vec d = parse_list(rows[0], context);
    return d.asDiagonal();
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n > kMaxDim) throw InputError("matrix too large in " + std::string(context));
  Mat Q(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec row = parse_list(rows[static_cast<std::size_t>(i)], context);
    if (row.size() != n) throw InputError("matrix is not square in " + std::string(context));
    Q.row(i) = row.transpose();
  }
  return Q;
}

QuadraticFamily parse_quad_spec(const std::vector<std::string>& f, std::size_t first,
                                std::string_view context) {
  if (f.size() <= first || f.size() > first + 3) throw InputError("expected Q[:b[:c]] in " + std::string(context));
  QuadraticFamily q;
  q.Q = parse_matrix(f[first], context);
  const auto n = q.Q.rows();
  q.b = f.size() > first + 1 ? parse_list(f[first + 1], context) : Vec(Vec::Zero(n));
  q.c = f.size() > first + 2 ? parse_scalar(f[first + 2], context) : 0.0;
  if (q.b.size() != n) throw InputError("linear term dimension mismatch in " + std::string(context));
  return q;
}

}  // namespace

Vec parse_point(const std::string& text) {
  const Vec v = parse_list(text, "point");
  check_dim(static_cast<int>(v.size()));
  return v;
}

ConvexFunction parse_function_label(const std::string& label) {
  const auto colon = label.find(':');
  const std::string kind = label.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : label.substr(colon + 1);
  const auto fields = split(rest, ':');

  if (kind == "power") {
    if (fields.size() < 2 || fields.size() > 3) throw InputError("expected power:A:k[:n]");
    const int n = fields.size() == 3 ? static_cast<int>(parse_decimal(fields[2], label)) : 1;
    return make_power(parse_scalar(fields[0], label), parse_scalar(fields[1], label), n);
  }
  if (kind == "quad") {
    const auto q = parse_quad_spec(fields, 0, label);
    return make_quadratic(q.Q, q.b, q.c);
  }
  if (kind == "hemisphere") {
    if (fields.size() != 3) throw InputError("expected hemisphere:c:t:r");
    return make_hemisphere(parse_list(fields[0], label), parse_scalar(fields[1], label),
                           parse_scalar(fields[2], label));
  }
  if (kind == "semicircle") {
    if (!rest.empty()) throw InputError("semicircle takes no parameters");
    return make_hemisphere(vec1(0.0), 0.0, 1.0).with_label("semicircle");
  }
  if (kind == "pathological") {
    if (colon == std::string::npos) return make_pathological();
    if (fields.size() != 1) throw InputError("expected pathological[:N]");
    return make_pathological(static_cast<int>(parse_decimal(fields[0], label)));
  }
  if (kind == "maxaffine") {
    std::vector<std::pair<Vec, double>> planes;
    for (const auto& piece : split(rest, '|')) {
      const auto pf = split(piece, ':');
      if (pf.size() != 2) throw InputError("expected maxaffine:a:b|a:b...");
      planes.emplace_back(parse_list(pf[0], label), parse_scalar(pf[1], label));
    }
    return make_max_affine(planes);
  }
  if (kind == "maxquad") {
    std::vector<QuadraticFamily> pieces;
    for (const auto& piece : split(rest, '|')) pieces.push_back(parse_quad_spec(split(piece, ':'), 0, label));
    return make_max_quadratic(pieces);
  }
  throw InputError("unknown function label '" + label + "'");
}

}  // namespace curvk
