#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "curvk/legendre.hpp"

namespace curvk {

namespace {

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_cell(std::string cell, std::size_t line) {
  cell.erase(0, cell.find_first_not_of(" \t\r"));
  cell.erase(cell.find_last_not_of(" \t\r") + 1);
  if (cell == "inf" || cell == "+inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc() || ptr != last || std::isnan(v)) {
    throw InputError("CSV line " + std::to_string(line) + ": malformed number '" + cell + "'");
  }
  return v;
}

// Sorted distinct coordinates of one column, checked for regular spacing.
Axis recover_axis(std::vector<double> xs, std::size_t column) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.size() < 2) throw InputError("CSV column " + std::to_string(column) + " needs 2 distinct values");
  const double step = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double expected = xs.front() + step * static_cast<double>(i);
    if (std::abs(xs[i] - expected) > 1e-9 * std::max(1.0, std::abs(step) * xs.size())) {
      throw InputError("CSV column " + std::to_string(column) + " is not a regular grid");
    }
  }
  return Axis{xs.front(), xs.back(), static_cast<int>(xs.size())};
}

}  // namespace

void write_grid_csv(std::ostream& os, const GridFunction& g) {
  g.validate();
  os << (g.dim() == 1 ? "x,value\n" : "x,y,value\n");
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec p = g.point(i);
    for (int d = 0; d < g.dim(); ++d) os << fmt_double(p(d)) << ',';
    os << fmt_double(g.values[i]) << '\n';
  }
}

GridFunction read_grid_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InputError("CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  int dim = 0;
  if (line == "x,value") dim = 1;
  else if (line == "x,y,value") dim = 2;
  else throw InputError("CSV header must be 'x,value' or 'x,y,value'");

  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(parse_cell(cell, lineno));
    if (row.size() != static_cast<std::size_t>(dim + 1)) {
      throw InputError("CSV line " + std::to_string(lineno) + ": expected " + std::to_string(dim + 1) + " fields");
    }
    for (int d = 0; d < dim; ++d) {
      if (!std::isfinite(row[static_cast<std::size_t>(d)])) {
        throw InputError("CSV line " + std::to_string(lineno) + ": coordinates must be finite");
      }
    }
    rows.push_back(std::move(row));
  }

  std::vector<Axis> axes;
  for (int d = 0; d < dim; ++d) {
    std::vector<double> col;
    for (const auto& r : rows) col.push_back(r[static_cast<std::size_t>(d)]);
    axes.push_back(recover_axis(std::move(col), static_cast<std::size_t>(d)));
  }
  Lattice grid(axes);
  if (rows.size() != grid.size()) throw InputError("CSV rows do not fill the grid exactly once");
  GridFunction g{grid, std::vector<double>(grid.size(), std::numeric_limits<double>::quiet_NaN())};
  for (const auto& r : rows) {
    std::vector<int> idx;
    for (int d = 0; d < dim; ++d) {
      const Axis& ax = grid.axis(d);
      idx.push_back(static_cast<int>(std::lround((r[static_cast<std::size_t>(d)] - ax.lo) / ax.step())));
    }
    double& slot = g.values[grid.flat_index(idx)];
    if (!std::isnan(slot)) throw InputError("CSV contains a duplicate grid point");
    slot = r.back();
  }
  g.validate();
  return g;
}

}  // namespace curvk
