#include "curvk/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include "curvk/catalog.hpp"
#include "curvk/dual.hpp"
#include "curvk/kappa.hpp"
#include "curvk/legendre.hpp"

namespace curvk {

namespace {

enum class Kind { Point, Real, Int, Bool, Text };

struct OpSchema {
  std::map<std::string, Kind> params;
  std::vector<std::string> required;
};

const std::map<std::string, OpSchema>& schema() {
  static const std::map<std::string, OpSchema> s = {
      {"kappa", {{{"at", Kind::Point}, {"eps0", Kind::Real}, {"ratio", Kind::Real}, {"count", Kind::Int},
                  {"dirs", Kind::Int}, {"tail", Kind::Int}},
                 {"at"}}},
      {"conjugate", {{{"grid", Kind::Text}, {"points", Kind::Int}, {"slopes", Kind::Int}}, {}}},
      {"drop", {{{"center", Kind::Point}, {"r", Kind::Real}, {"probes", Kind::Int}}, {"center", "r"}}},
      {"xr", {{{"r", Kind::Real}, {"at", Kind::Point}, {"centers", Kind::Int}, {"probes", Kind::Int},
               {"halfwidth", Kind::Real}},
              {"r"}}},
      {"density", {{{"at", Kind::Point}, {"k", Kind::Real}, {"eps0", Kind::Real}, {"radii", Kind::Int},
                    {"cells", Kind::Int}},
                   {"at", "k"}}},
      {"qconv", {{{"at", Kind::Point}, {"m", Kind::Real}, {"sub", Kind::Bool}, {"eps", Kind::Real}}, {"at", "m"}}},
      {"thm19", {{{"at", Kind::Point}, {"k", Kind::Real}}, {"at", "k"}}},
      {"propA5", {{{"at", Kind::Point}, {"r", Kind::Real}}, {"at", "r"}}},
      {"suite", {{{"name", Kind::Text}}, {"name"}}},
  };
  return s;
}

double as_real(const json& v, const std::string& key) {
  if (v.is_number()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw InputError("parameter '" + key + "' must be finite");
    return d;
  }
  if (v.is_string()) {
    const Vec p = parse_point(v.get<std::string>());
    if (p.size() != 1) throw InputError("parameter '" + key + "' must be a single number");
    return p(0);
  }
  throw InputError("parameter '" + key + "' must be a number");
}

json canonical(const json& v, Kind kind, const std::string& key) {
  switch (kind) {
    case Kind::Point: {
      json arr = json::array();
      if (v.is_number() || v.is_string()) {
        const Vec p = v.is_number() ? vec1(as_real(v, key)) : parse_point(v.get<std::string>());
        for (Eigen::Index i = 0; i < p.size(); ++i) arr.push_back(p(i));
      } else if (v.is_array()) {
        for (const auto& e : v) arr.push_back(as_real(e, key));
      } else {
        throw InputError("parameter '" + key + "' must be a point");
      }
      if (arr.empty() || arr.size() > static_cast<std::size_t>(kMaxDim)) {
        throw InputError("parameter '" + key + "' must have 1 to 3 components");
      }
      return arr;
    }
    case Kind::Real:
      return as_real(v, key);
    case Kind::Int: {
      double d = 0.0;
      if (v.is_number()) {
        d = v.get<double>();
      } else if (v.is_string()) {
        d = as_real(v, key);
      } else {
        throw InputError("parameter '" + key + "' must be an integer");
      }
      if (d != std::floor(d) || std::abs(d) > 1e9) throw InputError("parameter '" + key + "' must be an integer");
      return static_cast<long long>(d);
    }
    case Kind::Bool:
      if (v.is_boolean()) return v;
      if (v.is_string() && (v == "true" || v == "false")) return v == "true";
      throw InputError("parameter '" + key + "' must be true or false");
    case Kind::Text:
      if (!v.is_string()) throw InputError("parameter '" + key + "' must be a string");
      return v;
  }
  return v;
}

Vec point_param(const json& params, const std::string& key) {
  const auto& arr = params.at(key);
  Vec p(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) p(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  return p;
}

template <class T>
T param_or(const json& params, const std::string& key, T fallback) {
  return params.contains(key) ? params.at(key).get<T>() : fallback;
}

json vec_json(const Vec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json ext_json(const ExtendedReal& e) { return number_json(e.as_double()); }

json density_json(const DensityEstimate& d) {
  json samples = json::array();
  for (const auto& [e, r] : d.samples) samples.push_back({e, r});
  return {{"samples", samples}, {"estimate", d.liminf_estimate}, {"lattice_tolerance", d.lattice_tolerance}};
}

std::string resolve(const std::string& path, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (p.is_relative() && !out_dir.empty()) p = fs::path(out_dir) / p;
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p.string();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot write '" + path + "'");
  return os;
}

void check_dim_match(const ConvexFunction& f, const Vec& p, const std::string& key) {
  if (p.size() != f.dim()) {
    throw InputError("parameter '" + key + "' has dimension " + std::to_string(p.size()) + ", function has " +
                     std::to_string(f.dim()));
  }
}

}  // namespace

json number_json(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

const std::vector<std::string>& operation_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : schema()) out.push_back(k);
    return out;
  }();
  return names;
}

json ExperimentConfig::to_json() const {
  return {{"fn", fn}, {"op", op}, {"params", params}, {"outputs", outputs}, {"seed", seed}};
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "fn" && key != "op" && key != "params" && key != "outputs" && key != "seed") {
      throw InputError("unknown config key '" + key + "'");
    }
  }
  ExperimentConfig c;
  if (!j.contains("op") || !j.at("op").is_string()) throw InputError("config needs a string 'op'");
  c.op = j.at("op").get<std::string>();
  const auto it = schema().find(c.op);
  if (it == schema().end()) throw InputError("unknown operation '" + c.op + "'");
  if (j.contains("fn")) {
    if (!j.at("fn").is_string()) throw InputError("'fn' must be a string");
    c.fn = j.at("fn").get<std::string>();
  }
  if (j.contains("seed")) {
    const auto& s = j.at("seed");
    if (!s.is_number_integer() || (s.is_number_integer() && s.get<long long>() < 0 && !s.is_number_unsigned())) {
      throw InputError("'seed' must be a non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  if (j.contains("params")) {
    const auto& p = j.at("params");
    if (!p.is_object()) throw InputError("'params' must be an object");
    for (const auto& [key, value] : p.items()) {
      const auto k = it->second.params.find(key);
      if (k == it->second.params.end()) throw InputError("unknown parameter '" + key + "' for " + c.op);
      c.params[key] = canonical(value, k->second, key);
    }
  }
  for (const auto& req : it->second.required) {
    if (!c.params.contains(req)) throw InputError("operation " + c.op + " needs parameter '" + req + "'");
  }
  if (j.contains("outputs")) {
    const auto& o = j.at("outputs");
    if (!o.is_object()) throw InputError("'outputs' must be an object");
    for (const auto& [key, value] : o.items()) {
      if (key != "report" && key != "csv") throw InputError("unknown output '" + key + "'");
      if (!value.is_string()) throw InputError("output paths must be strings");
      c.outputs[key] = value;
    }
  }
  const bool needs_fn = c.op != "suite" && !(c.op == "conjugate" && c.params.contains("grid"));
  if (needs_fn && c.fn.empty()) throw InputError("operation " + c.op + " needs a function label");
  return c;
}

void validate(const ExperimentConfig& config) {
  const ExperimentConfig c = ExperimentConfig::from_json(config.to_json());
  const json& p = c.params;
  if (c.op == "suite") {
    const auto name = p.at("name").get<std::string>();
    if (name != "paper-checks" && name != "invariants") throw InputError("unknown suite '" + name + "'");
    return;
  }
  std::optional<ConvexFunction> f;
  if (!c.fn.empty()) f = parse_function_label(c.fn);
  for (const auto& key : {"at", "center"}) {
    if (f && p.contains(key)) check_dim_match(*f, point_param(p, key), key);
  }
  for (const auto& key : {"r", "k", "m", "eps0", "eps", "halfwidth"}) {
    if (p.contains(key) && !(p.at(key).get<double>() > 0.0)) {
      throw DomainError(std::string("parameter '") + key + "' must be positive");
    }
  }
  for (const auto& key : {"count", "dirs", "tail", "points", "slopes", "probes", "centers", "radii", "cells"}) {
    if (p.contains(key) && p.at(key).get<long long>() < 1) {
      throw DomainError(std::string("parameter '") + key + "' must be positive");
    }
  }
  if (p.contains("ratio")) {
    const double r = p.at("ratio").get<double>();
    if (!(r > 0.0 && r < 1.0)) throw DomainError("parameter 'ratio' must lie in (0,1)");
  }
  if (c.op == "conjugate" && f && f->dim() > 2) throw InputError("conjugation supports dimension 1 or 2");
}

json RunReport::to_json(bool include_wall_time) const {
  json j{{"config", config.to_json()}, {"results", results}, {"verdict", verdict}, {"version", version}};
  if (include_wall_time) j["wall_seconds"] = wall_seconds;
  return j;
}

RunReport run(const ExperimentConfig& input, const std::string& out_dir) {
  validate(input);
  const ExperimentConfig c = ExperimentConfig::from_json(input.to_json());
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.config = c;
  const json& p = c.params;
  json& res = rep.results;

  if (c.op == "suite") {
    const auto checks = run_suite(p.at("name").get<std::string>(), c.seed);
    json arr = json::array();
    int failed = 0;
    for (const auto& ch : checks) {
      arr.push_back({{"name", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
      if (!ch.pass) ++failed;
    }
    res = {{"checks", arr}, {"passed", static_cast<int>(checks.size()) - failed}, {"failed", failed}};
    rep.verdict = failed == 0 ? "PASS" : "FAIL";
  } else if (c.op == "conjugate") {
    GridFunction g;
    if (p.contains("grid")) {
      std::ifstream is(p.at("grid").get<std::string>());
      if (!is) throw InputError("cannot read grid '" + p.at("grid").get<std::string>() + "'");
      g = read_grid_csv(is);
    } else {
      const ConvexFunction f = parse_function_label(c.fn);
      const int points = param_or<int>(p, "points", f.dim() == 1 ? 601 : 65);
      g = sample_grid(f, Lattice::over(f.domain(), points));
    }
    g.validate();
    const Lattice slopes = slope_lattice(g, param_or<int>(p, "slopes", 0));
    const GridFunction conj = g.dim() == 1 ? conjugate_grid_1d(g, slopes) : conjugate_bruteforce(g, slopes);
    res = {{"dim", g.dim()}, {"points", g.size()}, {"slope_count", slopes.size()}};
    json lo = json::array(), hi = json::array();
    for (const auto& ax : slopes.axes()) {
      lo.push_back(ax.lo);
      hi.push_back(ax.hi);
    }
    res["slope_lo"] = lo;
    res["slope_hi"] = hi;
    if (g.dim() == 1) {
      const GridFunction brute = conjugate_bruteforce(g, slopes);
      double dev = 0.0;
      for (std::size_t i = 0; i < conj.size(); ++i) dev = std::max(dev, std::abs(conj.values[i] - brute.values[i]));
      res["bruteforce_max_deviation"] = dev;
    }
    res["biconjugate_deviation"] = biconjugate_check(g);
    std::string csv = c.outputs.contains("csv") ? c.outputs.at("csv").get<std::string>() : "";
    if (csv.empty() && !out_dir.empty()) csv = "conjugate.csv";
    if (!csv.empty()) {
      const auto path = resolve(csv, out_dir);
      auto os = open_out(path);
      write_grid_csv(os, conj);
      res["csv"] = csv;
    }
  } else {
    const ConvexFunction f = parse_function_label(c.fn);
    const int n = f.dim();
    if (c.op == "kappa") {
      KappaOptions o;
      o.schedule.eps0 = param_or<double>(p, "eps0", o.schedule.eps0);
      o.schedule.ratio = param_or<double>(p, "ratio", o.schedule.ratio);
      o.schedule.count = param_or<int>(p, "count", o.schedule.count);
      o.directions = param_or<int>(p, "dirs", 0);
      o.tail_window = param_or<int>(p, "tail", o.tail_window);
      const auto est = estimate_K(f, point_param(p, "at"), o);
      json per = json::array();
      for (const auto& [e, q] : est.per_eps) per.push_back({e, number_json(q)});
      res = {{"value", ext_json(est.value)},
             {"diverging", est.diverging},
             {"gradient_defined", est.gradient_defined},
             {"tail_window", est.tail_window},
             {"per_eps", per}};
    } else if (c.op == "drop") {
      const Vec center = point_param(p, "center");
      const double r = p.at("r").get<double>();
      const Lattice probe = probe_lattice(f, center, r, param_or<int>(p, "probes", 0));
      const auto cr = drop_sphere(f, center, r, probe);
      json contacts = json::array();
      bool post = true;
      for (const auto& x : cr.contacts) {
        contacts.push_back(vec_json(x));
        post = post && is_sphere_of_support(f, cr.sphere, x, probe, cr.tolerance);
      }
      res = {{"height", cr.height},
             {"contacts", contacts},
             {"multiple", cr.multiple},
             {"tolerance", cr.tolerance},
             {"post_check", post}};
      rep.verdict = post ? "PASS" : "FAIL";
    } else if (c.op == "xr") {
      const Vec at = p.contains("at") ? point_param(p, "at") : zeros(n);
      check_dim_match(f, at, "at");
      const double r = p.at("r").get<double>();
      const ConvexFunction v = shift_normalize(f, at);
      const double hw = param_or<double>(p, "halfwidth", r);
      const Vec origin = zeros(n);
      const Lattice centers = Lattice::over(Box::around(origin, hw).intersect(v.domain()),
                                            param_or<int>(p, "centers", n == 1 ? 129 : n == 2 ? 33 : 9));
      const Lattice probe = Lattice::over(Box::around(origin, hw + r).intersect(v.domain()),
                                          param_or<int>(p, "probes", n == 1 ? 513 : n == 2 ? 129 : 33));
      const auto pts = compute_Xr(v, r, centers, probe);
      bool has_origin = false;
      for (const auto& q : pts) has_origin = has_origin || q.x.norm() == 0.0;
      res = {{"r", r}, {"count", pts.size()}, {"contains_origin", has_origin}};
      if (c.outputs.contains("csv")) {
        const auto csv = c.outputs.at("csv").get<std::string>();
        auto os = open_out(resolve(csv, out_dir));
        static const char* axes[] = {"x", "y", "z"};
        for (int d = 0; d < n; ++d) os << axes[d] << ',';
        for (int d = 0; d < n; ++d) os << "center_" << axes[d] << ',';
        os << "height\n";
        char buf[32];
        auto put = [&](double value) {
          std::snprintf(buf, sizeof buf, "%.17g", value);
          os << buf;
        };
        for (const auto& q : pts) {
          for (int d = 0; d < n; ++d) { put(q.x(d)); os << ','; }
          for (int d = 0; d < n; ++d) { put(q.center(d)); os << ','; }
          put(q.height);
          os << '\n';
        }
        res["csv"] = csv;
      }
    } else if (c.op == "density") {
      DensityConfig dc;
      dc.eps0 = param_or<double>(p, "eps0", dc.eps0);
      dc.radii = param_or<int>(p, "radii", dc.radii);
      dc.cells = param_or<int>(p, "cells", dc.cells);
      const auto dr = verify_density_theorem(f, point_param(p, "at"), p.at("k").get<double>(), dc);
      res = {{"k0", ext_json(dr.k0)}, {"k", dr.k}, {"dim", dr.dim}, {"reason", dr.reason}};
      if (dr.verdict != Verdict::NotApplicable) {
        json th = density_json(dr.theorem);
        th["bound"] = dr.theorem_bound;
        th["pass"] = dr.theorem_pass;
        res["theorem"] = th;
        json lm{{"applicable", dr.lemma_applicable}, {"R", dr.R}, {"r", dr.r}, {"reason", dr.lemma_reason}};
        if (dr.lemma_applicable) {
          lm.update(density_json(dr.lemma));
          lm["bound"] = dr.lemma_bound;
          lm["pass"] = dr.lemma_pass;
        }
        res["lemma"] = lm;
      }
      rep.verdict = to_string(dr.verdict);
    } else if (c.op == "qconv") {
      const Vec at = point_param(p, "at");
      const double m = p.at("m").get<double>();
      const bool sub = param_or<bool>(p, "sub", false);
      QuadOptions o;
      if (p.contains("eps")) o.eps = p.at("eps").get<double>();
      const auto qc = sub ? check_subquadratic_convexity(f, at, m, o) : check_quadratic_convexity(f, at, m, o);
      res = {{"sense", sub ? "sub-quadratic" : "quadratic"},
             {"m", m},
             {"holds", qc.holds},
             {"eps_used", qc.eps_used},
             {"margin", number_json(qc.margin)}};
      if (qc.witness) {
        res["witness"] = {{"x0", vec_json(qc.witness->x0)},
                          {"subgradient", vec_json(qc.witness->subgradient)},
                          {"eps", qc.witness->eps},
                          {"m", qc.witness->m}};
      }
      rep.verdict = qc.holds ? "PASS" : "FAIL";
    } else if (c.op == "thm19") {
      const Vec at = point_param(p, "at");
      const double k = p.at("k").get<double>();
      auto dual_json = [](const DualReport& d) {
        return json{{"verdict", to_string(d.verdict)},
                    {"reason", d.reason},
                    {"k0", ext_json(d.k0)},
                    {"modulus", d.modulus},
                    {"eta0", d.eta0},
                    {"holds", d.dual_check.holds},
                    {"eps_conj", d.eps_conj},
                    {"margin", number_json(d.dual_check.margin)}};
      };
      const auto fw = theorem19_forward(f, at, k);
      const auto cv = theorem19_converse(f, at, k);
      res = {{"forward", dual_json(fw)}, {"converse", dual_json(cv)}};
      const bool any_fail = fw.verdict == Verdict::Fail || cv.verdict == Verdict::Fail;
      const bool any_pass = fw.verdict == Verdict::Pass || cv.verdict == Verdict::Pass;
      rep.verdict = any_fail ? "FAIL" : any_pass ? "PASS" : "N/A";
    } else if (c.op == "propA5") {
      const auto a5 = propA5_check(f, point_param(p, "at"), p.at("r").get<double>());
      res = {{"r_x0", a5.r_x0},
             {"r_y0", a5.r_y0},
             {"r_y0_grid", number_json(a5.r_y0_grid)},
             {"bound", a5.bound},
             {"reason", a5.reason}};
      rep.verdict = to_string(a5.verdict);
    }
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (c.outputs.contains("report")) {
    auto os = open_out(resolve(c.outputs.at("report").get<std::string>(), out_dir));
    os << rep.to_json().dump(2) << '\n';
  }
  return rep;
}

}  // namespace curvk
