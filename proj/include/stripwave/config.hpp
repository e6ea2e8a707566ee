#pragma once

// Run configuration: JSON schema with documented defaults, strict validation
// (unknown keys rejected), dotted-key overrides, and a stable hash that tags
// every emitted table.
//
// Schema (all keys optional unless noted):
//   medium:   frequency (Hz, default 3e8)
//             eps_rel, mu_rel ([re, im] relative to vacuum,
//                              default [1, -1e-5] each)
//   scenario: h, a, z0 (m, required), x0, y0 (m, default 0),
//             axis ("x" | "y" | "z", default "z"), p (dipole moment, 1.0)
//   solver:   m_max (default 3), rel_tol (1e-8), abs_tol (1e-13),
//             max_intervals (4000), ky_max (0 = automatic cutoff),
//             field_rel_tol (1e-6, spatial field quadrature)
//             contour: kx_max (0 = automatic), delta (-1 = automatic),
//                      samples_per_wavelength (8), guard (1e10)
//   outputs:  x, y: {min, max, count} grids
//               (x default -3..3 / 61; y default +-0.96 h / 25)
//             probes: [[x, y, z], ...] field probe points (default none)
//             window: [lo, hi] x-range for comparison statistics ([5, 20])
//             dir: output directory (default "out")

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "stripwave/common.hpp"
#include "stripwave/fields.hpp"
#include "stripwave/fullwave.hpp"
#include "stripwave/medium.hpp"
#include "stripwave/transform.hpp"

namespace stripwave::config {

using json = nlohmann::json;

struct GridSpec {
  double min = 0.0, max = 0.0;
  int count = 0;

  std::vector<double> values() const {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
      v[i] = count == 1 ? min : min + (max - min) * i / (count - 1.0);
    return v;
  }
};

struct RunConfig {
  Medium medium;
  StripGeometry geom;
  DipoleSource src;
  fullwave::SolverParams solver;
  transform::ContourParams contour;
  double field_rel_tol = 1e-6;
  GridSpec xgrid, ygrid;
  std::vector<fields::Probe> probes;
  std::array<double, 2> window{5.0, 20.0};
  std::string out_dir = "out";
  json echo;  // the fully resolved configuration this run uses
};

namespace detail {

[[noreturn]] inline void fail(const std::string& msg) {
  throw ConfigError("config: " + msg);
}

inline void check_keys(const json& j, const char* where,
                       std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(std::string(where) + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail("unknown key '" + key + "' in " + where);
  }
}

inline double num(const json& j, const char* where) {
  if (!j.is_number()) fail(std::string(where) + " must be a number");
  return j.get<double>();
}

inline double num_or(const json& j, const char* key, double dflt,
                     const char* where) {
  if (!j.contains(key)) return dflt;
  return num(j.at(key), (std::string(where) + "." + key).c_str());
}

inline int int_or(const json& j, const char* key, int dflt,
                  const char* where) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_number_integer())
    fail(std::string(where) + "." + key + " must be an integer");
  return v.get<int>();
}

inline cplx complex_pair(const json& j, const char* where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(std::string(where) + " must be a number or a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline std::string str_or(const json& j, const char* key, const char* dflt,
                          const char* where) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_string()) fail(std::string(where) + "." + key + " must be a string");
  return v.get<std::string>();
}

inline GridSpec grid(const json& j, const char* where) {
  check_keys(j, where, {"min", "max", "count"});
  GridSpec g;
  if (!j.contains("min") || !j.contains("max") || !j.contains("count"))
    fail(std::string(where) + " needs min, max and count");
  g.min = num(j.at("min"), where);
  g.max = num(j.at("max"), where);
  g.count = int_or(j, "count", 0, where);
  if (!std::isfinite(g.min) || !std::isfinite(g.max) || g.max < g.min)
    fail(std::string(where) + ": need finite min <= max");
  if (g.count < 1) fail(std::string(where) + ".count must be >= 1");
  if (g.count == 1 && g.max != g.min)
    fail(std::string(where) + ": count 1 requires min == max");
  return g;
}

}  // namespace detail

// Build a validated RunConfig from raw JSON; every default is resolved here
// and echoed back in RunConfig::echo.
inline RunConfig from_json(const json& root) {
  using detail::fail;
  detail::check_keys(root, "config",
                     {"medium", "scenario", "solver", "outputs"});
  RunConfig cfg;

  const json med = root.value("medium", json::object());
  detail::check_keys(med, "medium", {"frequency", "eps_rel", "mu_rel"});
  const double freq = detail::num_or(med, "frequency", 3.0e8, "medium");
  const cplx epsr = med.contains("eps_rel")
                        ? detail::complex_pair(med.at("eps_rel"), "medium.eps_rel")
                        : cplx{1.0, -1e-5};
  const cplx mur = med.contains("mu_rel")
                       ? detail::complex_pair(med.at("mu_rel"), "medium.mu_rel")
                       : cplx{1.0, -1e-5};
  cfg.medium = Medium::make(freq, EPS0 * epsr, MU0 * mur);

  if (!root.contains("scenario")) fail("scenario section is required");
  const json& sc = root.at("scenario");
  detail::check_keys(sc, "scenario", {"h", "a", "x0", "y0", "z0", "axis", "p"});
  for (const char* key : {"h", "a", "z0"})
    if (!sc.contains(key)) fail(std::string("scenario.") + key + " is required");
  cfg.geom.h = detail::num(sc.at("h"), "scenario.h");
  cfg.geom.a = detail::num(sc.at("a"), "scenario.a");
  cfg.src.x0 = detail::num_or(sc, "x0", 0.0, "scenario");
  cfg.src.y0 = detail::num_or(sc, "y0", 0.0, "scenario");
  cfg.src.z0 = detail::num(sc.at("z0"), "scenario.z0");
  cfg.src.p = detail::num_or(sc, "p", 1.0, "scenario");
  const std::string axis = detail::str_or(sc, "axis", "z", "scenario");
  if (axis == "x")
    cfg.src.axis = 0;
  else if (axis == "y")
    cfg.src.axis = 1;
  else if (axis == "z")
    cfg.src.axis = 2;
  else
    fail("scenario.axis must be \"x\", \"y\" or \"z\"");
  cfg.geom.validate();
  cfg.src.validate(cfg.geom);

  const json sol = root.value("solver", json::object());
  detail::check_keys(sol, "solver",
                     {"m_max", "rel_tol", "abs_tol", "max_intervals", "ky_max",
                      "field_rel_tol", "contour"});
  cfg.solver.m_max = detail::int_or(sol, "m_max", 3, "solver");
  cfg.solver.rel_tol = detail::num_or(sol, "rel_tol", 1e-8, "solver");
  cfg.solver.abs_tol = detail::num_or(sol, "abs_tol", 1e-13, "solver");
  cfg.solver.max_intervals = detail::int_or(sol, "max_intervals", 4000, "solver");
  cfg.solver.ky_max = detail::num_or(sol, "ky_max", 0.0, "solver");
  cfg.field_rel_tol = detail::num_or(sol, "field_rel_tol", 1e-6, "solver");
  if (!(cfg.field_rel_tol > 0.0)) fail("solver.field_rel_tol must be > 0");
  cfg.solver.validate();
  const json con = sol.value("contour", json::object());
  detail::check_keys(con, "solver.contour",
                     {"kx_max", "delta", "samples_per_wavelength", "guard"});
  cfg.contour.kx_max = detail::num_or(con, "kx_max", 0.0, "solver.contour");
  cfg.contour.delta = detail::num_or(con, "delta", -1.0, "solver.contour");
  cfg.contour.samples_per_wavelength =
      detail::int_or(con, "samples_per_wavelength", 8, "solver.contour");
  cfg.contour.guard = detail::num_or(con, "guard", 1e10, "solver.contour");
  cfg.contour.validate();

  const json out = root.value("outputs", json::object());
  detail::check_keys(out, "outputs", {"x", "y", "probes", "window", "dir"});
  cfg.xgrid = out.contains("x") ? detail::grid(out.at("x"), "outputs.x")
                                : GridSpec{-3.0, 3.0, 61};
  cfg.ygrid = out.contains("y")
                  ? detail::grid(out.at("y"), "outputs.y")
                  : GridSpec{-0.96 * cfg.geom.h, 0.96 * cfg.geom.h, 25};
  if (out.contains("probes")) {
    const json& pr = out.at("probes");
    if (!pr.is_array()) fail("outputs.probes must be an array of [x,y,z]");
    for (const json& p : pr) {
      if (!p.is_array() || p.size() != 3) fail("each probe must be [x, y, z]");
      cfg.probes.push_back({detail::num(p[0], "probe.x"),
                            detail::num(p[1], "probe.y"),
                            detail::num(p[2], "probe.z")});
    }
  }
  if (out.contains("window")) {
    const json& w = out.at("window");
    if (!w.is_array() || w.size() != 2) fail("outputs.window must be [lo, hi]");
    cfg.window = {detail::num(w[0], "window.lo"), detail::num(w[1], "window.hi")};
    if (!(cfg.window[0] < cfg.window[1])) fail("outputs.window needs lo < hi");
  }
  cfg.out_dir = detail::str_or(out, "dir", "out", "outputs");
  if (cfg.out_dir.empty()) fail("outputs.dir must not be empty");

  // canonical echo with every default resolved (nlohmann objects are
  // key-sorted, so the dump, and hence the config hash, is stable)
  cfg.echo = {
      {"medium",
       {{"frequency", freq},
        {"eps_rel", {epsr.real(), epsr.imag()}},
        {"mu_rel", {mur.real(), mur.imag()}}}},
      {"scenario",
       {{"h", cfg.geom.h},
        {"a", cfg.geom.a},
        {"x0", cfg.src.x0},
        {"y0", cfg.src.y0},
        {"z0", cfg.src.z0},
        {"axis", axis},
        {"p", cfg.src.p}}},
      {"solver",
       {{"m_max", cfg.solver.m_max},
        {"rel_tol", cfg.solver.rel_tol},
        {"abs_tol", cfg.solver.abs_tol},
        {"max_intervals", cfg.solver.max_intervals},
        {"ky_max", cfg.solver.ky_max},
        {"field_rel_tol", cfg.field_rel_tol},
        {"contour",
         {{"kx_max", cfg.contour.kx_max},
          {"delta", cfg.contour.delta},
          {"samples_per_wavelength", cfg.contour.samples_per_wavelength},
          {"guard", cfg.contour.guard}}}}},
      {"outputs",
       {{"x", {{"min", cfg.xgrid.min}, {"max", cfg.xgrid.max}, {"count", cfg.xgrid.count}}},
        {"y", {{"min", cfg.ygrid.min}, {"max", cfg.ygrid.max}, {"count", cfg.ygrid.count}}},
        {"window", {cfg.window[0], cfg.window[1]}},
        {"dir", cfg.out_dir}}},
  };
  json& probes = cfg.echo["outputs"]["probes"] = json::array();
  for (const auto& p : cfg.probes) probes.push_back({p.x, p.y, p.z});
  return cfg;
}

// Apply one --override assignment ("a.b.c=value") to raw JSON before
// validation. The value is parsed as JSON when possible and kept as a plain
// string otherwise, so axis=x and m_max=2 both do the expected thing.
inline void apply_override(json& root, const std::string& assignment) {
  const size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    detail::fail("override must look like key.path=value: " + assignment);
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::exception&) {
    value = raw;  // unquoted strings (axis=x) arrive as plain text
  }
  json* node = &root;
  size_t start = 0;
  while (true) {
    const size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) detail::fail("override has an empty key segment: " + path);
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    if (!node->is_object() && !node->is_null())
      detail::fail("override path crosses a non-object: " + path);
    start = dot + 1;
  }
}

inline RunConfig load(const std::string& path,
                      const std::vector<std::string>& overrides = {}) {
  std::ifstream in(path);
  if (!in) detail::fail("cannot open config file: " + path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    detail::fail("JSON parse error in " + path + ": " + e.what());
  }
  for (const std::string& o : overrides) apply_override(root, o);
  return from_json(root);
}

// FNV-1a hash of the canonical echo; stamped on every emitted table.
inline std::uint64_t config_hash(const json& echo) {
  const std::string s = echo.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string config_hash_hex(const json& echo) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(config_hash(echo)));
  return buf;
}

}  // namespace stripwave::config
