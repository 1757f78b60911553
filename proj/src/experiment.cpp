// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The specband authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "specband/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "specband/constcoef.hpp"
#include "specband/error.hpp"

namespace specband {

namespace {

constexpr double kPi = std::numbers::pi;

const std::set<std::string> kChecks = {"frame",   "density",   "trace",           "conversion",   "localization",
                                       "hap",     "heat",      "compker",         "dyadic",       "bernstein",
                                       "approx_identity", "limit_kernel", "oscillation", "sweep"};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError("config " + where + ": " + what);
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> known) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) == known.end()) {
      fail(where, "unknown key '" + key + "'");
    }
  }
}

double number(const json& obj, const char* key, const std::string& where, std::optional<double> dflt = {}) {
  if (!obj.contains(key)) {
    if (dflt) return *dflt;
    fail(where, std::string("missing '") + key + "'");
  }
  if (!obj[key].is_number()) fail(where, std::string("'") + key + "' must be a number");
  const double v = obj[key].get<double>();
  if (!std::isfinite(v)) fail(where, std::string("'") + key + "' must be finite");
  return v;
}

std::uint64_t unsigned_number(const json& obj, const char* key, const std::string& where) {
  const json& v = obj[key];
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    fail(where, std::string("'") + key + "' must be a nonnegative integer");
  }
  return obj[key].get<std::uint64_t>();
}

std::vector<double> numbers(const json& obj, const char* key, const std::string& where) {
  std::vector<double> out;
  if (!obj.contains(key)) return out;
  if (!obj[key].is_array()) fail(where, std::string("'") + key + "' must be an array");
  for (const auto& v : obj[key]) {
    if (!v.is_number()) fail(where, std::string("'") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

SymMatrix matrix(const json& v, int dim, const std::string& where) {
  if (v.is_number()) return SymMatrix::scalar(v.get<double>());
  if (dim == 2 && v.is_array() && v.size() == 2 && v[0].is_array() && v[1].is_array() && v[0].size() == 2 &&
      v[1].size() == 2) {
    const double xy = v[0][1].get<double>();
    if (xy != v[1][0].get<double>()) fail(where, "matrix b must be symmetric");
    return {v[0][0].get<double>(), xy, v[1][1].get<double>()};
  }
  fail(where, "b must be a number or (d = 2) a 2x2 array");
}

json matrix_json(const SymMatrix& m, int dim) {
  if (dim == 1) return m.xx;
  return json::array({json::array({m.xx, m.xy}), json::array({m.xy, m.yy})});
}

GridSpec parse_grid(const json& g, json& eff) {
  reject_unknown(g, "grid", {"dim", "L", "N"});
  const int dim = static_cast<int>(number(g, "dim", "grid"));
  if (dim != 1 && dim != 2) fail("grid", "dim must be 1 or 2");
  std::array<double, 2> lengths{0.0, 0.0};
  std::array<std::int64_t, 2> points{1, 1};
  for (int axis = 0; axis < dim; ++axis) {
    const json& l = g.at("L");
    const json& n = g.at("N");
    lengths[axis] = l.is_array() ? l.at(axis).get<double>() : l.get<double>();
    points[axis] = n.is_array() ? n.at(axis).get<std::int64_t>() : n.get<std::int64_t>();
  }
  if (dim == 1) {
    lengths[1] = 0.0;
    eff = {{"dim", 1}, {"L", lengths[0]}, {"N", points[0]}};
    return GridSpec(1, lengths[0], points[0]);
  }
  eff = {{"dim", 2}, {"L", {lengths[0], lengths[1]}}, {"N", {points[0], points[1]}}};
  return GridSpec(2, lengths, points);
}

}  // namespace

bool ExperimentConfig::wants(const std::string& check) const {
  return std::find(checks.begin(), checks.end(), check) != checks.end();
}

ExperimentConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  reject_unknown(j, "root",
                 {"name", "grid", "symbol", "theta", "omega", "sqrt_omega_over_pi", "weights", "point_sets", "radii",
                  "checks", "bernstein", "heat", "approx_identity", "limit_kernel", "oscillation", "sweep",
                  "conversion", "output_dir", "seed", "max_size"});
  ExperimentConfig c;
  json eff;
  c.name = j.value("name", std::string("experiment"));
  eff["name"] = c.name;
  if (!j.contains("grid")) fail("root", "missing 'grid'");
  c.grid = parse_grid(j["grid"], eff["grid"]);
  const int dim = c.grid.dim();
  const double L = c.grid.min_length();

  if (j.contains("seed")) c.seed = unsigned_number(j, "seed", "root");
  const bool have_seed = j.contains("seed");
  eff["seed"] = c.seed;

  // symbol
  if (!j.contains("symbol")) fail("root", "missing 'symbol'");
  const json& s = j["symbol"];
  if (!s.is_object() || !s.contains("kind") || !s["kind"].is_string()) fail("symbol", "missing 'kind'");
  c.symbol_kind = s["kind"].get<std::string>();
  json& se = eff["symbol"];
  se["kind"] = c.symbol_kind;
  if (c.symbol_kind == "constant") {
    reject_unknown(s, "symbol", {"kind", "b"});
    const SymMatrix b = matrix(s.at("b"), dim, "symbol");
    c.recipe = ConstantRecipe{b};
    se["b"] = matrix_json(b, dim);
  } else if (c.symbol_kind == "asymptotically_constant") {
    reject_unknown(s, "symbol", {"kind", "b", "height", "width", "center"});
    AsymptoticallyConstantRecipe r;
    r.b = matrix(s.contains("b") ? s["b"] : json(1.0), dim, "symbol");
    r.height = number(s, "height", "symbol");
    r.width = number(s, "width", "symbol");
    if (!(r.width > 0.0)) fail("symbol", "width must be positive");
    Point center{0.5 * c.grid.length(0), 0.5 * c.grid.length(1)};
    if (s.contains("center")) {
      const auto v = numbers(s, "center", "symbol");
      if (static_cast<int>(v.size()) != dim) fail("symbol", "center needs dim coordinates");
      center = {v[0], dim == 2 ? v[1] : 0.0};
    }
    r.center = center;
    c.recipe = r;
    se["b"] = matrix_json(r.b, dim);
    se["height"] = r.height;
    se["width"] = r.width;
    se["center"] = dim == 1 ? json::array({center[0]}) : json::array({center[0], center[1]});
  } else if (c.symbol_kind == "slowly_oscillating") {
    reject_unknown(s, "symbol", {"kind", "base", "amplitude", "frequency", "exponent"});
    SlowlyOscillatingRecipe r;
    r.base = number(s, "base", "symbol", r.base);
    r.amplitude = number(s, "amplitude", "symbol", r.amplitude);
    r.frequency = number(s, "frequency", "symbol", r.frequency);
    r.exponent = number(s, "exponent", "symbol", r.exponent);
    c.recipe = r;
    se["base"] = r.base;
    se["amplitude"] = r.amplitude;
    se["frequency"] = r.frequency;
    se["exponent"] = r.exponent;
  } else if (c.symbol_kind == "variable_bandwidth") {
    reject_unknown(s, "symbol", {"kind", "low", "high", "cycles"});
    if (dim != 1) fail("symbol", "variable_bandwidth requires dim = 1");
    const double low = number(s, "low", "symbol");
    const double high = number(s, "high", "symbol");
    const int cycles = static_cast<int>(number(s, "cycles", "symbol", 1.0));
    if (!(low > 0.0) || !(high > 0.0)) fail("symbol", "low and high must be positive");
    if (cycles < 1) fail("symbol", "cycles must be at least 1");
    c.recipe = smooth_bandwidth_profile(low, high, c.grid.length(0), cycles);
    se["low"] = low;
    se["high"] = high;
    se["cycles"] = cycles;
  } else {
    fail("symbol", "unknown kind '" + c.symbol_kind + "'");
  }

  c.theta = number(j, "theta", "root", 0.5);
  if (!(c.theta > 0.0)) fail("root", "theta must be positive");
  eff["theta"] = c.theta;

  if (j.contains("omega") == j.contains("sqrt_omega_over_pi")) {
    fail("root", "give exactly one of 'omega' and 'sqrt_omega_over_pi'");
  }
  if (j.contains("omega")) {
    c.omega = number(j, "omega", "root");
  } else {
    const double v = number(j, "sqrt_omega_over_pi", "root");
    c.omega = (kPi * v) * (kPi * v);
  }
  if (!(c.omega > 0.0)) fail("root", "Omega must be positive");
  eff["omega"] = c.omega;

  // weights
  std::vector<std::string> weight_names{"lebesgue", "nu"};
  if (j.contains("weights")) weight_names = j["weights"].get<std::vector<std::string>>();
  for (const auto& w : weight_names) {
    if (w == "lebesgue") c.weights.push_back(WeightKind::lebesgue);
    else if (w == "nu") c.weights.push_back(WeightKind::nu);
    else if (w == "kernel-diagonal") c.weights.push_back(WeightKind::kernel_diagonal);
    else fail("weights", "unknown weight '" + w + "'");
  }
  eff["weights"] = weight_names;

  // point sets
  eff["point_sets"] = json::array();
  if (j.contains("point_sets")) {
    if (!j["point_sets"].is_array()) fail("point_sets", "must be an array");
    std::set<std::string> names;
    std::size_t idx = 0;
    for (const auto& p : j["point_sets"]) {
      const std::string where = "point_sets[" + std::to_string(idx) + "]";
      reject_unknown(p, where, {"name", "kind", "alpha", "jitter", "rate", "rho", "seed", "path"});
      PointSetSpec ps;
      ps.kind = p.value("kind", std::string());
      ps.name = p.value("name", ps.kind + std::to_string(idx));
      if (!names.insert(ps.name).second) fail(where, "duplicate name '" + ps.name + "'");
      json pe{{"name", ps.name}, {"kind", ps.kind}};
      const bool random = ps.kind == "jittered" || ps.kind == "poisson";
      if (random) {
        if (p.contains("seed")) ps.seed = unsigned_number(p, "seed", where);
        else if (have_seed) ps.seed = c.seed + 1 + idx;
        else fail(where, "random generator needs 'seed' (or a global seed)");
        pe["seed"] = ps.seed;
      }
      if (ps.kind == "uniform" || ps.kind == "jittered") {
        ps.alpha = number(p, "alpha", where);
        pe["alpha"] = ps.alpha;
        if (ps.kind == "jittered") {
          ps.jitter = number(p, "jitter", where);
          pe["jitter"] = ps.jitter;
        }
      } else if (ps.kind == "poisson") {
        ps.rate = number(p, "rate", where);
        pe["rate"] = ps.rate;
      } else if (ps.kind == "nu_targeted") {
        ps.rho = number(p, "rho", where);
        pe["rho"] = ps.rho;
      } else if (ps.kind == "file") {
        if (!p.contains("path")) fail(where, "missing 'path'");
        ps.path = p["path"].get<std::string>();
        if (ps.path.is_relative() && !base_dir.empty()) ps.path = base_dir / ps.path;
        pe["path"] = p["path"];
      } else {
        fail(where, "unknown kind '" + ps.kind + "'");
      }
      c.point_sets.push_back(ps);
      eff["point_sets"].push_back(pe);
      ++idx;
    }
  }

  // radii
  const double h_max = std::max(c.grid.spacing(0), dim == 2 ? c.grid.spacing(1) : 0.0);
  if (j.contains("radii")) {
    reject_unknown(j["radii"], "radii", {"density", "localization"});
    c.density_radii = numbers(j["radii"], "density", "radii");
    c.localization_radii = numbers(j["radii"], "localization", "radii");
  }
  if (c.density_radii.empty()) c.density_radii = {L / 16, L / 8, L / 4};
  if (c.localization_radii.empty()) c.localization_radii = {1.0, 2.0, 4.0, 8.0};
  for (double r : c.density_radii) {
    if (!(r > 0.0) || r > density_radius_cap(c.grid)) {
      std::ostringstream os;
      os << "density radius " << r << " outside (0, L/4 = " << density_radius_cap(c.grid) << "]";
      fail("radii", os.str());
    }
  }
  for (double r : c.localization_radii) {
    if (!(r >= 0.0) || r > 0.5 * L - h_max + 1e-12) {
      std::ostringstream os;
      os << "localization radius " << r << " outside [0, L/2 - h = " << 0.5 * L - h_max << "]";
      fail("radii", os.str());
    }
  }
  eff["radii"] = {{"density", c.density_radii}, {"localization", c.localization_radii}};

  // checks
  c.checks = {"frame", "density", "trace", "localization", "hap", "compker", "dyadic", "bernstein"};
  if (j.contains("checks")) c.checks = j["checks"].get<std::vector<std::string>>();
  for (const auto& ch : c.checks) {
    if (!kChecks.count(ch)) fail("checks", "unknown check '" + ch + "'");
  }
  eff["checks"] = c.checks;

  if (j.contains("bernstein")) {
    const auto& b = j["bernstein"];
    reject_unknown(b, "bernstein", {"trials", "k_max", "seed"});
    c.bernstein_trials = static_cast<int>(number(b, "trials", "bernstein", 100));
    c.bernstein_k_max = static_cast<int>(number(b, "k_max", "bernstein", 4));
    c.bernstein_seed = b.contains("seed") ? unsigned_number(b, "seed", "bernstein") : c.seed;
  } else {
    c.bernstein_seed = c.seed;
  }
  if (c.bernstein_trials < 1 || c.bernstein_k_max < 1) fail("bernstein", "trials and k_max must be positive");
  eff["bernstein"] = {{"trials", c.bernstein_trials}, {"k_max", c.bernstein_k_max}, {"seed", c.bernstein_seed}};

  c.heat_times = {0.1, 0.25, 0.5, 1.0};
  if (j.contains("heat")) {
    reject_unknown(j["heat"], "heat", {"times"});
    c.heat_times = numbers(j["heat"], "times", "heat");
  }
  for (double t : c.heat_times) {
    if (!(t > 0.0)) fail("heat", "times must be positive");
  }
  eff["heat"] = {{"times", c.heat_times}};

  c.approx_widths = {1, 3, 9};
  if (j.contains("approx_identity")) {
    reject_unknown(j["approx_identity"], "approx_identity", {"widths_in_nodes"});
    c.approx_widths = j["approx_identity"].at("widths_in_nodes").get<std::vector<int>>();
  }
  for (int w : c.approx_widths) {
    if (w < 1 || w % 2 == 0) fail("approx_identity", "widths_in_nodes must be odd and positive");
  }
  eff["approx_identity"] = {{"widths_in_nodes", c.approx_widths}};

  if (j.contains("limit_kernel")) {
    reject_unknown(j["limit_kernel"], "limit_kernel", {"distances"});
    c.limit_distances = numbers(j["limit_kernel"], "distances", "limit_kernel");
  }
  if (c.wants("limit_kernel")) {
    if (c.symbol_kind != "asymptotically_constant") fail("limit_kernel", "needs an asymptotically_constant symbol");
    if (c.limit_distances.empty()) fail("limit_kernel", "missing 'distances'");
  }
  eff["limit_kernel"] = {{"distances", c.limit_distances}};

  if (j.contains("oscillation")) {
    reject_unknown(j["oscillation"], "oscillation", {"annuli"});
    c.oscillation_annuli = static_cast<int>(number(j["oscillation"], "annuli", "oscillation", 4));
  }
  if (c.oscillation_annuli < 1) fail("oscillation", "annuli must be positive");
  eff["oscillation"] = {{"annuli", c.oscillation_annuli}};

  if (j.contains("sweep")) {
    reject_unknown(j["sweep"], "sweep", {"ratios"});
    if (dim != 1) fail("sweep", "the nu-targeted sweep requires dim = 1");
    SweepSpec sw{numbers(j["sweep"], "ratios", "sweep")};
    if (sw.ratios.empty()) fail("sweep", "missing 'ratios'");
    for (double r : sw.ratios) {
      if (!(r > 0.0)) fail("sweep", "ratios must be positive");
    }
    c.sweep = sw;
    eff["sweep"] = {{"ratios", sw.ratios}};
  } else if (c.wants("sweep")) {
    fail("sweep", "check 'sweep' needs a 'sweep' section");
  }

  if (j.contains("conversion")) {
    const auto& cv = j["conversion"];
    reject_unknown(cv, "conversion", {"trials", "ratio_range", "seed"});
    ConversionSpec spec;
    spec.trials = static_cast<int>(number(cv, "trials", "conversion", 100));
    if (cv.contains("ratio_range")) {
      const auto rr = numbers(cv, "ratio_range", "conversion");
      if (rr.size() != 2 || !(rr[0] > 0.0) || !(rr[1] >= rr[0])) fail("conversion", "bad ratio_range");
      spec.ratio_lo = rr[0];
      spec.ratio_hi = rr[1];
    }
    if (cv.contains("seed")) spec.seed = unsigned_number(cv, "seed", "conversion");
    else if (have_seed) spec.seed = c.seed;
    else fail("conversion", "needs 'seed' (or a global seed)");
    if (spec.trials < 1) fail("conversion", "trials must be positive");
    c.conversion = spec;
    eff["conversion"] = {{"trials", spec.trials}, {"ratio_range", {spec.ratio_lo, spec.ratio_hi}}, {"seed", spec.seed}};
  } else if (c.wants("conversion")) {
    fail("conversion", "check 'conversion' needs a 'conversion' section");
  }

  c.max_size = static_cast<std::size_t>(number(j, "max_size", "root", 4096));
  eff["max_size"] = c.max_size;
  c.output_dir = j.value("output_dir", "out/" + c.name);
  eff["output_dir"] = c.output_dir.string();
  if (c.output_dir.is_relative() && !base_dir.empty()) c.output_dir = base_dir / c.output_dir;

  c.effective = eff;
  c.hash = hex64(fnv1a(eff.dump()));
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw ValidationError("cannot open config " + file.string());
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& ex) {
    throw ValidationError("config " + file.string() + " is not valid JSON: " + ex.what());
  }
  try {
    return parse_config(j, file.parent_path());
  } catch (const json::exception& ex) {
    throw ValidationError("config " + file.string() + ": " + ex.what());
  }
}

Experiment::Experiment(ExperimentConfig config) : config_(std::move(config)) {}

const std::shared_ptr<const SymbolField>& Experiment::symbol() {
  if (!symbol_) symbol_ = std::make_shared<const SymbolField>(make_symbol(config_.grid, config_.recipe, config_.theta));
  return symbol_;
}

const DiscreteOperator& Experiment::op() {
  if (!op_) op_.emplace(discretize(*symbol()));
  return *op_;
}

const SpectralData& Experiment::spectral() {
  if (!spectral_) {
    SpectralOptions opts;
    opts.max_size = config_.max_size;
    spectral_.emplace(eigendecompose(op(), config_.omega, opts));
  }
  return *spectral_;
}

const KernelMatrix& Experiment::kernel() {
  if (!kernel_) kernel_.emplace(reproducing_kernel(spectral()));
  return *kernel_;
}

const std::vector<double>& Experiment::diagonal() {
  if (!diagonal_) diagonal_ = kernel().diagonal();
  return *diagonal_;
}

WeightField Experiment::weight(WeightKind kind) {
  switch (kind) {
    case WeightKind::lebesgue: return lebesgue_weight(config_.grid);
    case WeightKind::nu: return nu_weight(*symbol());
    case WeightKind::kernel_diagonal: return kernel_diagonal_weight(config_.grid, diagonal());
    case WeightKind::custom: break;
  }
  throw ValidationError("custom weights cannot be requested from a config");
}

PointSet Experiment::point_set(const PointSetSpec& p) {
  const auto& g = config_.grid;
  PointSet s = [&]() -> PointSet {
    if (p.kind == "uniform") return generate_uniform(g, {p.alpha});
    if (p.kind == "jittered") return generate_jittered(g, {p.alpha, p.jitter}, p.seed);
    if (p.kind == "poisson") return generate_poisson(g, {p.rate}, p.seed);
    if (p.kind == "nu_targeted") return generate_nu_targeted(*symbol(), {p.rho});
    std::ifstream is(p.path);
    if (!is) throw ValidationError("cannot open point set " + p.path.string());
    return read_pointset(is, g);
  }();
  return s;
}

double Experiment::critical_density() const {
  const Ellipsoid e{config_.grid.dim(), SymMatrix::scalar(1.0), config_.omega};
  return ellipsoid_volume(e) / std::pow(2.0 * kPi, config_.grid.dim());
}

std::vector<SweepRow> run_sweep(Experiment& e) {
  if (!e.config().sweep) throw ValidationError("config has no sweep section");
  const double rho_crit = std::sqrt(e.config().omega) / kPi;
  std::vector<SweepRow> rows;
  for (double ratio : e.config().sweep->ratios) {
    const PointSet s = generate_nu_targeted(*e.symbol(), {ratio * rho_crit});
    rows.push_back({ratio, ratio * rho_crit, frame_bounds(s, e.spectral())});
  }
  return rows;
}

ConversionReport run_conversion_trials(Experiment& e, std::size_t* sets_with_disagreement) {
  if (!e.config().conversion) throw ValidationError("config has no conversion section");
  const auto& spec = *e.config().conversion;
  const auto nu = e.weight(WeightKind::nu);
  const double rate0 = std::sqrt(e.config().omega) / kPi;
  const std::vector<double> radii{density_radius_cap(e.config().grid)};
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> ratio(spec.ratio_lo, spec.ratio_hi);
  ConversionReport all;
  all.radii = radii;
  std::size_t bad_sets = 0;
  for (int t = 0; t < spec.trials; ++t) {
    const std::uint64_t seed = spec.seed + 1 + static_cast<std::uint64_t>(t);
    const PointSet s = generate_poisson(e.config().grid, {ratio(rng) * rate0}, seed);
    const auto rep = density_conversion_check(s, nu, e.diagonal(), radii);
    all.d0_minus.push_back(rep.d0_minus[0]);
    all.d_mu_minus.push_back(rep.d_mu_minus[0]);
    all.trace_mu_minus.push_back(rep.trace_mu_minus[0]);
    all.sampling_predicate_d0.push_back(rep.sampling_predicate_d0[0]);
    all.sampling_predicate_mu.push_back(rep.sampling_predicate_mu[0]);
    all.disagreements += rep.disagreements;
    if (rep.disagreements) ++bad_sets;
  }
  all.ok = all.disagreements == 0;
  if (sets_with_disagreement) *sets_with_disagreement = bad_sets;
  return all;
}

namespace {

std::string weight_tag(WeightKind k) { return to_string(k); }

std::string csv_of(const DensityCurve& c) {
  return render([&](std::ostream& os) { write_density_curve(os, c); });
}

}  // namespace

RunOutcome run_experiment(Experiment& e) {
  const auto& c = e.config();
  RunOutcome out;
  json& r = out.report;
  r["config_hash"] = c.hash;
  r["config"] = c.effective;

  json seeds{{"global", c.seed}, {"bernstein", c.bernstein_seed}};
  json ps_seeds = json::object();
  for (const auto& p : c.point_sets) ps_seeds[p.name] = p.seed;
  seeds["point_sets"] = ps_seeds;
  if (c.conversion) seeds["conversion"] = c.conversion->seed;
  r["seeds"] = seeds;

  const auto& spec = e.spectral();
  r["spectral"] = {{"n", spec.size()},
                   {"omega", spec.omega()},
                   {"band_size", spec.band_size()},
                   {"spectral_margin", spec.spectral_margin()},
                   {"max_eigenvalue", spec.max_eigenvalue()},
                   {"warnings", spec.warnings()}};
  r["spectral_margin"] = spec.spectral_margin();
  json tol = json::object();
  json checks = json::object();
  json assertions = json::array();
  auto assert_that = [&](const std::string& name, bool ok) {
    assertions.push_back({{"name", name}, {"passed", ok}});
    if (!ok) out.failures.push_back(name);
  };

  const auto& diag = e.diagonal();
  out.files["kernel_diagonal.csv"] = render([&](std::ostream& os) { write_diagonal_csv(os, c.grid, diag); });
  {
    const double dmin = *std::min_element(diag.begin(), diag.end());
    const double dmax = *std::max_element(diag.begin(), diag.end());
    checks["kernel_diagonal"] = {{"min", dmin}, {"max", dmax}, {"critical_density", e.critical_density()}};
  }

  // Point sets are generated once; downstream checks reuse them.
  std::vector<PointSet> sets;
  for (const auto& p : c.point_sets) {
    sets.push_back(e.point_set(p));
    out.files["pointset_" + p.name + ".csv"] = render([&](std::ostream& os) { write_pointset(os, sets.back()); });
  }

  if (c.wants("frame")) {
    json fr = json::object();
    const auto kdiag = kernel_diagonal_weight(c.grid, diag);
    const std::vector<double> cap{density_radius_cap(c.grid)};
    const double slack = 0.1;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const auto& name = c.point_sets[i].name;
      if (sets[i].empty()) {
        fr[name] = {{"skipped", "empty point set"}};
        continue;
      }
      const auto rep = frame_bounds(sets[i], spec);
      json jr = rep;
      const auto d0 = beurling_density(sets[i], kdiag, cap);
      jr["d0_minus"] = d0.d_minus;
      jr["d0_plus"] = d0.d_plus;
      jr["separation_unit_ball"] = separation_report(sets[i], 1.0);
      fr[name] = jr;
      assert_that("frame." + name + ".bounds_ordered", rep.a >= -1e-10 * rep.b_upper && rep.a <= rep.b_upper);
      assert_that("frame." + name + ".gram_psd", rep.riesz_min >= -1e-10);
      if (rep.stable_sampling && rep.a >= 1e-3 * rep.b_upper) {
        assert_that("frame." + name + ".sampling_density", d0.d_minus >= 1.0 - slack);
      }
      if (rep.interpolating && rep.riesz_min >= 1e-3 * *std::max_element(diag.begin(), diag.end())) {
        assert_that("frame." + name + ".interpolation_density", d0.d_plus <= 1.0 + slack);
      }
    }
    checks["frame"] = fr;
    tol["frame"] = {{"a_rel", FrameReport{}.tol_a_rel},
                    {"riesz_rel", FrameReport{}.tol_r_rel},
                    {"density_slack", slack}};
  }

  if (c.wants("density")) {
    json dj = json::object();
    for (std::size_t i = 0; i < sets.size(); ++i) {
      json per = json::object();
      for (WeightKind k : c.weights) {
        const auto curve = beurling_density(sets[i], e.weight(k), c.density_radii);
        per[weight_tag(k)] = curve;
        out.files["density_" + c.point_sets[i].name + "_" + weight_tag(k) + ".csv"] = csv_of(curve);
      }
      dj[c.point_sets[i].name] = per;
    }
    checks["density"] = dj;
  }

  if (c.wants("trace")) {
    json tj = json::object();
    const double target = e.critical_density();
    for (WeightKind k : c.weights) {
      const auto curve = averaged_trace(diag, e.weight(k), c.density_radii);
      json jc = curve;
      jc["target"] = target;
      jc["relative_gap_minus"] = std::abs(curve.d_minus - target) / target;
      jc["relative_gap_plus"] = std::abs(curve.d_plus - target) / target;
      tj[weight_tag(k)] = jc;
      out.files["trace_" + weight_tag(k) + ".csv"] = csv_of(curve);
    }
    checks["trace"] = tj;
  }

  if (c.wants("localization")) {
    const auto wl = weak_localization_curve(e.kernel(), c.localization_radii);
    json jw = wl;
    jw["nonincreasing"] = nonincreasing(wl);
    checks["localization"] = jw;
    assert_that("localization.nonincreasing", nonincreasing(wl));
    out.files["wl_curve.csv"] = render([&](std::ostream& os) { write_curve_csv(os, wl); });
  }

  if (c.wants("hap")) {
    json hj = json::object();
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const auto& name = c.point_sets[i].name;
      const auto curve = hap_check(e.kernel(), sets[i], c.localization_radii);
      json jc = curve;
      jc["nonincreasing"] = nonincreasing(curve);
      hj[name] = jc;
      assert_that("hap." + name + ".nonincreasing", nonincreasing(curve));
      out.files["hap_" + name + ".csv"] = render([&](std::ostream& os) { write_curve_csv(os, curve); });
    }
    checks["hap"] = hj;
  }

  if (c.wants("heat")) {
    json hj = json::array();
    for (double t : c.heat_times) {
      const auto hd = heat_diagonal(spec, t);
      hj.push_back({{"t", t}, {"c_emp", hd.c_emp}, {"C_emp", hd.C_emp}});
    }
    checks["heat"] = {{"times", hj}, {"reference", std::pow(4.0 * kPi, -0.5 * c.grid.dim())}};
  }

  if (c.wants("compker")) {
    const auto rep = compker_check(spec);
    checks["compker"] = rep;
    assert_that("compker.pointwise", rep.ok);
  }

  if (c.wants("dyadic")) {
    const auto rep = dyadic_lower_bound_check(spec);
    checks["dyadic"] = rep;
    tol["dyadic"] = rep.tolerance;
    if (rep.sufficient_range) assert_that("dyadic.pointwise", rep.ok);
  }

  if (c.wants("bernstein")) {
    const auto rep = bernstein_check(e.op(), spec, c.bernstein_trials, c.bernstein_k_max, c.bernstein_seed);
    checks["bernstein"] = rep;
    tol["bernstein"] = rep.tolerance;
    assert_that("bernstein.inequality", rep.ok);
  }

  if (c.wants("approx_identity")) {
    std::vector<double> widths;
    for (int w : c.approx_widths) widths.push_back(w * c.grid.spacing(0));
    if (c.grid.dim() == 2 && c.grid.spacing(0) != c.grid.spacing(1)) {
      throw ValidationError("approx_identity needs equal spacing on both axes");
    }
    const auto rep = approx_identity_check(spec, e.kernel(), widths);
    checks["approx_identity"] = rep;
    tol["approx_identity"] = rep.min_order;
    assert_that("approx_identity.order", rep.ok);
  }

  if (c.wants("limit_kernel")) {
    const auto& rec = std::get<AsymptoticallyConstantRecipe>(c.recipe);
    const auto rep = limit_kernel_convergence(*e.symbol(), spec, e.kernel(), rec.b, *rec.center, rec.width,
                                              c.limit_distances);
    checks["limit_kernel"] = rep;
    tol["limit_kernel"] = rep.slack;
    assert_that("limit_kernel.nonincreasing", rep.nonincreasing);
    std::ostringstream os;
    os << std::setprecision(17) << "distance,l2_difference,diagonal_difference\n";
    for (std::size_t i = 0; i < rep.distances.size(); ++i) {
      os << rep.distances[i] << ',' << rep.l2_differences[i] << ',' << rep.diagonal_differences[i] << '\n';
    }
    out.files["limit_kernel.csv"] = os.str();
  }

  if (c.wants("oscillation")) checks["oscillation"] = oscillation_report(*e.symbol(), c.oscillation_annuli);

  if (c.wants("sweep")) {
    const auto rows = run_sweep(e);
    json sj = json::array();
    std::ostringstream os;
    os << std::setprecision(17) << "ratio,rho,points,a,lambda_min\n";
    for (const auto& row : rows) {
      json jr = row.frame;
      jr["ratio"] = row.ratio;
      jr["rho"] = row.rho;
      sj.push_back(jr);
      os << row.ratio << ',' << row.rho << ',' << row.frame.points << ',' << row.frame.a << ','
         << row.frame.riesz_min << '\n';
    }
    checks["sweep"] = sj;
    out.files["sweep.csv"] = os.str();
  }

  if (c.wants("conversion")) {
    std::size_t bad = 0;
    const auto rep = run_conversion_trials(e, &bad);
    json jc = rep;
    jc["sets_with_disagreement"] = bad;
    checks["conversion"] = jc;
    tol["conversion"] = rep.tolerance;
    assert_that("conversion.agreement", rep.ok);
  }

  r["tolerances"] = tol;
  r["checks"] = checks;
  r["assertions"] = assertions;
  r["status"] = out.passed() ? "pass" : "fail";
  out.files["report.json"] = r.dump(2) + "\n";
  return out;
}

std::string metadata_json(int exit_code) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ts;
  ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  json m{{"tool", "specband"}, {"timestamp", ts.str()}, {"exit_code", exit_code}};
  return m.dump(2) + "\n";
}

void write_outcome(const RunOutcome& out, const std::filesystem::path& dir) {
  for (const auto& [name, content] : out.files) write_atomic(dir / name, content);
  write_atomic(dir / "metadata.json", metadata_json(out.passed() ? 0 : 3));
}

}  // namespace specband
