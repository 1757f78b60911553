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

#include "specband/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "specband/constcoef.hpp"
#include "specband/error.hpp"

namespace specband {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// Constant a = 1 on the 1D torus L = 32, N = 1024.
Experiment classical(double sqrt_omega_over_pi) {
  json j{{"name", "classical_reference"},
         {"grid", {{"dim", 1}, {"L", 32.0}, {"N", 1024}}},
         {"symbol", {{"kind", "constant"}, {"b", 1.0}}},
         {"sqrt_omega_over_pi", sqrt_omega_over_pi},
         {"seed", 1}};
  return Experiment(parse_config(j));
}

CriterionResult c1_constant_kernel(VerifyContext&) {
  CriterionResult r{1, "constant-symbol kernel oracle", false, "", json::object()};
  const auto t0 = std::chrono::steady_clock::now();
  Experiment e = classical(1.0);
  const auto& k = e.kernel();
  const auto& g = e.config().grid;
  const Ellipsoid ell{1, SymMatrix::scalar(1.0), e.config().omega};
  const std::array<double, 2> lengths{g.length(0), 0.0};
  const auto n = static_cast<std::int64_t>(g.size());
  std::vector<double> ref(static_cast<std::size_t>(n));
  for (std::int64_t d = 0; d < n; ++d) {
    const double u = static_cast<double>(wrap_offset(d, n)) * g.spacing(0);
    ref[static_cast<std::size_t>(d)] = periodic_pw_kernel(ell, lengths, {u, 0.0});
  }
  double max_diff = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      const auto d = static_cast<std::size_t>(((j - i) % n + n) % n);
      max_diff = std::max(max_diff, std::abs(k.values(i, j) - ref[d]));
    }
  }
  const long modes = periodic_mode_count(ell, lengths);
  const double diag_target = static_cast<double>(modes) / g.length(0);
  double diag_diff = 0.0;
  for (double v : e.diagonal()) diag_diff = std::max(diag_diff, std::abs(v - diag_target));
  const double gap = std::abs(33.0 / 32.0 - std::sqrt(e.config().omega) / kPi);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double tol = 1e-9;
  const bool fast = seconds < 30.0;
  r.passed = max_diff <= tol && modes == 33 && e.spectral().band_size() == 33 && diag_diff <= tol && fast;
  r.summary = fmt("max|k - k_per| = %.3e (tol %.0e), modes = %ld (target 33), max|k(x,x) - 33/32| = %.3e, "
                  "finite-size gap = %.4f, runtime %s 30 s",
                  max_diff, tol, modes, diag_diff, gap, fast ? "<" : ">=");
  r.detail = {{"max_kernel_difference", max_diff},
              {"mode_count", modes},
              {"band_size", e.spectral().band_size()},
              {"max_diagonal_difference", diag_diff},
              {"finite_size_gap", gap},
              {"runtime_under_limit", fast},
              {"spectral_margin", e.spectral().spectral_margin()},
              {"tolerances", {{"kernel", tol}, {"diagonal", tol}, {"runtime_seconds", 30.0}}}};
  return r;
}

CriterionResult c2_ellipsoid_volume(VerifyContext&) {
  CriterionResult r{2, "ellipsoid volume", false, "", json::object()};
  const double v2 = ellipsoid_volume({2, SymMatrix{1.0, 0.0, 4.0}, 4.0});
  const double v1 = ellipsoid_volume({1, SymMatrix::scalar(1.0), kPi * kPi});
  const double e2 = std::abs(v2 - 2.0 * kPi), e1 = std::abs(v1 - 2.0 * kPi);
  const double tol = 1e-12;
  r.passed = e2 <= tol && e1 <= tol;
  r.summary = fmt("d=2 |V - 2 pi| = %.3e, d=1 |V - 2 pi| = %.3e (tol %.0e)", e2, e1, tol);
  r.detail = {{"volume_d2", v2}, {"volume_d1", v1}, {"tolerances", {{"absolute", tol}}}};
  return r;
}

CriterionResult c3_bernstein(VerifyContext& ctx) {
  CriterionResult r{3, "Bernstein inequality on every shipped symbol", true, "", json::object()};
  double worst = 0.0;
  json per = json::object();
  for (const auto& name : ctx.shipped()) {
    Experiment& e = ctx.experiment(name);
    const auto rep = bernstein_check(e.op(), e.spectral(), 100, 4, e.config().bernstein_seed);
    per[name] = rep;
    for (double v : rep.max_ratio) worst = std::max(worst, v);
    r.passed = r.passed && rep.ok;
  }
  r.summary = fmt("max ||H^k f|| / (Omega^k ||f||) over k <= 4, 100 trials, %zu symbols = %.6f (limit 1 + 1e-8)",
                  ctx.shipped().size(), worst);
  r.detail = {{"configs", per}, {"max_ratio", worst}};
  return r;
}

CriterionResult c4_diagonal_bounds(VerifyContext& ctx) {
  CriterionResult r{4, "kernel diagonal bounds and heat constants", true, "", json::object()};
  json per = json::object();
  std::string parts;
  for (const std::string name : {"slowly_oscillating", "asymptotic_constant"}) {
    Experiment& e = ctx.experiment(name);
    const auto comp = compker_check(e.spectral());
    const auto dy = dyadic_lower_bound_check(e.spectral());
    const auto& d = e.diagonal();
    const double dmin = *std::min_element(d.begin(), d.end());
    bool levels = dy.levels.size() == 4;
    for (const auto& l : dy.levels) levels = levels && l.min_slack >= -dy.tolerance;
    const bool ok = dmin > 0.0 && comp.ok && dy.ok && dy.sufficient_range && levels;
    r.passed = r.passed && ok;
    per[name] = {{"min_diagonal", dmin},
                 {"compker", comp},
                 {"dyadic", dy},
                 {"spectral_margin", e.spectral().spectral_margin()},
                 {"ok", ok}};
    parts += fmt("%s: min k(x,x) = %.4f, compker max ratio = %.4f, dyadic %s; ", name.c_str(), dmin, comp.max_ratio,
                 dy.ok ? "holds" : "violated");
  }
  Experiment flat = classical(1.0);
  double lo = 1e300, hi = -1e300;
  json heat = json::array();
  for (double t : {0.1, 0.25, 0.5, 1.0}) {
    const auto hd = heat_diagonal(flat.spectral(), t);
    lo = std::min(lo, hd.c_emp);
    hi = std::max(hi, hd.C_emp);
    heat.push_back({{"t", t}, {"c_emp", hd.c_emp}, {"C_emp", hd.C_emp}});
  }
  const bool heat_ok = lo >= 0.25 && hi <= 0.32;
  r.passed = r.passed && heat_ok;
  per["heat_constant_symbol"] = {{"times", heat}, {"reference", 1.0 / std::sqrt(4.0 * kPi)}, {"ok", heat_ok}};
  r.summary = parts + fmt("t^(1/2) p_t(x,x) in [%.4f, %.4f] (target [0.25, 0.32])", lo, hi);
  r.detail = {{"configs", per}, {"tolerances", {{"heat_low", 0.25}, {"heat_high", 0.32}}}};
  return r;
}

CriterionResult c5_shannon_frame(VerifyContext&) {
  CriterionResult r{5, "Shannon grid frame bounds", false, "", json::object()};
  Experiment e = classical(15.5 / 16.0);
  const auto& spec = e.spectral();
  const PointSet s = generate_uniform(e.config().grid, {1.0});
  const auto fr = frame_bounds(s, spec);
  const auto rz = riesz_lower_bound(s, e.kernel());
  const double k00 = e.kernel().values(0, 0);
  const double tol = 1e-8;
  const double ea = std::abs(fr.a - 1.0), eb = std::abs(fr.b_upper - 1.0), el = std::abs(rz.lambda_min - k00);
  r.passed = spec.band_size() == 31 && s.size() == 32 && ea <= tol && eb <= tol && el <= tol;
  r.summary = fmt("band = %zu, #S = %zu, |A - 1| = %.3e, |B - 1| = %.3e, |lambda_min - k(0,0)| = %.3e "
                  "(lambda_min = %.3e, k(0,0) = %.6f; tol %.0e)",
                  spec.band_size(), s.size(), ea, eb, el, rz.lambda_min, k00, tol);
  r.detail = {{"frame", fr}, {"riesz", rz}, {"k00", k00}, {"tolerances", {{"absolute", tol}}}};
  return r;
}

CriterionResult c6_localization(VerifyContext& ctx) {
  CriterionResult r{6, "weak localization and HAP curves", true, "", json::object()};
  json per = json::object();
  std::size_t curves = 0;
  for (const auto& name : ctx.shipped()) {
    Experiment& e = ctx.experiment(name);
    const auto& radii = e.config().localization_radii;
    const auto wl = weak_localization_curve(e.kernel(), radii);
    bool ok = nonincreasing(wl);
    ++curves;
    json hap = json::object();
    std::vector<std::pair<std::string, PointSet>> sets;
    for (const auto& p : e.config().point_sets) sets.emplace_back(p.name, e.point_set(p));
    if (e.config().sweep) {
      for (const auto& ratio : e.config().sweep->ratios) {
        sets.emplace_back(fmt("sweep_%.3f", ratio),
                          generate_nu_targeted(*e.symbol(), {ratio * std::sqrt(e.config().omega) / kPi}));
      }
    }
    for (const auto& [sname, s] : sets) {
      const auto c = hap_check(e.kernel(), s, radii);
      hap[sname] = {{"curve", c}, {"nonincreasing", nonincreasing(c)}};
      ok = ok && nonincreasing(c);
      ++curves;
    }
    per[name] = {{"weak_localization", wl}, {"hap", hap}, {"nonincreasing", ok}};
    r.passed = r.passed && ok;
  }
  Experiment& so = ctx.experiment("slowly_oscillating");
  const std::vector<double> pair{1.0, 8.0};
  const auto tail = weak_localization_curve(so.kernel(), pair);
  const double ratio = tail.values[1] / tail.values[0];
  const bool monotone = r.passed;
  r.passed = monotone && ratio <= 0.2;
  r.summary = fmt("%zu curves, all nonincreasing: %s; slowly oscillating tail(8)/tail(1) = %.4f (limit 0.2)", curves,
                  monotone ? "yes" : "no", ratio);
  r.detail = {{"configs", per}, {"tail_ratio", ratio}, {"tail", tail}, {"tolerances", {{"tail_ratio", 0.2}}}};
  return r;
}

CriterionResult c7_limit_kernel(VerifyContext& ctx) {
  CriterionResult r{7, "limit-kernel convergence", false, "", json::object()};
  Experiment& e = ctx.experiment("asymptotic_constant");
  const auto& rec = std::get<AsymptoticallyConstantRecipe>(e.config().recipe);
  const std::vector<double> dist{4.0, 8.0, 16.0};
  const auto rep = limit_kernel_convergence(*e.symbol(), e.spectral(), e.kernel(), rec.b, *rec.center, rec.width, dist);
  const auto& v = rep.l2_differences;
  const double ratio = v.back() / v.front();
  r.passed = rep.strictly_decreasing && ratio <= 0.1;
  r.summary = fmt("L2 differences at d = 4, 8, 16: %.4e, %.4e, %.4e; strictly decreasing: %s; final/initial = %.4f "
                  "(limit 0.1)",
                  v[0], v[1], v[2], rep.strictly_decreasing ? "yes" : "no", ratio);
  r.detail = {{"limit_kernel", rep},
              {"final_over_initial", ratio},
              {"spectral_margin", e.spectral().spectral_margin()},
              {"tolerances", {{"final_over_initial", 0.1}}}};
  return r;
}

CriterionResult c8_averaged_trace(VerifyContext& ctx) {
  CriterionResult r{8, "averaged trace", false, "", json::object()};
  Experiment& e = ctx.experiment("asymptotic_constant");
  const std::vector<double> radius{density_radius_cap(e.config().grid)};
  const auto curve = averaged_trace(e.diagonal(), e.weight(WeightKind::nu), radius);
  const double target = e.critical_density();
  const double gm = std::abs(curve.d_minus - target) / target;
  const double gp = std::abs(curve.d_plus - target) / target;
  r.passed = gm <= 0.05 && gp <= 0.05;
  r.summary = fmt("tr_nu^- = %.5f, tr_nu^+ = %.5f at r = %.0f vs %.5f: relative gaps %.4f, %.4f (limit 0.05)",
                  curve.d_minus, curve.d_plus, radius[0], target, gm, gp);
  r.detail = {{"trace", curve},
              {"target", target},
              {"relative_gap_minus", gm},
              {"relative_gap_plus", gp},
              {"spectral_margin", e.spectral().spectral_margin()},
              {"tolerances", {{"relative", 0.05}}}};
  return r;
}

CriterionResult c9_phase_transition(VerifyContext& ctx) {
  CriterionResult r{9, "variable-bandwidth phase transition", false, "", json::object()};
  Experiment& e = ctx.experiment("vbw_phase_transition");
  const auto rows = run_sweep(e);
  const SweepRow* low = nullptr;
  const SweepRow* high = nullptr;
  json sj = json::array();
  for (const auto& row : rows) {
    if (row.ratio == 0.8) low = &row;
    if (row.ratio == 1.25) high = &row;
    sj.push_back({{"ratio", row.ratio}, {"rho", row.rho}, {"points", row.frame.points}, {"a", row.frame.a},
                  {"riesz_min", row.frame.riesz_min}, {"band_dimension", row.frame.band_dimension}});
  }
  if (!low || !high) throw ValidationError("vbw sweep must contain the ratios 0.8 and 1.25");
  const bool sampling = high->frame.a >= 100.0 * low->frame.a;
  const bool interp = low->frame.riesz_min >= 100.0 * high->frame.riesz_min;
  r.passed = sampling && interp;
  r.summary = fmt("A(1.25) = %.4e vs 100 A(0.8) = %.4e; lambda_min(0.8) = %.4e vs 100 lambda_min(1.25) = %.4e; "
                  "band = %zu",
                  high->frame.a, 100.0 * low->frame.a, low->frame.riesz_min, 100.0 * high->frame.riesz_min,
                  high->frame.band_dimension);
  r.detail = {{"sweep", sj},
              {"sampling_separation", sampling},
              {"interpolation_separation", interp},
              {"spectral_margin", e.spectral().spectral_margin()},
              {"tolerances", {{"factor", 100.0}}}};
  return r;
}

CriterionResult c10_conversion(VerifyContext& ctx) {
  CriterionResult r{10, "density/measure conversion agreement", false, "", json::object()};
  Experiment& e = ctx.experiment("vbw_phase_transition");
  std::size_t bad = 0;
  const auto rep = run_conversion_trials(e, &bad);
  std::size_t positive = 0;
  for (bool b : rep.sampling_predicate_d0) positive += b;
  r.passed = rep.ok && rep.d0_minus.size() == 100;
  r.summary = fmt("%zu seeded sets, %zu disagreements (%zu with D_0^- >= 1)", rep.d0_minus.size(), rep.disagreements,
                  positive);
  r.detail = {{"conversion", rep}, {"seeds", {{"base", e.config().conversion->seed}}}};
  return r;
}

CriterionResult c11_sobolev(VerifyContext&) {
  CriterionResult r{11, "Sobolev Gramian and Schur bound", false, "", json::object()};
  double max_diff = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double u = 0.1 * i;
    const double closed = std::sqrt(kPi / 2.0) * std::exp(-u);
    max_diff = std::max(max_diff, std::abs(closed - sobolev_kernel_gram_quadrature(1.0, 1, u)));
  }
  const GridSpec g(1, 32.0, 32);
  std::vector<std::size_t> all(32);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const PointSet s(g, all, "integer grid");
  const double row = schur_row_bound(s, 1.0);
  const double series = std::sqrt(kPi / 2.0) * (1.0 + 2.0 / (std::exp(1.0) - 1.0));
  const double schur_diff = std::abs(row - series);
  r.passed = max_diff <= 1e-8 && schur_diff <= 1e-6;
  r.summary = fmt("max |closed - quadrature| on [0, 20] = %.3e (tol 1e-8); |row sum - series| = %.3e (tol 1e-6)",
                  max_diff, schur_diff);
  r.detail = {{"max_gram_difference", max_diff},
              {"schur_row_sum", row},
              {"geometric_series", series},
              {"tolerances", {{"gram", 1e-8}, {"schur", 1e-6}}}};
  return r;
}

const char* suite_of(int id) {
  switch (id) {
    case 1: case 2: case 3: case 5: return "kernels";
    case 4: return "heat";
    case 8: case 9: case 10: return "densities";
    case 6: case 7: return "localization";
    case 11: return "sobolev";
    default: return "";
  }
}

}  // namespace

std::vector<int> suite_criteria(std::string_view suite) {
  if (suite == "kernels") return {1, 2, 3, 5};
  if (suite == "heat") return {4};
  if (suite == "densities") return {8, 9, 10};
  if (suite == "localization") return {6, 7};
  if (suite == "sobolev") return {11};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  throw ValidationError("unknown suite '" + std::string(suite) +
                        "' (expected kernels, heat, densities, localization, sobolev or all)");
}

VerifyContext::VerifyContext(std::filesystem::path config_dir) : dir_(std::move(config_dir)) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir_)) throw ValidationError("config directory " + dir_.string() + " not found");
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (entry.path().extension() == ".json") names_.push_back(entry.path().stem().string());
  }
  std::sort(names_.begin(), names_.end());
  std::uint64_t h = fnv1a("");
  for (const auto& n : names_) {
    std::ifstream is(dir_ / (n + ".json"), std::ios::binary);
    std::ostringstream buf;
    buf << is.rdbuf();
    h = fnv1a(n, h);
    h = fnv1a(buf.str(), h);
  }
  hash_ = hex64(h);
}

Experiment& VerifyContext::experiment(const std::string& name) {
  auto it = cache_.find(name);
  if (it != cache_.end()) return *it->second;
  if (std::find(names_.begin(), names_.end(), name) == names_.end()) {
    throw ValidationError("shipped config '" + name + "' missing from " + dir_.string());
  }
  auto e = std::make_unique<Experiment>(load_config(dir_ / (name + ".json")));
  return *cache_.emplace(name, std::move(e)).first->second;
}

CriterionResult verify_criterion(int id, VerifyContext& ctx) {
  switch (id) {
    case 1: return c1_constant_kernel(ctx);
    case 2: return c2_ellipsoid_volume(ctx);
    case 3: return c3_bernstein(ctx);
    case 4: return c4_diagonal_bounds(ctx);
    case 5: return c5_shannon_frame(ctx);
    case 6: return c6_localization(ctx);
    case 7: return c7_limit_kernel(ctx);
    case 8: return c8_averaged_trace(ctx);
    case 9: return c9_phase_transition(ctx);
    case 10: return c10_conversion(ctx);
    case 11: return c11_sobolev(ctx);
    default: break;
  }
  throw ValidationError("no verification check with id " + std::to_string(id));
}

json verify_suite(std::string_view suite, VerifyContext& ctx, std::vector<CriterionResult>& results) {
  json report;
  report["suite"] = std::string(suite);
  report["config_hash"] = ctx.configs_hash();
  json seeds = json::object();
  for (const auto& n : ctx.shipped()) seeds[n] = ctx.experiment(n).config().seed;
  report["seeds"] = seeds;
  json checks = json::array();
  bool all = true;
  for (int id : suite_criteria(suite)) {
    results.push_back(verify_criterion(id, ctx));
    const auto& r = results.back();
    all = all && r.passed;
    checks.push_back({{"criterion", r.id},
                      {"suite", suite_of(r.id)},
                      {"title", r.title},
                      {"passed", r.passed},
                      {"summary", r.summary},
                      {"detail", r.detail}});
  }
  report["checks"] = checks;
  report["status"] = all ? "pass" : "fail";
  return report;
}

}  // namespace specband
