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

// specband: run experiment configs, verify suites, dump kernels and operators.
//
// Exit codes: 0 ok, 2 validation error, 3 check failure, 4 resource cap.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "specband/error.hpp"
#include "specband/experiment.hpp"
#include "specband/verify.hpp"

#ifndef SPECBAND_CONFIG_DIR
#define SPECBAND_CONFIG_DIR "configs"
#endif

namespace fs = std::filesystem;
using namespace specband;

namespace {

enum Exit { kOk = 0, kValidation = 2, kCheck = 3, kResource = 4 };

int cmd_run(const fs::path& config, const std::string& out_override) {
  Experiment e(load_config(config));
  const fs::path dir = out_override.empty() ? e.config().output_dir : fs::path(out_override);
  const RunOutcome out = run_experiment(e);
  write_outcome(out, dir);
  for (const auto& w : e.spectral().warnings()) std::cerr << "warning: " << w << '\n';
  for (const auto& f : out.failures) std::cerr << "FAIL " << f << '\n';
  std::cout << e.config().name << ": " << (out.passed() ? "pass" : "fail") << " (" << out.files.size()
            << " files in " << dir.string() << ")\n";
  return out.passed() ? kOk : kCheck;
}

int cmd_verify(const std::string& suite, const fs::path& configs, const std::string& out) {
  suite_criteria(suite);
  VerifyContext ctx(configs);
  std::vector<CriterionResult> results;
  const json report = verify_suite(suite, ctx, results);
  bool all = true;
  for (const auto& r : results) {
    std::printf("criterion %2d %-4s %s: %s\n", r.id, r.passed ? "PASS" : "FAIL", r.title.c_str(), r.summary.c_str());
    all = all && r.passed;
  }
  if (!out.empty()) {
    const int code = all ? kOk : kCheck;
    write_atomic(fs::path(out) / ("verify_" + suite + ".json"), report.dump(2) + "\n");
    write_atomic(fs::path(out) / "metadata.json", metadata_json(code));
  }
  std::printf("suite %s: %s\n", suite.c_str(), all ? "pass" : "fail");
  return all ? kOk : kCheck;
}

int cmd_kernel(const fs::path& config, const std::string& dump, const std::string& format,
               const std::string& diagonal) {
  Experiment e(load_config(config));
  const auto& k = e.kernel();
  for (const auto& w : e.spectral().warnings()) std::cerr << "warning: " << w << '\n';
  if (!dump.empty()) {
    std::ostringstream os;
    if (format == "binary") write_kernel_binary(os, k);
    else write_kernel_csv(os, k);
    write_atomic(dump, os.str());
  }
  if (!diagonal.empty()) {
    write_atomic(diagonal, render([&](std::ostream& os) { write_diagonal_csv(os, k.grid, e.diagonal()); }));
  }
  std::cout << "n = " << k.size() << ", band = " << e.spectral().band_size()
            << ", spectral margin = " << e.spectral().spectral_margin() << '\n';
  return kOk;
}

int cmd_density(const fs::path& config, const fs::path& points, const std::string& weight, const std::string& out) {
  Experiment e(load_config(config));
  std::ifstream is(points);
  if (!is) throw ValidationError("cannot open point set " + points.string());
  const PointSet s = read_pointset(is, e.config().grid);
  WeightKind kind = WeightKind::lebesgue;
  if (weight == "nu") kind = WeightKind::nu;
  else if (weight == "kernel-diagonal") kind = WeightKind::kernel_diagonal;
  const auto curve = beurling_density(s, e.weight(kind), e.config().density_radii);
  const std::string csv = render([&](std::ostream& os) { write_density_curve(os, curve); });
  if (out.empty()) std::cout << csv;
  else write_atomic(out, csv);
  return kOk;
}

int cmd_export(const fs::path& config, const std::string& out) {
  Experiment e(load_config(config));
  const std::string text = render([&](std::ostream& os) { write_coordinate(os, e.op().matrix()); });
  if (out.empty()) std::cout << text;
  else write_atomic(out, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Band-limited spectral subspaces of elliptic operators on the torus"};
  app.require_subcommand(1);

  std::string config, out, suite, dump, format = "csv", diagonal, points, weight = "lebesgue";
  std::string configs = SPECBAND_CONFIG_DIR;

  auto* run = app.add_subcommand("run", "Run the pipeline of an experiment config");
  run->add_option("config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output directory (overrides output_dir)");

  auto* verify = app.add_subcommand("verify", "Run an acceptance suite");
  verify->add_option("suite", suite, "kernels | heat | densities | localization | sobolev | all")->required();
  verify->add_option("--configs", configs, "Directory with the shipped configs");
  verify->add_option("--out", out, "Write verify_<suite>.json and metadata.json here");

  auto* kernel = app.add_subcommand("kernel", "Compute the reproducing kernel of a config");
  kernel->add_option("config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  kernel->add_option("--dump", dump, "Kernel output file");
  kernel->add_option("--format", format, "csv | binary")->check(CLI::IsMember({"csv", "binary"}));
  kernel->add_option("--diagonal", diagonal, "Diagonal CSV output file");

  auto* density = app.add_subcommand("density", "Beurling density curve of a point-set file");
  density->add_option("config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  density->add_option("--points", points, "Point-set CSV")->required()->check(CLI::ExistingFile);
  density->add_option("--weight", weight, "lebesgue | nu | kernel-diagonal")
      ->check(CLI::IsMember({"lebesgue", "nu", "kernel-diagonal"}));
  density->add_option("--out", out, "Output CSV (stdout if omitted)");

  auto* exporter = app.add_subcommand("export-operator", "Write the discrete operator in coordinate format");
  exporter->add_option("config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  exporter->add_option("--out", out, "Output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*run) return cmd_run(config, out);
    if (*verify) return cmd_verify(suite, configs, out);
    if (*kernel) return cmd_kernel(config, dump, format, diagonal);
    if (*density) return cmd_density(config, points, weight, out);
    if (*exporter) return cmd_export(config, out);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const ResourceCapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return kResource;
  } catch (const CheckFailure& e) {
    std::cerr << "check failure: " << e.what() << '\n';
    return kCheck;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kCheck;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}
