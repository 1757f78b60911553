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

#pragma once

// JSON experiment configs and the pipeline runner behind `specband run`.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "specband/analysis.hpp"
#include "specband/geometry.hpp"
#include "specband/op.hpp"
#include "specband/report.hpp"
#include "specband/spectral.hpp"
#include "specband/symbol.hpp"

namespace specband {

struct PointSetSpec {
  std::string name;
  std::string kind;  // uniform | jittered | poisson | nu_targeted | file
  double alpha = 1.0;
  double jitter = 0.0;
  double rate = 1.0;
  double rho = 1.0;
  std::uint64_t seed = 0;
  std::filesystem::path path;
};

/// nu-targeted sets at rho = ratio * sqrt(Omega) / pi.
struct SweepSpec {
  std::vector<double> ratios;
};

/// Random Poisson sets with rate = ratio * sqrt(Omega) / pi, ratio uniform in
/// [ratio_lo, ratio_hi]; set t uses seed + 1 + t.
struct ConversionSpec {
  int trials = 100;
  double ratio_lo = 0.6;
  double ratio_hi = 1.6;
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  std::string name;
  GridSpec grid;
  std::string symbol_kind;
  SymbolRecipe recipe;
  double theta = 0.5;
  double omega = 0.0;
  std::vector<WeightKind> weights;
  std::vector<PointSetSpec> point_sets;
  std::vector<double> density_radii;
  std::vector<double> localization_radii;
  std::vector<std::string> checks;
  int bernstein_trials = 100;
  int bernstein_k_max = 4;
  std::uint64_t bernstein_seed = 0;
  std::vector<double> heat_times;
  std::vector<int> approx_widths;  // odd node counts
  std::vector<double> limit_distances;
  int oscillation_annuli = 4;
  std::optional<SweepSpec> sweep;
  std::optional<ConversionSpec> conversion;
  std::filesystem::path output_dir;
  std::uint64_t seed = 0;
  std::size_t max_size = 4096;

  /// The config with every default filled in; hashed for reports.
  json effective;
  std::string hash;

  bool wants(const std::string& check) const;
};

/// Parses and validates; relative paths resolve against `base_dir`. Throws ValidationError.
ExperimentConfig parse_config(const json& j, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& file);

/// Lazily built pipeline stages for one config.
class Experiment {
 public:
  explicit Experiment(ExperimentConfig config);

  const ExperimentConfig& config() const { return config_; }
  const std::shared_ptr<const SymbolField>& symbol();
  const DiscreteOperator& op();
  const SpectralData& spectral();
  const KernelMatrix& kernel();
  const std::vector<double>& diagonal();
  WeightField weight(WeightKind kind);
  PointSet point_set(const PointSetSpec& spec);
  /// Critical nu-density |B_1| Omega^{d/2} / (2 pi)^d.
  double critical_density() const;

 private:
  ExperimentConfig config_;
  std::shared_ptr<const SymbolField> symbol_;
  std::optional<DiscreteOperator> op_;
  std::optional<SpectralData> spectral_;
  std::optional<KernelMatrix> kernel_;
  std::optional<std::vector<double>> diagonal_;
};

struct SweepRow {
  double ratio = 0.0;
  double rho = 0.0;
  FrameReport frame;
};

std::vector<SweepRow> run_sweep(Experiment& e);
ConversionReport run_conversion_trials(Experiment& e, std::size_t* sets_with_disagreement = nullptr);

struct RunOutcome {
  json report;
  std::map<std::string, std::string> files;  // file name -> content
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

RunOutcome run_experiment(Experiment& e);

/// Writes every file of the outcome plus metadata.json (timestamp) into `dir`.
void write_outcome(const RunOutcome& out, const std::filesystem::path& dir);

/// metadata.json content: tool name, UTC timestamp, exit code.
std::string metadata_json(int exit_code);

}  // namespace specband
