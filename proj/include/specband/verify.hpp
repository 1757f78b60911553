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

// Acceptance checks behind `specband verify <suite>`.

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "specband/experiment.hpp"
#include "specband/report.hpp"

namespace specband {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string summary;  // measured vs target, one line
  json detail;
};

/// Criterion ids of a suite: kernels, heat, densities, localization, sobolev, all.
/// Throws ValidationError for an unknown suite.
std::vector<int> suite_criteria(std::string_view suite);

/// Shared state for one verification session: the shipped configs, each
/// pipeline built at most once.
class VerifyContext {
 public:
  explicit VerifyContext(std::filesystem::path config_dir);

  const std::filesystem::path& config_dir() const { return dir_; }
  /// Shipped config names (file stems), sorted.
  const std::vector<std::string>& shipped() const { return names_; }
  Experiment& experiment(const std::string& name);
  /// Hash over every shipped config.
  std::string configs_hash() const { return hash_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> names_;
  std::map<std::string, std::unique_ptr<Experiment>> cache_;
  std::string hash_;
};

CriterionResult verify_criterion(int id, VerifyContext& ctx);

/// Runs the suite and returns the combined report (deterministic).
json verify_suite(std::string_view suite, VerifyContext& ctx, std::vector<CriterionResult>& results);

}  // namespace specband
