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

// Acceptance runner: one PASS/FAIL line per criterion. With --criterion N only
// that criterion runs; the exit status is 0 iff every selected criterion passed.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specband/verify.hpp"

namespace fs = std::filesystem;
using namespace specband;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

// Two independent CLI runs of the full suite must write identical reports.
CriterionResult reproducibility(const std::string& cli, const fs::path& configs) {
  CriterionResult r{12, "Reproducible verify output", false, "", json::object()};
  const fs::path root = fs::temp_directory_path() / ("specband_accept_" + std::to_string(::getpid()));
  fs::remove_all(root);
  std::vector<std::string> reports;
  std::vector<int> codes;
  for (const char* run : {"a", "b"}) {
    const fs::path out = root / run;
    const std::string cmd =
        cli + " verify all --configs '" + configs.string() + "' --out '" + out.string() + "' >/dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    codes.push_back(WIFEXITED(st) ? WEXITSTATUS(st) : -1);
    reports.push_back(slurp(out / "verify_all.json"));
  }
  fs::remove_all(root);
  const bool ran = codes[0] == codes[1] && (codes[0] == 0 || codes[0] == 3) && !reports[0].empty();
  r.passed = ran && reports[0] == reports[1];
  r.summary = "exit codes " + std::to_string(codes[0]) + "/" + std::to_string(codes[1]) + ", verify_all.json " +
              (reports[0] == reports[1] ? "byte-identical" : "differs") + " (" +
              std::to_string(reports[0].size()) + " bytes)";
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"specband acceptance criteria"};
  int only = 0;
  std::string configs = SPECBAND_CONFIG_DIR;
  std::string cli = SPECBAND_CLI;
  app.add_option("--criterion", only, "Run a single criterion (1-12)")->check(CLI::Range(1, 12));
  app.add_option("--configs", configs, "Directory with the shipped configs");
  app.add_option("--cli", cli, "Path of the specband executable");
  CLI11_PARSE(app, argc, argv);

  std::vector<int> ids;
  if (only) ids.push_back(only);
  else for (int i = 1; i <= 12; ++i) ids.push_back(i);

  VerifyContext ctx(configs);
  bool all = true;
  for (int id : ids) {
    CriterionResult r;
    try {
      r = id == 12 ? reproducibility(cli, configs) : verify_criterion(id, ctx);
    } catch (const std::exception& e) {
      r = CriterionResult{id, "error", false, e.what(), json::object()};
    }
    std::printf("criterion %2d %s %s: %s\n", r.id, r.passed ? "PASS" : "FAIL", r.title.c_str(), r.summary.c_str());
    std::fflush(stdout);
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
