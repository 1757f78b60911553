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

#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "specband/error.hpp"
#include "specband/experiment.hpp"
#include "specband/report.hpp"

namespace fs = std::filesystem;
using namespace specband;

namespace {

fs::path scratch(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("specband_test_" + std::to_string(::getpid()) + "_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

json small_config() {
  return json::parse(R"({
    "name": "small",
    "grid": {"dim": 1, "L": 16, "N": 128},
    "symbol": {"kind": "asymptotically_constant", "b": 1.0, "height": 1.0, "width": 1.5},
    "sqrt_omega_over_pi": 1.0,
    "weights": ["lebesgue", "nu"],
    "point_sets": [{"name": "grid", "kind": "uniform", "alpha": 0.75},
                   {"name": "random", "kind": "poisson", "rate": 1.2}],
    "radii": {"density": [1, 2, 4], "localization": [0, 1, 2, 4, 7]},
    "bernstein": {"trials": 10},
    "seed": 7
  })");
}

KernelMatrix small_kernel() {
  Experiment e(parse_config(small_config()));
  return e.kernel();
}

}  // namespace

TEST_CASE("binary kernel round trip") {
  const auto k = small_kernel();
  std::ostringstream os;
  write_kernel_binary(os, k);
  const std::string bytes = os.str();
  CHECK(bytes.size() == 16 + 8 * k.size() * k.size());
  CHECK(bytes.compare(0, 8, std::string("SPBKRN1\0", 8)) == 0);
  CHECK(static_cast<unsigned char>(bytes[8]) == 128);
  std::istringstream is(bytes);
  CHECK(read_kernel_binary(is) == k.values);
  std::istringstream bad(std::string("NOTAKERNEL123456"));
  CHECK_THROWS(read_kernel_binary(bad));
}

TEST_CASE("CSV writers") {
  const auto k = small_kernel();
  const std::string csv = render([&](std::ostream& os) { write_kernel_csv(os, k); });
  CHECK(csv.rfind("i,j,k_ij\n", 0) == 0);
  std::istringstream is(csv);
  std::string line;
  std::size_t rows = 0;
  std::getline(is, line);
  while (std::getline(is, line)) ++rows;
  CHECK(rows == k.size() * k.size());
  std::size_t i, j;
  char c1, c2;
  double v;
  std::istringstream first(csv.substr(9));
  first >> i >> c1 >> j >> c2 >> v;
  CHECK(v == k.values(0, 0));

  const auto d = k.diagonal();
  const std::string dc = render([&](std::ostream& os) { write_diagonal_csv(os, k.grid, d); });
  CHECK(dc.rfind("x,k(x,x)\n", 0) == 0);
  const std::string cc = render([&](std::ostream& os) { write_curve_csv(os, Curve{{1.0}, {0.5}}); });
  CHECK(cc == "r,value\n1,0.5\n");
  DensityCurve dcv{{1.0}, {0.25}, {0.75}, 0.25, 0.75};
  const std::string dd = render([&](std::ostream& os) { write_density_curve(os, dcv); });
  CHECK(dd.rfind("r,inf,sup\n", 0) == 0);
}

TEST_CASE("non-finite values serialize as null") {
  json j = ApproxIdentityReport{{1.0, 3.0}, {0.0, 0.1}, {std::nan("")}, 0.75, true};
  CHECK(j["observed_order"][0].is_null());
}

TEST_CASE("atomic writes") {
  const auto dir = scratch("atomic");
  const auto p = dir / "nested" / "file.txt";
  write_atomic(p, "first");
  write_atomic(p, "second");
  CHECK(slurp(p) == "second");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir / "nested")) ++entries;
  CHECK(entries == 1);
  fs::remove_all(dir);
}

TEST_CASE("hashing") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(hex64(fnv1a("a")) == "af63dc4c8601ec8c");
  const auto c1 = parse_config(small_config());
  const auto c2 = parse_config(small_config());
  CHECK(c1.hash == c2.hash);
  auto j = small_config();
  j["seed"] = 8;
  CHECK(parse_config(j).hash != c1.hash);
}

TEST_CASE("config validation") {
  auto bad_radius = small_config();
  bad_radius["radii"]["density"] = {1, 5};
  CHECK_THROWS_AS(parse_config(bad_radius), ValidationError);

  auto unknown = small_config();
  unknown["colour"] = "red";
  CHECK_THROWS_AS(parse_config(unknown), ValidationError);

  auto no_seed = small_config();
  no_seed.erase("seed");
  CHECK_THROWS_AS(parse_config(no_seed), ValidationError);

  auto both = small_config();
  both["omega"] = 1.0;
  CHECK_THROWS_AS(parse_config(both), ValidationError);

  auto bad_symbol = small_config();
  bad_symbol["symbol"] = {{"kind", "wavelet"}};
  CHECK_THROWS_AS(parse_config(bad_symbol), ValidationError);

  auto bad_grid = small_config();
  bad_grid["grid"]["N"] = -4;
  CHECK_THROWS_AS(parse_config(bad_grid), ValidationError);
}

TEST_CASE("runs are deterministic") {
  Experiment e1(parse_config(small_config()));
  Experiment e2(parse_config(small_config()));
  const auto o1 = run_experiment(e1);
  const auto o2 = run_experiment(e2);
  CHECK(o1.passed());
  CHECK(o1.files == o2.files);
  const auto& r = o1.report;
  CHECK(r.contains("config_hash"));
  CHECK(r.contains("seeds"));
  CHECK(r.contains("tolerances"));
  CHECK(r.contains("spectral_margin"));
  CHECK_FALSE(r.dump().find("timestamp") != std::string::npos);
  const auto& frame = r["checks"]["frame"]["grid"];
  for (const char* key : {"a", "b_upper", "riesz_min", "verdicts"}) {
    CAPTURE(key);
    CHECK(frame.contains(key));
  }
}

#ifdef SPECBAND_CLI
TEST_CASE("command line exit codes") {
  const auto dir = scratch("cli");
  const std::string cli = SPECBAND_CLI;
  auto run = [&](const std::string& args) {
    const int st = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  };
  auto cfg = small_config();
  std::ofstream(dir / "small.json") << cfg.dump(2);
  cfg["radii"]["density"] = {1, 5};
  std::ofstream(dir / "bad.json") << cfg.dump(2);
  cfg = small_config();
  cfg["max_size"] = 64;
  std::ofstream(dir / "capped.json") << cfg.dump(2);
  std::ofstream(dir / "broken.json") << "{ not json";

  const std::string small = (dir / "small.json").string();
  CHECK(run("run " + small + " --out " + (dir / "out").string()) == 0);
  CHECK(fs::exists(dir / "out" / "report.json"));
  CHECK(fs::exists(dir / "out" / "metadata.json"));
  CHECK(slurp(dir / "out" / "report.json").find("timestamp") == std::string::npos);
  CHECK(run("run " + (dir / "bad.json").string()) == 2);
  CHECK(run("run " + (dir / "broken.json").string()) == 2);
  CHECK(run("run " + (dir / "capped.json").string()) == 4);
  CHECK(run("frobnicate") == 2);
  CHECK(run("verify nonsense") == 2);

  CHECK(run("kernel " + small + " --dump " + (dir / "k.bin").string() + " --format binary") == 0);
  CHECK(fs::file_size(dir / "k.bin") == 16 + 8 * 128 * 128);
  CHECK(run("kernel " + small + " --dump " + (dir / "k.csv").string() + " --diagonal " +
            (dir / "d.csv").string()) == 0);
  CHECK(slurp(dir / "k.csv").rfind("i,j,k_ij\n", 0) == 0);

  const std::string pts = (dir / "out" / "pointset_grid.csv").string();
  CHECK(run("density " + small + " --points " + pts + " --weight nu --out " + (dir / "dens.csv").string()) == 0);
  CHECK(slurp(dir / "dens.csv").rfind("r,inf,sup\n", 0) == 0);

  CHECK(run("export-operator " + small + " --out " + (dir / "op.txt").string()) == 0);
  CHECK(slurp(dir / "op.txt").size() > 0);
  fs::remove_all(dir);
}
#endif
