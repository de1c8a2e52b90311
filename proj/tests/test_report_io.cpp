// Copyright 2026 The gatune Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "gatune/error.hpp"
#include "gatune/report_io.hpp"
#include "support/ga_checks.hpp"

using namespace gatune;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("gatune_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(GATUNE_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return status;
}

}  // namespace

TEST_CASE("config JSON round-trip and rejection") {
  GaConfig cfg;
  cfg.feature_fraction = 0.3;
  cfg.population = 40;
  cfg.seed = 18446744073709551557ull;
  cfg.search_params = false;
  cfg.fixed_params.gamma = 0.25;
  const auto back = ga_config_from_json(ga_config_to_json(cfg));
  CHECK(back.feature_fraction == 0.3);
  CHECK(back.population == 40);
  CHECK(back.seed == cfg.seed);
  CHECK_FALSE(back.search_params);
  CHECK(back.fixed_params == cfg.fixed_params);

  const auto partial = ga_config_from_json(R"({"generations": 7})");
  CHECK(partial.generations == 7);
  CHECK(partial.population == GaConfig{}.population);
  CHECK_THROWS_WITH_AS(ga_config_from_json(R"({"generation": 7})"), doctest::Contains("generation"),
                       Error);
  CHECK_THROWS_AS(ga_config_from_json(R"({"population": "many"})"), Error);
  CHECK_THROWS_AS(ga_config_from_json("{"), Error);
  const auto p = params_from_json(R"({"max_depth": 3, "gamma": 1.5})");
  CHECK(p.max_depth == 3);
  CHECK(p.gamma == 1.5);
}

TEST_CASE("manifest reruns bit-identically") {
  const auto data = testing::tiny_data();
  auto cfg = testing::tiny_config(21);
  cfg.generations = 3;
  const auto first = run_ga(cfg, data);
  const auto text = ga_manifest("t", cfg, first, data.schema());
  auto again_cfg = config_from_manifest(text);
  const auto second = run_ga(again_cfg, data);
  CHECK(second.best_chromosome == first.best_chromosome);
  CHECK(second.history == first.history);
  const auto outcome = outcome_from_manifest(text);
  CHECK(outcome.id == "t");
  CHECK(outcome.features == first.decoded.features);
  CHECK(outcome.gmean == first.best_fitness);
  CHECK(params_from_manifest(text) == first.decoded.params);
  CHECK(text.find(kCodeVersion) != std::string::npos);
}

TEST_CASE("atomic writes and tables") {
  const auto dir = scratch("io");
  const auto path = (dir / "sub" / "x.txt").string();
  write_file_atomic(path, "one");
  write_file_atomic(path, "two");
  CHECK(read_file(path) == "two");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  CHECK_THROWS_AS(read_file((dir / "missing").string()), Error);

  const auto data = testing::synthetic_bank(300, 2);
  HyperParams p;
  p.n_estimators = 10;
  CvOptions opt;
  opt.k = 3;
  const auto report = repeated_cv(data, std::vector<int>{0, 1, 8}, p, opt);
  const auto rows = cv_rows(report);
  CHECK(std::count(rows.begin(), rows.end(), '\n') == 4);
  CHECK(rows.rfind("repeat;fold;tp;fp;tn;fn;accuracy", 0) == 0);
  const auto summary = cv_summary_json("x", report);
  CHECK(summary.find("\"gmean\"") != std::string::npos);
  CHECK(roc_points(report.per_model[0].roc).rfind("fpr;tpr\n0;0\n", 0) == 0);
  CHECK(lift_points(report.per_model[0].metrics.lift_points).find("\n1;1\n") != std::string::npos);
}

TEST_CASE("command line") {
  const auto dir = scratch("cli");
  const auto csv = (dir / "bank.csv").string();
  write_file_atomic(csv, testing::synthetic_bank_csv(300, 5));
  const auto d = " --data " + csv;

  CHECK(run("encode" + d + " -o " + (dir / "enc.csv").string()) == 0);
  CHECK(std::filesystem::exists(dir / "enc.csv"));

  const auto manifest = (dir / "run.json").string();
  CHECK(run("tune" + d + " -F 0.1 -P 4 -G 2 -C 0.5 --lambda 6 --seed 3 --id r1 -o " + manifest) == 0);
  const auto outcome = outcome_from_manifest(read_file(manifest));
  CHECK(outcome.id == "r1");
  CHECK(outcome.features.size() == 7);

  CHECK(run("validate J" + d + " --repeats 1 -k 3 -o " + (dir / "cv").string()) == 0);
  CHECK(std::filesystem::exists(dir / "cv" / "J_summary.json"));
  CHECK(std::filesystem::exists(dir / "cv" / "J_models.csv"));
  CHECK(run("validate" + d + " --manifest " + manifest + " --repeats 1 -k 3") == 0);
  CHECK(run("validate" + d + " --features 0,1,8 --repeats 1 -k 3") == 0);

  CHECK(run("sweep cost" + d + " --values 1,6 -P 3 -G 2 -o " + (dir / "sweep").string()) == 0);
  CHECK(std::filesystem::exists(dir / "sweep" / "cost_series.csv"));
  CHECK(run("analyze --registry " + manifest + " -o " + (dir / "features.csv").string()) == 0);
  CHECK(run("bench J" + d + " --reps 3 --save-model " + (dir / "model.txt").string()) == 0);
  CHECK(std::filesystem::exists(dir / "model.txt"));

  const auto cfg = (dir / "cfg.json").string();
  write_file_atomic(cfg, R"({"population": 3, "generations": 2, "feature_fraction": 0.1})");
  CHECK(run("tune" + d + " --config " + cfg + " -o -") == 0);

  // Rejections exit nonzero.
  CHECK(run("validate K" + d) != 0);
  CHECK(run("tune" + d + " --lambda 0.5") != 0);
  CHECK(run("tune --data " + (dir / "none.csv").string()) != 0);
  write_file_atomic(cfg, R"({"populaton": 3})");
  CHECK(run("tune" + d + " --config " + cfg) != 0);
  CHECK(run("sweep diagonal" + d) != 0);
  CHECK(run("") != 0);
}
