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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gatune/data.hpp"
#include "gatune/error.hpp"
#include "gatune/experiments.hpp"
#include "gatune/ga.hpp"
#include "gatune/gbt.hpp"
#include "gatune/report_io.hpp"
#include "gatune/validation.hpp"

namespace {

using namespace gatune;

struct DataArgs {
  std::string path;
  std::string delimiter = ";";
};

void add_data(CLI::App* cmd, DataArgs& d) {
  cmd->add_option("--data", d.path, "bank-marketing CSV")->required()->check(CLI::ExistingFile);
  cmd->add_option("--delimiter", d.delimiter, "field delimiter")->capture_default_str();
}

EncodedDataset load(const DataArgs& d) {
  if (d.delimiter.size() != 1) throw Error("delimiter must be a single character");
  return one_hot_encode(load_bank_csv(d.path, d.delimiter[0]));
}

struct GaArgs {
  std::string config;
  bool paper_scale = false;
  std::optional<double> F, C, lambda;
  std::optional<int> P, G;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 0;
};

void add_ga(CLI::App* cmd, GaArgs& a) {
  cmd->add_option("--config", a.config, "JSON file with GaConfig fields")->check(CLI::ExistingFile);
  cmd->add_flag("--paper-scale", a.paper_scale, "use the full published budgets");
  cmd->add_option("-F,--feature-fraction", a.F, "feature subset fraction");
  cmd->add_option("-P,--population", a.P, "population size");
  cmd->add_option("-C,--crossover", a.C, "crossover ratio");
  cmd->add_option("-G,--generations", a.G, "generation count");
  cmd->add_option("--lambda", a.lambda, "false-negative cost");
  cmd->add_option("--seed", a.seed, "root seed");
  cmd->add_option("--threads", a.threads, "worker threads, 0 for all cores");
}

GaConfig resolve(const GaArgs& a, GaConfig base) {
  if (!a.config.empty()) base = ga_config_from_json(read_file(a.config), base);
  base = (a.paper_scale ? Budget::paper() : Budget::desk()).apply(base);
  if (a.F) base.feature_fraction = *a.F;
  if (a.P) base.population = *a.P;
  if (a.C) base.crossover_ratio = *a.C;
  if (a.G) base.generations = *a.G;
  if (a.lambda) base.lambda_fn = *a.lambda;
  if (a.seed) base.seed = *a.seed;
  base.threads = a.threads;
  return base;
}

std::string join(const std::string& dir, const std::string& name) {
  return dir.empty() || dir == "." ? name : dir + "/" + name;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file_atomic(path, content);
    std::cerr << "wrote " << path << "\n";
  }
}

std::vector<int> parse_features(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw Error("bad feature index '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error("feature list is empty");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genetic tuning of cost-sensitive gradient boosted trees"};
  app.require_subcommand(1);

  DataArgs data_args;

  auto* encode_cmd = app.add_subcommand("encode", "one-hot encode the CSV and dump it");
  add_data(encode_cmd, data_args);
  std::string encode_out;
  encode_cmd->add_option("-o,--out", encode_out, "output file, '-' for stdout");

  auto* tune_cmd = app.add_subcommand("tune", "run the genetic search");
  add_data(tune_cmd, data_args);
  GaArgs tune_args;
  add_ga(tune_cmd, tune_args);
  std::string tune_id = "run";
  std::string tune_out;
  tune_cmd->add_option("--id", tune_id, "run identifier")->capture_default_str();
  tune_cmd->add_option("-o,--out", tune_out, "manifest path, '-' for stdout");

  auto* validate_cmd = app.add_subcommand("validate", "repeated stratified cross-validation");
  add_data(validate_cmd, data_args);
  std::string validate_id;
  std::string params_file;
  std::string feature_list;
  std::string manifest_file;
  CvOptions cv;
  cv.repeats = Budget::desk().repeats;
  bool validate_paper = false;
  std::string validate_out;
  validate_cmd->add_option("id", validate_id, "registered experiment A-J");
  validate_cmd->add_option("--params", params_file, "JSON HyperParams file")->check(CLI::ExistingFile);
  validate_cmd->add_option("--features", feature_list, "comma separated feature indices");
  validate_cmd->add_option("--manifest", manifest_file, "validate the best run of a tune manifest")
      ->check(CLI::ExistingFile);
  validate_cmd->add_option("--repeats", cv.repeats, "CV repeats")->capture_default_str();
  validate_cmd->add_option("-k,--folds", cv.k, "folds per repeat")->capture_default_str();
  validate_cmd->add_option("--seed", cv.seed, "root seed")->capture_default_str();
  validate_cmd->add_option("--threshold", cv.threshold, "decision threshold")->capture_default_str();
  validate_cmd->add_option("--threads", cv.threads, "worker threads, 0 for all cores");
  validate_cmd->add_flag("--paper-scale", validate_paper, "50 repeats");
  validate_cmd->add_option("-o,--out", validate_out, "output directory for rows, summary and curves");

  auto* sweep_cmd = app.add_subcommand("sweep", "cost or crossover sensitivity sweep");
  add_data(sweep_cmd, data_args);
  std::string sweep_kind;
  std::vector<double> sweep_values;
  GaArgs sweep_args;
  std::string sweep_out;
  sweep_cmd->add_option("kind", sweep_kind, "cost or crossover")
      ->required()
      ->check(CLI::IsMember({"cost", "crossover"}));
  sweep_cmd->add_option("--values", sweep_values, "grid values, default is the full grid")
      ->delimiter(',');
  add_ga(sweep_cmd, sweep_args);
  sweep_cmd->add_option("-o,--out", sweep_out, "output directory");

  auto* ablate_cmd = app.add_subcommand("ablate", "feature selection / tuning / cost ablation");
  add_data(ablate_cmd, data_args);
  GaArgs ablate_args;
  add_ga(ablate_cmd, ablate_args);
  std::string ablate_out;
  ablate_cmd->add_option("-o,--out", ablate_out, "output directory");

  auto* analyze_cmd = app.add_subcommand("analyze", "feature frequency and correlation report");
  std::vector<std::string> manifests;
  bool use_registry = false;
  std::size_t top_n = 10;
  std::string analyze_out;
  analyze_cmd->add_option("manifests", manifests, "tune manifests")->check(CLI::ExistingFile);
  analyze_cmd->add_flag("--registry", use_registry, "include the registered runs A-J");
  analyze_cmd->add_option("--top", top_n, "runs counted as best")->capture_default_str();
  analyze_cmd->add_option("-o,--out", analyze_out, "output file, '-' for stdout");

  auto* bench_cmd = app.add_subcommand("bench", "inference timing of a registered experiment");
  add_data(bench_cmd, data_args);
  std::string bench_id = "A";
  int bench_reps = 5;
  std::uint64_t bench_seed = 723;
  std::string model_out;
  bench_cmd->add_option("id", bench_id, "registered experiment A-J")->capture_default_str();
  bench_cmd->add_option("--reps", bench_reps, "timed passes, at least 3")->capture_default_str();
  bench_cmd->add_option("--seed", bench_seed, "training seed")->capture_default_str();
  bench_cmd->add_option("--save-model", model_out, "write the trained model");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*encode_cmd) {
      const auto data = load(data_args);
      std::ostringstream os;
      write_encoded(os, data, data_args.delimiter[0]);
      emit(encode_out, os.str());
      std::cerr << data.rows() << " rows, " << data.cols() << " columns, " << data.positives()
                << " positives, inverse class distribution "
                << class_distribution_inverse(data.labels()) << "\n";
    } else if (*tune_cmd) {
      const auto data = load(data_args);
      const auto cfg = resolve(tune_args, GaConfig{});
      const auto result = run_ga(cfg, data, [](int gen, const auto&, const std::vector<double>& fit) {
        double best = 0.0;
        for (double f : fit) best = std::max(best, f);
        std::cerr << "generation " << gen + 1 << " best " << best << "\n";
      });
      emit(tune_out, ga_manifest(tune_id, cfg, result, data.schema()));
    } else if (*validate_cmd) {
      const auto data = load(data_args);
      if (validate_paper) cv.repeats = Budget::paper().repeats;
      std::vector<int> features;
      HyperParams params;
      std::string id = validate_id;
      if (!validate_id.empty()) {
        const auto& e = find_experiment(validate_id);
        features = e.features;
        params = e.params;
      } else if (!manifest_file.empty()) {
        const auto text = read_file(manifest_file);
        const auto outcome = outcome_from_manifest(text);
        features = outcome.features;
        params = params_from_manifest(text);
        id = outcome.id;
      } else {
        if (feature_list.empty()) throw Error("give an experiment id, --manifest, or --features");
        features = parse_features(feature_list);
        if (!params_file.empty()) params = params_from_json(read_file(params_file));
        id = "custom";
      }
      const auto report = repeated_cv(data, features, params, cv);
      std::cout << "experiment " << id << ": " << report.model_count << " models ("
                << report.repeats << "x" << report.k << " CV)\n"
                << cv_summary_table(report);
      if (!validate_out.empty()) {
        write_file_atomic(join(validate_out, id + "_models.csv"), cv_rows(report));
        write_file_atomic(join(validate_out, id + "_summary.json"), cv_summary_json(id, report));
        if (!report.per_model.empty()) {
          const auto& first = report.per_model.front();
          write_file_atomic(join(validate_out, id + "_roc.csv"), roc_points(first.roc));
          write_file_atomic(join(validate_out, id + "_lift.csv"), lift_points(first.metrics.lift_points));
        }
        std::cerr << "wrote results to " << validate_out << "\n";
      }
    } else if (*sweep_cmd) {
      const auto data = load(data_args);
      const auto base = resolve(sweep_args, sensitivity_base_config());
      const bool cost = sweep_kind == "cost";
      if (sweep_values.empty()) sweep_values = cost ? default_cost_grid() : default_crossover_grid();
      const auto entries = cost ? sweep_cost(sweep_values, base, data)
                                : sweep_crossover(sweep_values, base, data);
      const std::string name = cost ? "lambda" : "crossover";
      if (!sweep_out.empty()) {
        for (const auto& e : entries) {
          std::ostringstream id;
          id << sweep_kind << "_" << e.value;
          write_file_atomic(join(sweep_out, id.str() + ".json"),
                            ga_manifest(id.str(), e.config, e.result, data.schema()));
        }
        write_file_atomic(join(sweep_out, sweep_kind + "_series.csv"), sweep_table(name, entries));
        std::cerr << "wrote results to " << sweep_out << "\n";
      } else {
        std::cout << sweep_table(name, entries);
      }
    } else if (*ablate_cmd) {
      const auto data = load(data_args);
      const auto base = resolve(ablate_args, ablation_base_config());
      const auto rows = run_ablation(data, base);
      std::cout << ablation_table(rows);
      if (!ablate_out.empty()) {
        for (const auto& r : rows) {
          if (r.search) {
            GaConfig cfg = base;
            cfg.lambda_fn = r.arm.lambda_fn;
            cfg.search_features = r.arm.feature_selection;
            cfg.search_params = r.arm.param_optimisation;
            write_file_atomic(join(ablate_out, r.arm.id + ".json"),
                              ga_manifest(r.arm.id, cfg, *r.search, data.schema()));
          }
        }
        write_file_atomic(join(ablate_out, "ablation.csv"), ablation_table(rows));
        std::cerr << "wrote results to " << ablate_out << "\n";
      }
    } else if (*analyze_cmd) {
      std::vector<RunOutcome> runs;
      if (use_registry) runs = registry_outcomes();
      for (const auto& m : manifests) runs.push_back(outcome_from_manifest(read_file(m)));
      const auto analysis = analyze_features(runs, FeatureSchema::bank(), top_n);
      emit(analyze_out, feature_table(analysis));
    } else if (*bench_cmd) {
      const auto data = load(data_args);
      const auto& e = find_experiment(bench_id);
      const auto projected = data.project(e.features);
      const auto model = train(projected, e.params, bench_seed);
      const auto timing = time_inference(model, projected, bench_reps);
      std::cout << "experiment " << bench_id << ": " << projected.rows() << " rows, "
                << model.trees.size() << " trees\n"
                << "inference seconds min " << timing.min << " median " << timing.median
                << " mean " << timing.mean << "\n";
      if (!model_out.empty()) {
        std::ostringstream os;
        save_model(os, model);
        write_file_atomic(model_out, os.str());
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
