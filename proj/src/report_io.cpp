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

#include "gatune/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gatune/error.hpp"

namespace gatune {
namespace {

using nlohmann::json;

json params_json(const HyperParams& p) {
  return {{"learning_rate", p.learning_rate},       {"n_estimators", p.n_estimators},
          {"max_depth", p.max_depth},               {"min_child_weight", p.min_child_weight},
          {"gamma", p.gamma},                       {"subsample", p.subsample},
          {"colsample_bytree", p.colsample_bytree}, {"reg_lambda", p.reg_lambda},
          {"scale_pos_weight", p.scale_pos_weight}};
}

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed ") + what + ": " + e.what());
  }
}

void reject_unknown(const json& j, const std::set<std::string>& known, const char* what) {
  if (!j.is_object()) throw Error(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw Error(std::string("unknown key '") + key + "' in " + what);
  }
}

template <typename T>
void take(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(std::string("bad value for '") + key + "': " + e.what());
  }
}

HyperParams params_from(const json& j, HyperParams p) {
  reject_unknown(j,
                 {"learning_rate", "n_estimators", "max_depth", "min_child_weight", "gamma",
                  "subsample", "colsample_bytree", "reg_lambda", "scale_pos_weight"},
                 "parameters");
  take(j, "learning_rate", p.learning_rate);
  take(j, "n_estimators", p.n_estimators);
  take(j, "max_depth", p.max_depth);
  take(j, "min_child_weight", p.min_child_weight);
  take(j, "gamma", p.gamma);
  take(j, "subsample", p.subsample);
  take(j, "colsample_bytree", p.colsample_bytree);
  take(j, "reg_lambda", p.reg_lambda);
  take(j, "scale_pos_weight", p.scale_pos_weight);
  return p;
}

json config_json(const GaConfig& c) {
  return {{"feature_fraction", c.feature_fraction},
          {"population", c.population},
          {"crossover_ratio", c.crossover_ratio},
          {"generations", c.generations},
          {"lambda_fn", c.lambda_fn},
          {"seed", c.seed},
          {"fitness_split", c.fitness_split},
          {"threshold", c.threshold},
          {"search_params", c.search_params},
          {"search_features", c.search_features},
          {"fixed_params", params_json(c.fixed_params)}};
}

GaConfig config_from(const json& j, GaConfig c) {
  reject_unknown(j,
                 {"feature_fraction", "population", "crossover_ratio", "generations", "lambda_fn",
                  "seed", "fitness_split", "threshold", "threads", "search_params",
                  "search_features", "fixed_params"},
                 "GA configuration");
  take(j, "feature_fraction", c.feature_fraction);
  take(j, "population", c.population);
  take(j, "crossover_ratio", c.crossover_ratio);
  take(j, "generations", c.generations);
  take(j, "lambda_fn", c.lambda_fn);
  take(j, "seed", c.seed);
  take(j, "fitness_split", c.fitness_split);
  take(j, "threshold", c.threshold);
  take(j, "threads", c.threads);
  take(j, "search_params", c.search_params);
  take(j, "search_features", c.search_features);
  if (j.contains("fixed_params")) c.fixed_params = params_from(j.at("fixed_params"), c.fixed_params);
  return c;
}

json aggregate_json(const Aggregate& a) {
  return {{"min", a.min}, {"avg", a.avg}, {"max", a.max}, {"sd", a.sd}};
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

GaConfig ga_config_from_json(const std::string& text, const GaConfig& base) {
  return config_from(parse(text, "GA configuration"), base);
}

HyperParams params_from_json(const std::string& text, const HyperParams& base) {
  return params_from(parse(text, "parameters"), base);
}

std::string ga_config_to_json(const GaConfig& cfg) { return config_json(cfg).dump(2) + "\n"; }

std::string ga_manifest(const std::string& id, const GaConfig& cfg, const GaResult& result,
                        const FeatureSchema& schema) {
  json features = json::array();
  for (int f : result.decoded.features) {
    const auto pos = schema.position_of(f);
    features.push_back({{"index", f}, {"name", pos ? schema[*pos].name : std::string()}});
  }
  json m = {{"id", id},
            {"code_version", kCodeVersion},
            {"config", config_json(cfg)},
            {"seed", cfg.seed},
            {"best_fitness", result.best_fitness},
            {"history", result.history},
            {"elapsed_seconds", result.elapsed_seconds},
            {"evaluations", result.evaluations},
            {"hyper_genes", result.best_chromosome.hyper_genes},
            {"feature_genes", result.best_chromosome.feature_genes},
            {"params", params_json(result.decoded.params)},
            {"features", features}};
  return m.dump(2) + "\n";
}

RunOutcome outcome_from_manifest(const std::string& text) {
  const json m = parse(text, "manifest");
  RunOutcome o;
  try {
    o.id = m.at("id").get<std::string>();
    o.gmean = m.at("best_fitness").get<double>();
    for (const auto& f : m.at("features")) o.features.push_back(f.at("index").get<int>());
  } catch (const json::exception& e) {
    throw Error(std::string("manifest is missing fields: ") + e.what());
  }
  return o;
}

GaConfig config_from_manifest(const std::string& text) {
  const json m = parse(text, "manifest");
  if (!m.contains("config")) throw Error("manifest has no config section");
  return config_from(m.at("config"), GaConfig{});
}

HyperParams params_from_manifest(const std::string& text) {
  const json m = parse(text, "manifest");
  if (!m.contains("params")) throw Error("manifest has no params section");
  return params_from(m.at("params"), HyperParams{});
}

std::string cv_rows(const CvReport& report, char delimiter) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "repeat" << delimiter << "fold" << delimiter << "tp" << delimiter << "fp" << delimiter
     << "tn" << delimiter << "fn";
  for (const char* name : kCvMetricNames) os << delimiter << name;
  os << "\n";
  for (const auto& r : report.per_model) {
    os << r.repeat << delimiter << r.fold << delimiter << r.counts.tp << delimiter << r.counts.fp
       << delimiter << r.counts.tn << delimiter << r.counts.fn;
    for (std::size_t m = 0; m < kCvMetricNames.size(); ++m) os << delimiter << metric_value(r, m);
    os << "\n";
  }
  return os.str();
}

std::string cv_summary_json(const std::string& id, const CvReport& report) {
  json aggs = json::object();
  for (std::size_t m = 0; m < kCvMetricNames.size(); ++m) {
    aggs[kCvMetricNames[m]] = aggregate_json(report.aggregates.at(m));
  }
  json s = {{"id", id},
            {"code_version", kCodeVersion},
            {"k", report.k},
            {"repeats", report.repeats},
            {"model_count", report.model_count},
            {"aggregates", aggs}};
  return s.dump(2) + "\n";
}

std::string cv_summary_table(const CvReport& report) {
  std::ostringstream os;
  os << "metric            min       avg       max       sd\n";
  for (std::size_t m = 0; m < kCvMetricNames.size(); ++m) {
    const auto& a = report.aggregates.at(m);
    os << std::left << std::setw(16) << kCvMetricNames[m] << std::right;
    for (double v : {a.min, a.avg, a.max, a.sd}) os << std::setw(10) << fixed(v);
    os << "\n";
  }
  return os.str();
}

std::string roc_points(const RocResult& roc) {
  std::ostringstream os;
  os << std::setprecision(17) << "fpr;tpr\n";
  for (const auto& p : roc.points) os << p.fpr << ";" << p.tpr << "\n";
  return os.str();
}

std::string lift_points(const std::vector<LiftPoint>& points) {
  std::ostringstream os;
  os << std::setprecision(17) << "fraction;lift\n";
  for (const auto& p : points) os << p.fraction << ";" << p.lift << "\n";
  return os.str();
}

std::string sweep_table(const std::string& name, const std::vector<SweepEntry>& entries) {
  std::ostringstream os;
  os << name << ";generation;best_fitness\n";
  for (const auto& e : entries) {
    for (std::size_t g = 0; g < e.result.history.size(); ++g) {
      os << e.value << ";" << g + 1 << ";" << fixed(e.result.history[g], 6) << "\n";
    }
  }
  return os.str();
}

std::string ablation_table(const std::vector<AblationRow>& rows) {
  std::ostringstream os;
  os << "arm;gmean;feature_count;learning_rate;n_estimators;max_depth;min_child_weight;gamma;"
        "subsample;colsample_bytree\n";
  for (const auto& r : rows) {
    const auto& p = r.decoded.params;
    os << r.arm.id << ";" << fixed(r.gmean, 6) << ";" << r.decoded.features.size() << ";"
       << p.learning_rate << ";" << p.n_estimators << ";" << p.max_depth << ";"
       << p.min_child_weight << ";" << p.gamma << ";" << p.subsample << ";" << p.colsample_bytree
       << "\n";
  }
  return os.str();
}

std::string feature_table(const FeatureAnalysis& analysis) {
  std::ostringstream os;
  os << "index;name;frequency_top;frequency_all;correlation;group\n";
  for (const auto& f : analysis.features) {
    os << f.index << ";" << f.name << ";" << f.frequency_top << ";" << f.frequency_all << ";"
       << (f.correlation ? fixed(*f.correlation) : std::string("nan")) << ";" << group_name(f.group)
       << "\n";
  }
  return os.str();
}

}  // namespace gatune
