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

#include "gatune/experiments.hpp"

#include <algorithm>
#include <numeric>

#include "gatune/error.hpp"
#include "gatune/metrics.hpp"
#include "gatune/random.hpp"

namespace gatune {

GaConfig Budget::apply(GaConfig cfg) const {
  if (population) cfg.population = *population;
  if (generations) cfg.generations = *generations;
  return cfg;
}

std::vector<double> default_cost_grid() {
  std::vector<double> grid;
  for (int v = 1; v <= 12; ++v) grid.push_back(v);
  for (double v : {15.0, 20.0, 50.0, 100.0, 150.0, 200.0}) grid.push_back(v);
  return grid;
}

std::vector<double> default_crossover_grid() {
  std::vector<double> grid;
  for (int v = 1; v <= 9; ++v) grid.push_back(v / 10.0);
  return grid;
}

GaConfig sensitivity_base_config() {
  GaConfig cfg;
  cfg.feature_fraction = 0.10;
  cfg.population = 10;
  cfg.crossover_ratio = 0.05;
  cfg.generations = 100;
  cfg.lambda_fn = 6.0;
  return cfg;
}

std::vector<SweepEntry> sweep_cost(std::span<const double> lambdas, const GaConfig& base,
                                   const EncodedDataset& data) {
  for (double l : lambdas) CostSpec check(l);
  std::vector<SweepEntry> out;
  for (double l : lambdas) {
    GaConfig cfg = base;
    cfg.lambda_fn = l;
    out.push_back({l, cfg, run_ga(cfg, data)});
  }
  return out;
}

std::vector<SweepEntry> sweep_crossover(std::span<const double> ratios, const GaConfig& base,
                                        const EncodedDataset& data) {
  for (double c : ratios) {
    if (!(c >= 0.0 && c <= 1.0)) throw Error("crossover ratio " + std::to_string(c) + " is outside [0,1]");
  }
  std::vector<SweepEntry> out;
  for (double c : ratios) {
    GaConfig cfg = base;
    cfg.crossover_ratio = c;
    out.push_back({c, cfg, run_ga(cfg, data)});
  }
  return out;
}

std::vector<ExperimentSpec> ablation_arms() {
  return {
      {"FS-PO-C6", true, true, 6.0}, {"PO-C6", false, true, 6.0}, {"C6", false, false, 6.0},
      {"FS-PO-C1", true, true, 1.0}, {"FS-C1", true, false, 1.0}, {"FS-C6", true, false, 6.0},
      {"PO-C1", false, true, 1.0},   {"C1", false, false, 1.0},
  };
}

GaConfig ablation_base_config() {
  GaConfig cfg;
  cfg.feature_fraction = 0.30;
  cfg.crossover_ratio = 0.20;
  return cfg;
}

std::vector<AblationRow> run_ablation(const EncodedDataset& data, const GaConfig& base) {
  std::vector<AblationRow> rows;
  for (const auto& arm : ablation_arms()) {
    GaConfig cfg = base;
    cfg.lambda_fn = arm.lambda_fn;
    cfg.search_features = arm.feature_selection;
    cfg.search_params = arm.param_optimisation;
    cfg.fixed_params = HyperParams::defaults();

    AblationRow row;
    row.arm = arm;
    if (arm.needs_search()) {
      row.search = run_ga(cfg, data);
      row.gmean = row.search->best_fitness;
      row.decoded = row.search->decoded;
    } else {
      // Same holdout and scoring as the searched arms, without a search.
      cfg.validate(data.cols());
      Chromosome all;
      for (std::size_t i = 0; i < data.cols(); ++i) all.feature_genes.push_back(static_cast<int>(i));
      row.gmean = fitness(all, data, cfg, derive_seed(cfg.seed, {0, 0}));
      row.decoded.params = cfg.fixed_params;
      row.decoded.params.scale_pos_weight = cfg.lambda_fn;
      for (const auto& e : data.schema().entries()) row.decoded.features.push_back(e.index);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

RunOutcome outcome_of(const std::string& id, const GaResult& result) {
  RunOutcome o;
  o.id = id;
  o.features = result.decoded.features;
  std::sort(o.features.begin(), o.features.end());
  o.gmean = result.best_fitness;
  return o;
}

std::vector<RunOutcome> registry_outcomes() {
  std::vector<RunOutcome> out;
  for (const auto& e : experiment_registry()) out.push_back({e.id, e.features, e.fitness});
  return out;
}

FeatureAnalysis analyze_features(std::span<const RunOutcome> runs, const FeatureSchema& schema,
                                 std::size_t top_n) {
  if (runs.size() < 2) throw Error("feature analysis needs at least 2 runs, got " + std::to_string(runs.size()));

  std::vector<std::size_t> order(runs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return runs[a].gmean > runs[b].gmean; });
  const std::size_t top = std::min(top_n, runs.size());

  std::vector<double> gmeans;
  for (const auto& r : runs) gmeans.push_back(r.gmean);

  FeatureAnalysis fa;
  fa.run_count = runs.size();
  fa.top_count = top;
  for (const auto& entry : schema.entries()) {
    FeatureStat st;
    st.index = entry.index;
    st.name = entry.name;
    std::vector<double> included(runs.size(), 0.0);
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto& f = runs[i].features;
      if (std::find(f.begin(), f.end(), entry.index) != f.end()) included[i] = 1.0;
    }
    for (std::size_t i = 0; i < runs.size(); ++i) st.frequency_all += included[i] > 0.0;
    for (std::size_t i = 0; i < top; ++i) st.frequency_top += included[order[i]] > 0.0;
    st.correlation = spearman_rank_corr(included, gmeans);
    if (!st.correlation) {
      st.group = CorrelationGroup::kNeutral;
    } else {
      st.group = *st.correlation >= 0.0 ? CorrelationGroup::kPositive : CorrelationGroup::kNegative;
    }
    fa.features.push_back(std::move(st));
  }
  return fa;
}

const char* group_name(CorrelationGroup g) {
  switch (g) {
    case CorrelationGroup::kPositive: return "positive";
    case CorrelationGroup::kNegative: return "negative";
    case CorrelationGroup::kNeutral: return "neutral";
  }
  return "neutral";
}

CvReport reproduce_experiment(const std::string& id, const EncodedDataset& data,
                              const CvOptions& options) {
  const auto& e = find_experiment(id);
  for (int f : e.features) {
    if (!data.schema().position_of(f)) {
      throw Error("experiment " + id + " uses feature " + std::to_string(f) +
                  " which the dataset does not carry");
    }
  }
  return repeated_cv(data, e.features, e.params, options);
}

}  // namespace gatune
