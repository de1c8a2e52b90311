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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gatune/data.hpp"
#include "gatune/ga.hpp"
#include "gatune/gbt.hpp"
#include "gatune/validation.hpp"

namespace gatune {

// Published min/avg/max of a repeated-CV metric, on the [0,1] scale.
struct ReferenceRange {
  double min = 0.0;
  double avg = 0.0;
  double max = 0.0;
  double sd = 0.0;
};

// One of the ten best tuning runs (A-J) as published.
struct RegisteredExperiment {
  std::string id;
  double feature_fraction = 0.0;
  int parents = 0;
  double crossover = 0.0;
  int generations = 0;
  double lambda_fn = 1.0;
  double ga_seconds = 0.0;
  double fitness = 0.0;
  HyperParams params;  // scale_pos_weight = lambda_fn
  std::vector<int> features;
  ReferenceRange cv_gmean;
  ReferenceRange cv_auc;
};

const std::vector<RegisteredExperiment>& experiment_registry();
const RegisteredExperiment& find_experiment(const std::string& id);

// Search budgets. Desk scale keeps every run in minutes; paper scale restores
// the published population/generation/repeat counts.
struct Budget {
  std::optional<int> population;  // nullopt: keep the configuration's value
  std::optional<int> generations;
  int repeats = 5;

  static Budget desk() { return {10, 10, 5}; }
  static Budget paper() { return {std::nullopt, std::nullopt, 50}; }

  GaConfig apply(GaConfig cfg) const;
};

// Cost sweep grid {1..12, 15, 20, 50, 100, 150, 200}.
std::vector<double> default_cost_grid();
// Crossover grid {0.1, ..., 0.9}.
std::vector<double> default_crossover_grid();
// F=10%, P=10, C=5%, G=100 as used for the sensitivity sweeps.
GaConfig sensitivity_base_config();

struct SweepEntry {
  double value = 0.0;
  GaConfig config;
  GaResult result;
};

std::vector<SweepEntry> sweep_cost(std::span<const double> lambdas, const GaConfig& base,
                                   const EncodedDataset& data);
std::vector<SweepEntry> sweep_crossover(std::span<const double> ratios, const GaConfig& base,
                                        const EncodedDataset& data);

// An ablation arm: feature selection and parameter optimisation toggles plus
// the false-negative cost.
struct ExperimentSpec {
  std::string id;
  bool feature_selection = true;
  bool param_optimisation = true;
  double lambda_fn = 6.0;

  bool needs_search() const { return feature_selection || param_optimisation; }
};

// FS-PO-C6, PO-C6, C6, FS-PO-C1, FS-C1, FS-C6, PO-C1, C1.
std::vector<ExperimentSpec> ablation_arms();

struct AblationRow {
  ExperimentSpec arm;
  double gmean = 0.0;
  std::optional<GaResult> search;  // empty for fixed arms
  Decoded decoded;
};

// `base` supplies F, P, C, G, seed and threads (F=30%, C=20% by default).
GaConfig ablation_base_config();
std::vector<AblationRow> run_ablation(const EncodedDataset& data, const GaConfig& base);

// Outcome of one tuning run as needed for feature analysis.
struct RunOutcome {
  std::string id;
  std::vector<int> features;
  double gmean = 0.0;
};

RunOutcome outcome_of(const std::string& id, const GaResult& result);
std::vector<RunOutcome> registry_outcomes();

enum class CorrelationGroup { kPositive, kNegative, kNeutral };

struct FeatureStat {
  int index = 0;
  std::string name;
  std::size_t frequency_top = 0;  // among the best `top_n` runs
  std::size_t frequency_all = 0;
  std::optional<double> correlation;  // inclusion indicator vs run GMean
  CorrelationGroup group = CorrelationGroup::kNeutral;
};

struct FeatureAnalysis {
  std::vector<FeatureStat> features;  // schema order
  std::size_t run_count = 0;
  std::size_t top_count = 0;
};

FeatureAnalysis analyze_features(std::span<const RunOutcome> runs, const FeatureSchema& schema,
                                 std::size_t top_n = 10);

const char* group_name(CorrelationGroup g);

// Repeated CV of a registered configuration.
CvReport reproduce_experiment(const std::string& id, const EncodedDataset& data,
                              const CvOptions& options);

}  // namespace gatune
