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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gatune/data.hpp"
#include "gatune/gbt.hpp"
#include "gatune/random.hpp"

namespace gatune {

inline constexpr std::size_t kHyperGeneCount = 7;

struct GaConfig {
  double feature_fraction = 0.10;  // F
  int population = 10;             // P
  double crossover_ratio = 0.20;   // C
  int generations = 10;            // G
  double lambda_fn = 6.0;          // scale_pos_weight during fitness
  std::uint64_t seed = 723;
  double fitness_split = 0.20;     // validation share of the holdout
  double threshold = 0.5;
  std::size_t threads = 0;         // 0: hardware concurrency

  // Toggles for the ablation arms. With search_params off every chromosome
  // decodes to fixed_params; with search_features off every chromosome uses
  // all columns.
  bool search_params = true;
  bool search_features = true;
  HyperParams fixed_params = HyperParams::defaults();

  void validate(std::size_t feature_count) const;
};

// Number of feature genes for fraction F over a dataset of `feature_count`
// columns: ceil(F * (feature_count - 1)), i.e. 7/13/19/25 for F = 10..40% of
// the 63-column bank schema.
std::size_t subset_size(double feature_fraction, std::size_t feature_count);

struct Chromosome {
  // learning_rate, n_estimators, max_depth, min_child_weight, gamma,
  // subsample, colsample_bytree; each in [0, 1].
  std::array<double, kHyperGeneCount> hyper_genes{};
  std::vector<int> feature_genes;  // distinct, sorted

  bool operator==(const Chromosome&) const = default;
};

struct Decoded {
  HyperParams params;
  std::vector<int> features;
};

// Linear map of each gene onto its search range; integers round to nearest
// then clamp.
HyperParams decode_params(const std::array<double, kHyperGeneCount>& genes);
std::array<double, kHyperGeneCount> encode_params(const HyperParams& params);
Decoded decode(const Chromosome& ch);

// Throws when the chromosome breaks the size, distinctness or range rules.
void check_chromosome(const Chromosome& ch, std::size_t subset, std::size_t feature_count);

std::vector<Chromosome> init_population(const GaConfig& cfg, std::size_t feature_count, Rng& rng);

std::pair<Chromosome, Chromosome> uniform_crossover(const Chromosome& a, const Chromosome& b,
                                                    std::size_t feature_count, Rng& rng);

struct MutationRates {
  double hyper_gene = 0.1;
  double hyper_sigma = 0.1;
  std::optional<double> feature_gene;  // default 1/k
  bool mutate_hyper = true;
  bool mutate_features = true;
};

Chromosome mutate(const Chromosome& ch, std::size_t feature_count, Rng& rng,
                  const MutationRates& rates = {});

// GMean on a stratified holdout (split from cfg.seed) of a model trained on
// the remaining rows with the decoded parameters and scale_pos_weight =
// cfg.lambda_fn.
double fitness(const Chromosome& ch, const EncodedDataset& data, const GaConfig& cfg,
               std::uint64_t model_seed);

struct GaResult {
  Chromosome best_chromosome;
  double best_fitness = 0.0;
  std::vector<double> history;  // best fitness so far, one per generation
  double elapsed_seconds = 0.0;
  Decoded decoded;
  std::size_t evaluations = 0;
};

// Called once per generation with the evaluated population; used by tests to
// check invariants inside the loop.
using GenerationObserver =
    std::function<void(int generation, const std::vector<Chromosome>&, const std::vector<double>&)>;

GaResult run_ga(const GaConfig& cfg, const EncodedDataset& data,
                const GenerationObserver& observer = {});

}  // namespace gatune
