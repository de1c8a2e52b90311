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

#include <sstream>
#include <string>

#include "gatune/ga.hpp"
#include "support/synthetic.hpp"

namespace gatune::testing {

inline GaConfig planted_config() {
  GaConfig cfg;
  cfg.feature_fraction = 0.01;  // one feature per chromosome
  cfg.population = 12;
  cfg.generations = 15;
  cfg.search_params = false;
  cfg.fixed_params.n_estimators = 20;
  cfg.seed = 723;
  return cfg;
}

// Runs the GA on the planted dataset and compares against the exhaustive
// evaluation of every single-feature subset.
inline std::string planted_recovery(std::size_t threads) {
  const auto data = planted_dataset(300, 31);
  auto cfg = planted_config();
  cfg.threads = threads;
  std::ostringstream err;

  int best_pos = -1;
  double best = -1.0;
  for (int pos = 0; pos < static_cast<int>(data.cols()); ++pos) {
    Chromosome ch;
    ch.feature_genes = {pos};
    const double f = fitness(ch, data, cfg, 0);
    if (f > best) {
      best = f;
      best_pos = pos;
    } else if (f == best) {
      err << "exhaustive oracle has a tie between features " << best_pos << " and " << pos;
      return err.str();
    }
  }
  if (best_pos != 0) {
    err << "exhaustive oracle prefers feature " << best_pos;
    return err.str();
  }
  const auto result = run_ga(cfg, data);
  if (result.decoded.features != std::vector<int>{0} || result.best_fitness != best) {
    err << "GA selected " << result.decoded.features.size() << " features starting at "
        << (result.decoded.features.empty() ? -1 : result.decoded.features[0]) << " with fitness "
        << result.best_fitness << ", oracle fitness " << best;
    return err.str();
  }
  return {};
}

inline GaConfig tiny_config(std::uint64_t seed) {
  GaConfig cfg;
  cfg.feature_fraction = 0.1;
  cfg.population = 6;
  cfg.generations = 5;
  cfg.crossover_ratio = 0.4;
  cfg.seed = seed;
  return cfg;
}

// Caps tree counts so random genes stay cheap on small data.
inline EncodedDataset tiny_data() { return synthetic_bank(300, 77); }

}  // namespace gatune::testing
