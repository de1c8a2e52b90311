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

#include "gatune/ga.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iterator>
#include <sstream>

#include "gatune/error.hpp"
#include "gatune/metrics.hpp"
#include "gatune/parallel.hpp"
#include "gatune/validation.hpp"

namespace gatune {
namespace {

struct GeneRange {
  double lo;
  double hi;
  bool integral;
};

// Search ranges in gene order.
constexpr std::array<GeneRange, kHyperGeneCount> kRanges = {{
    {0.01, 1.0, false},    // learning_rate
    {10.0, 1500.0, true},  // n_estimators
    {1.0, 10.0, true},     // max_depth
    {0.01, 10.0, false},   // min_child_weight
    {0.01, 10.0, false},   // gamma
    {0.01, 1.0, false},    // subsample
    {0.01, 1.0, false},    // colsample_bytree
}};

// Stream ids under the run seed.
constexpr std::uint64_t kBreedingStream = 0xb4eed;
constexpr std::uint64_t kHoldoutStream = 0x401d;

double decode_gene(double gene, const GeneRange& r) {
  const double v = r.lo + gene * (r.hi - r.lo);
  if (!r.integral) return std::clamp(v, r.lo, r.hi);
  return std::clamp(std::round(v), r.lo, r.hi);
}

Decoded decode_for(const Chromosome& ch, const GaConfig& cfg, const FeatureSchema& schema) {
  Decoded d;
  d.params = cfg.search_params ? decode_params(ch.hyper_genes) : cfg.fixed_params;
  d.params.scale_pos_weight = cfg.lambda_fn;
  for (int pos : ch.feature_genes) d.features.push_back(schema[static_cast<std::size_t>(pos)].index);
  return d;
}

std::string describe(const Chromosome& ch) {
  std::ostringstream os;
  os << "genes [";
  for (std::size_t i = 0; i < ch.hyper_genes.size(); ++i) os << (i ? "," : "") << ch.hyper_genes[i];
  os << "] features [";
  for (std::size_t i = 0; i < ch.feature_genes.size(); ++i) os << (i ? "," : "") << ch.feature_genes[i];
  os << "]";
  return os.str();
}

std::size_t tournament(const std::vector<double>& fit, Rng& rng) {
  const std::size_t a = rng.index(fit.size());
  const std::size_t b = rng.index(fit.size());
  if (fit[a] > fit[b]) return a;
  if (fit[b] > fit[a]) return b;
  return std::min(a, b);
}

}  // namespace

void GaConfig::validate(std::size_t feature_count) const {
  if (!(feature_fraction > 0.0 && feature_fraction <= 1.0)) {
    throw Error("feature fraction " + std::to_string(feature_fraction) + " is outside (0,1]");
  }
  if (population < 2) throw Error("population must be >= 2, got " + std::to_string(population));
  if (generations < 1) throw Error("generations must be >= 1, got " + std::to_string(generations));
  if (!(crossover_ratio >= 0.0 && crossover_ratio <= 1.0)) {
    throw Error("crossover ratio " + std::to_string(crossover_ratio) + " is outside [0,1]");
  }
  if (!(fitness_split > 0.0 && fitness_split < 1.0)) {
    throw Error("fitness split " + std::to_string(fitness_split) + " is outside (0,1)");
  }
  CostSpec check(lambda_fn);
  (void)check;
  if (feature_count == 0) throw Error("dataset has no feature columns");
  if (subset_size(feature_fraction, feature_count) < 1) throw Error("feature subset would be empty");
  if (!search_params) fixed_params.validate();
}

std::size_t subset_size(double feature_fraction, std::size_t feature_count) {
  if (feature_count <= 1) return feature_count;
  const double basis = static_cast<double>(feature_count - 1);
  const auto k = static_cast<std::size_t>(std::ceil(feature_fraction * basis - 1e-9));
  return std::clamp<std::size_t>(k, 1, feature_count);
}

HyperParams decode_params(const std::array<double, kHyperGeneCount>& g) {
  HyperParams p;
  p.learning_rate = decode_gene(g[0], kRanges[0]);
  p.n_estimators = static_cast<int>(decode_gene(g[1], kRanges[1]));
  p.max_depth = static_cast<int>(decode_gene(g[2], kRanges[2]));
  p.min_child_weight = decode_gene(g[3], kRanges[3]);
  p.gamma = decode_gene(g[4], kRanges[4]);
  p.subsample = decode_gene(g[5], kRanges[5]);
  p.colsample_bytree = decode_gene(g[6], kRanges[6]);
  p.reg_lambda = 1.0;
  p.scale_pos_weight = 1.0;
  return p;
}

std::array<double, kHyperGeneCount> encode_params(const HyperParams& p) {
  const std::array<double, kHyperGeneCount> values = {
      p.learning_rate, static_cast<double>(p.n_estimators), static_cast<double>(p.max_depth),
      p.min_child_weight, p.gamma, p.subsample, p.colsample_bytree};
  std::array<double, kHyperGeneCount> genes{};
  for (std::size_t i = 0; i < kHyperGeneCount; ++i) {
    genes[i] = std::clamp((values[i] - kRanges[i].lo) / (kRanges[i].hi - kRanges[i].lo), 0.0, 1.0);
  }
  return genes;
}

Decoded decode(const Chromosome& ch) {
  Decoded d;
  d.params = decode_params(ch.hyper_genes);
  d.features = ch.feature_genes;
  std::sort(d.features.begin(), d.features.end());
  return d;
}

void check_chromosome(const Chromosome& ch, std::size_t subset, std::size_t feature_count) {
  for (double g : ch.hyper_genes) {
    if (!(g >= 0.0 && g <= 1.0)) throw Error("hyper gene out of [0,1]: " + describe(ch));
  }
  if (ch.feature_genes.size() != subset) {
    throw Error("expected " + std::to_string(subset) + " feature genes: " + describe(ch));
  }
  for (std::size_t i = 0; i < ch.feature_genes.size(); ++i) {
    const int v = ch.feature_genes[i];
    if (v < 0 || static_cast<std::size_t>(v) >= feature_count) {
      throw Error("feature gene out of range: " + describe(ch));
    }
    if (i > 0 && ch.feature_genes[i - 1] >= v) {
      throw Error("feature genes not distinct and sorted: " + describe(ch));
    }
  }
  if (!decode_params(ch.hyper_genes).within_search_ranges()) {
    throw Error("decoded parameters leave the search ranges: " + describe(ch));
  }
}

std::vector<Chromosome> init_population(const GaConfig& cfg, std::size_t feature_count, Rng& rng) {
  const std::size_t k = cfg.search_features ? subset_size(cfg.feature_fraction, feature_count)
                                            : feature_count;
  std::vector<Chromosome> population(static_cast<std::size_t>(cfg.population));
  for (auto& ch : population) {
    for (auto& g : ch.hyper_genes) g = rng.uniform01();
    for (auto pos : rng.sample_without_replacement(feature_count, k)) {
      ch.feature_genes.push_back(static_cast<int>(pos));
    }
    std::sort(ch.feature_genes.begin(), ch.feature_genes.end());
  }
  return population;
}

std::pair<Chromosome, Chromosome> uniform_crossover(const Chromosome& a, const Chromosome& b,
                                                    std::size_t feature_count, Rng& rng) {
  if (a.feature_genes.size() != b.feature_genes.size()) {
    throw Error("crossover parents carry different subset sizes");
  }
  Chromosome c1 = a;
  Chromosome c2 = b;
  for (std::size_t i = 0; i < kHyperGeneCount; ++i) {
    if (rng.bernoulli(0.5)) std::swap(c1.hyper_genes[i], c2.hyper_genes[i]);
  }

  std::vector<int> shared;
  std::vector<int> either;
  std::set_intersection(a.feature_genes.begin(), a.feature_genes.end(), b.feature_genes.begin(),
                        b.feature_genes.end(), std::back_inserter(shared));
  std::set_symmetric_difference(a.feature_genes.begin(), a.feature_genes.end(),
                                b.feature_genes.begin(), b.feature_genes.end(),
                                std::back_inserter(either));
  const std::size_t k = a.feature_genes.size();
  for (Chromosome* child : {&c1, &c2}) {
    child->feature_genes = shared;
    for (auto pick : rng.sample_without_replacement(either.size(), k - shared.size())) {
      child->feature_genes.push_back(either[pick]);
    }
    std::sort(child->feature_genes.begin(), child->feature_genes.end());
  }
  (void)feature_count;
  return {std::move(c1), std::move(c2)};
}

Chromosome mutate(const Chromosome& ch, std::size_t feature_count, Rng& rng,
                  const MutationRates& rates) {
  Chromosome out = ch;
  if (rates.mutate_hyper) {
    for (auto& g : out.hyper_genes) {
      if (rng.bernoulli(rates.hyper_gene)) {
        g = std::clamp(g + rng.normal(0.0, rates.hyper_sigma), 0.0, 1.0);
      }
    }
  }
  const std::size_t k = out.feature_genes.size();
  if (rates.mutate_features && k > 0 && k < feature_count) {
    const double p = rates.feature_gene.value_or(1.0 / static_cast<double>(k));
    for (std::size_t i = 0; i < k; ++i) {
      if (!rng.bernoulli(p)) continue;
      std::vector<int> unused;
      unused.reserve(feature_count - k);
      for (int v = 0; v < static_cast<int>(feature_count); ++v) {
        if (std::find(out.feature_genes.begin(), out.feature_genes.end(), v) == out.feature_genes.end()) {
          unused.push_back(v);
        }
      }
      out.feature_genes[i] = unused[rng.index(unused.size())];
    }
    std::sort(out.feature_genes.begin(), out.feature_genes.end());
  }
  return out;
}

double fitness(const Chromosome& ch, const EncodedDataset& data, const GaConfig& cfg,
               std::uint64_t model_seed) {
  const auto decoded = decode_for(ch, cfg, data.schema());
  const auto projected = data.project(decoded.features);
  const auto split =
      stratified_holdout(projected.labels(), cfg.fitness_split, derive_seed(cfg.seed, {kHoldoutStream}));
  const auto train_set = projected.select_rows(split.train);
  const auto valid_set = projected.select_rows(split.test);
  const auto model = train(train_set, decoded.params, model_seed);
  const auto scores = predict_proba(model, valid_set);
  std::vector<Label> preds(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) preds[i] = scores[i] >= cfg.threshold ? 1 : 0;
  return gmean(confusion(valid_set.labels(), preds));
}

GaResult run_ga(const GaConfig& cfg, const EncodedDataset& data, const GenerationObserver& observer) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t f = data.cols();
  cfg.validate(f);
  const std::size_t k = cfg.search_features ? subset_size(cfg.feature_fraction, f) : f;
  const auto P = static_cast<std::size_t>(cfg.population);

  MutationRates rates;
  rates.mutate_hyper = cfg.search_params;
  rates.mutate_features = cfg.search_features;

  Rng rng(derive_seed(cfg.seed, {kBreedingStream}));
  auto population = init_population(cfg, f, rng);
  std::vector<double> fit(P, 0.0);
  std::vector<bool> evaluated(P, false);

  GaResult result;
  bool have_best = false;
  for (int gen = 0; gen < cfg.generations; ++gen) {
    for (const auto& ch : population) check_chromosome(ch, k, f);

    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < P; ++i) {
      if (!evaluated[i]) pending.push_back(i);
    }
    parallel_for(pending.size(), cfg.threads, [&](std::size_t j) {
      const std::size_t i = pending[j];
      try {
        fit[i] = fitness(population[i], data, cfg,
                         derive_seed(cfg.seed, {static_cast<std::uint64_t>(gen), i}));
      } catch (const std::exception& e) {
        throw Error("fitness evaluation failed for " + describe(population[i]) + ": " + e.what());
      }
    });
    result.evaluations += pending.size();
    std::fill(evaluated.begin(), evaluated.end(), true);
    if (observer) observer(gen, population, fit);

    const auto elite = static_cast<std::size_t>(
        std::distance(fit.begin(), std::max_element(fit.begin(), fit.end())));
    if (!have_best || fit[elite] > result.best_fitness) {
      result.best_fitness = fit[elite];
      result.best_chromosome = population[elite];
      have_best = true;
    }
    result.history.push_back(result.best_fitness);
    if (gen + 1 == cfg.generations) break;

    std::vector<Chromosome> next{population[elite]};
    std::vector<double> next_fit{fit[elite]};
    const std::size_t slots = P - 1;
    const auto crossover_slots = static_cast<std::size_t>(std::llround(cfg.crossover_ratio * slots));
    std::vector<Chromosome> offspring;
    while (offspring.size() < crossover_slots) {
      const auto& a = population[tournament(fit, rng)];
      const auto& b = population[tournament(fit, rng)];
      auto [c1, c2] = uniform_crossover(a, b, f, rng);
      offspring.push_back(std::move(c1));
      if (offspring.size() < crossover_slots) offspring.push_back(std::move(c2));
    }
    while (offspring.size() < slots) offspring.push_back(population[tournament(fit, rng)]);
    for (auto& child : offspring) {
      next.push_back(mutate(child, f, rng, rates));
      next_fit.push_back(0.0);
    }
    population = std::move(next);
    fit = std::move(next_fit);
    evaluated.assign(P, false);
    evaluated[0] = true;
  }

  result.decoded = decode_for(result.best_chromosome, cfg, data.schema());
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace gatune
