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

#include "gatune/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "gatune/error.hpp"
#include "gatune/parallel.hpp"
#include "gatune/random.hpp"

namespace gatune {
namespace {

std::array<std::vector<std::size_t>, 2> shuffled_classes(std::span<const Label> labels,
                                                         std::uint64_t seed) {
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i] == 1 ? 1 : 0].push_back(i);
  Rng rng(seed);
  // Positives first so the dealing order is fixed.
  rng.shuffle(by_class[1]);
  rng.shuffle(by_class[0]);
  return by_class;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::vector<std::size_t> FoldAssignment::test_rows(int fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold_of_row.size(); ++i) {
    if (fold_of_row[i] == fold) rows.push_back(i);
  }
  return rows;
}

std::vector<std::size_t> FoldAssignment::train_rows(int fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold_of_row.size(); ++i) {
    if (fold_of_row[i] != fold) rows.push_back(i);
  }
  return rows;
}

FoldAssignment stratified_kfold(std::span<const Label> labels, int k, std::uint64_t seed,
                                bool allow_sparse_classes) {
  if (k < 2) throw Error("k-fold needs k >= 2, got " + std::to_string(k));
  if (labels.size() < static_cast<std::size_t>(k)) {
    throw Error("cannot split " + std::to_string(labels.size()) + " rows into " +
                std::to_string(k) + " folds");
  }
  auto by_class = shuffled_classes(labels, seed);
  if (!allow_sparse_classes) {
    for (int c = 0; c < 2; ++c) {
      if (by_class[c].size() < static_cast<std::size_t>(k)) {
        throw Error("class " + std::to_string(c) + " has " + std::to_string(by_class[c].size()) +
                    " rows, fewer than k = " + std::to_string(k));
      }
    }
  }
  FoldAssignment folds;
  folds.k = k;
  folds.fold_of_row.assign(labels.size(), -1);
  std::size_t next = 0;
  for (int c : {1, 0}) {
    for (std::size_t row : by_class[c]) {
      folds.fold_of_row[row] = static_cast<int>(next % static_cast<std::size_t>(k));
      ++next;
    }
  }
  return folds;
}

HoldoutSplit stratified_holdout(std::span<const Label> labels, double test_fraction,
                                std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error("holdout fraction " + std::to_string(test_fraction) + " is outside (0,1)");
  }
  auto by_class = shuffled_classes(labels, seed);
  HoldoutSplit split;
  for (int c : {1, 0}) {
    const auto& rows = by_class[c];
    if (rows.size() < 2) {
      throw Error("class " + std::to_string(c) + " has " + std::to_string(rows.size()) +
                  " rows; a stratified holdout needs at least 2");
    }
    auto n_test = static_cast<std::size_t>(std::llround(test_fraction * rows.size()));
    n_test = std::clamp<std::size_t>(n_test, 1, rows.size() - 1);
    split.test.insert(split.test.end(), rows.begin(), rows.begin() + n_test);
    split.train.insert(split.train.end(), rows.begin() + n_test, rows.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

Aggregate aggregate(std::span<const double> values) {
  if (values.empty()) throw Error("cannot aggregate an empty series");
  Aggregate a;
  a.min = std::numeric_limits<double>::infinity();
  a.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (double v : values) {
    a.min = std::min(a.min, v);
    a.max = std::max(a.max, v);
    sum += v;
  }
  a.avg = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - a.avg) * (v - a.avg);
    a.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  // avg can drift outside [min, max] by an ulp when all values are equal.
  a.avg = std::clamp(a.avg, a.min, a.max);
  return a;
}

double metric_value(const ModelRecord& record, std::size_t metric) {
  const auto& m = record.metrics;
  switch (metric) {
    case 0: return m.accuracy;
    case 1: return m.tpr;
    case 2: return m.tnr;
    case 3: return m.gmean;
    case 4: return m.type_i_error;
    case 5: return m.type_ii_error;
    case 6: return m.auc;
    case 7: return m.total_cost;
    case 8: return m.lift_points.empty() ? 0.0 : m.lift_points.front().lift;
    case 9: return m.lift_points.empty() ? 0.0 : m.lift_points.back().lift;
    case 10: return record.train_seconds;
    case 11: return record.test_seconds;
    default: throw Error("unknown metric column " + std::to_string(metric));
  }
}

const Aggregate& CvReport::aggregate_of(const std::string& metric) const {
  for (std::size_t i = 0; i < kCvMetricNames.size(); ++i) {
    if (metric == kCvMetricNames[i]) return aggregates.at(i);
  }
  throw Error("unknown metric '" + metric + "'");
}

std::vector<Aggregate> aggregate_records(std::span<const ModelRecord> records) {
  std::vector<Aggregate> out;
  std::vector<double> column(records.size());
  for (std::size_t m = 0; m < kCvMetricNames.size(); ++m) {
    for (std::size_t i = 0; i < records.size(); ++i) column[i] = metric_value(records[i], m);
    out.push_back(aggregate(column));
  }
  return out;
}

CvReport repeated_cv(const EncodedDataset& data, std::span<const int> features,
                     const HyperParams& params, const CvOptions& options) {
  if (options.repeats < 1) throw Error("repeated CV needs repeats >= 1");
  params.validate();
  const CostSpec cost(params.scale_pos_weight);
  const auto projected = data.project(features);
  const auto fractions = decile_fractions();

  std::vector<FoldAssignment> folds;
  for (int r = 0; r < options.repeats; ++r) {
    folds.push_back(stratified_kfold(projected.labels(), options.k,
                                     derive_seed(options.seed, {static_cast<std::uint64_t>(r)})));
  }

  const std::size_t jobs = static_cast<std::size_t>(options.repeats) * options.k;
  std::vector<ModelRecord> records(jobs);
  parallel_for(jobs, options.threads, [&](std::size_t job) {
    const int r = static_cast<int>(job / options.k);
    const int fold = static_cast<int>(job % options.k);
    const auto& assignment = folds[static_cast<std::size_t>(r)];
    const auto train_set = projected.select_rows(assignment.train_rows(fold));
    const auto test_set = projected.select_rows(assignment.test_rows(fold));

    ModelRecord& record = records[job];
    record.repeat = r;
    record.fold = fold;
    auto start = std::chrono::steady_clock::now();
    const auto model =
        train(train_set, params,
              derive_seed(options.seed, {static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(fold)}));
    record.train_seconds = seconds_since(start);

    start = std::chrono::steady_clock::now();
    const auto scores = predict_proba(model, test_set);
    record.test_seconds = seconds_since(start);

    std::vector<Label> preds(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) preds[i] = scores[i] >= options.threshold ? 1 : 0;
    record.counts = confusion(test_set.labels(), preds);
    record.metrics = evaluate(test_set.labels(), scores, cost, options.threshold, fractions);
    record.roc = roc_auc(test_set.labels(), scores);
  });

  CvReport report;
  report.per_model = std::move(records);
  report.aggregates = aggregate_records(report.per_model);
  report.model_count = report.per_model.size();
  report.k = options.k;
  report.repeats = options.repeats;
  return report;
}

}  // namespace gatune
