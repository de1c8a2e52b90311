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
#include <span>
#include <string>
#include <vector>

#include "gatune/data.hpp"
#include "gatune/gbt.hpp"
#include "gatune/metrics.hpp"

namespace gatune {

struct FoldAssignment {
  std::vector<int> fold_of_row;
  int k = 0;

  std::vector<std::size_t> test_rows(int fold) const;
  std::vector<std::size_t> train_rows(int fold) const;
};

// Each class is shuffled with `seed` and dealt round-robin; the negatives
// continue from the fold where the positives stopped, so fold sizes differ by
// at most one. By default every class must have at least k members so every
// test fold sees both classes; `allow_sparse_classes` lifts that (e.g. for
// leave-one-out).
FoldAssignment stratified_kfold(std::span<const Label> labels, int k, std::uint64_t seed,
                                bool allow_sparse_classes = false);

// Holdout split with the same dealing rule: a `test_fraction` share of each
// class goes to the validation side.
struct HoldoutSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};
HoldoutSplit stratified_holdout(std::span<const Label> labels, double test_fraction,
                                std::uint64_t seed);

struct Aggregate {
  double min = 0.0;
  double avg = 0.0;
  double max = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single value
};

Aggregate aggregate(std::span<const double> values);

struct ModelRecord {
  int repeat = 0;
  int fold = 0;
  ConfusionCounts counts;
  MetricsReport metrics;
  double train_seconds = 0.0;
  double test_seconds = 0.0;
  RocResult roc;
};

// Scalar columns carried by a ModelRecord, in report order.
inline constexpr std::array<const char*, 12> kCvMetricNames = {
    "accuracy", "tpr",   "tnr",       "gmean",         "type_i_error", "type_ii_error",
    "auc",      "total_cost", "lift_at_10", "lift_at_100", "train_seconds", "test_seconds"};

double metric_value(const ModelRecord& record, std::size_t metric);

struct CvReport {
  std::vector<ModelRecord> per_model;
  std::vector<Aggregate> aggregates;  // parallel to kCvMetricNames
  std::size_t model_count = 0;
  int k = 0;
  int repeats = 0;

  const Aggregate& aggregate_of(const std::string& metric) const;
};

struct CvOptions {
  int k = 10;
  int repeats = 1;
  std::uint64_t seed = 723;
  double threshold = 0.5;
  std::size_t threads = 0;  // 0: hardware concurrency
};

// Trains one model per (repeat, fold) on the other folds and scores the held
// out fold. scale_pos_weight in `params` carries the false-negative cost.
CvReport repeated_cv(const EncodedDataset& data, std::span<const int> features,
                     const HyperParams& params, const CvOptions& options);

// Recomputes aggregates over per_model in (repeat, fold) order.
std::vector<Aggregate> aggregate_records(std::span<const ModelRecord> records);

}  // namespace gatune
