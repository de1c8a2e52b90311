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
#include <vector>

#include "gatune/data.hpp"
#include "gatune/gbt.hpp"

namespace gatune {

// Positive class is label 1. fn = actual 1 predicted 0; fp = actual 0
// predicted 1.
struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionCounts&) const = default;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocResult {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

struct LiftPoint {
  double fraction = 0.0;
  double lift = 0.0;
};

struct MetricsReport {
  double accuracy = 0.0;
  double tpr = 0.0;
  double tnr = 0.0;
  double gmean = 0.0;
  double type_i_error = 0.0;   // false-negative rate
  double type_ii_error = 0.0;  // false-positive rate
  double auc = 0.0;
  double total_cost = 0.0;
  std::vector<LiftPoint> lift_points;
};

ConfusionCounts confusion(std::span<const Label> labels, std::span<const Label> preds);

double accuracy(const ConfusionCounts& c);
double tpr(const ConfusionCounts& c);
double tnr(const ConfusionCounts& c);
double gmean(const ConfusionCounts& c);
double type_i_error(const ConfusionCounts& c);
double type_ii_error(const ConfusionCounts& c);

// lambda_fn * fn + mu_fp * fp.
double total_cost(const ConfusionCounts& c, const CostSpec& cost);

// ROC over every distinct score (ties form one step) with trapezoidal AUC.
RocResult roc_auc(std::span<const Label> labels, std::span<const double> scores);

// TPR among the top ceil(s*n) rows by descending score, divided by s. Equal
// scores keep ascending row order.
std::vector<LiftPoint> lift_curve(std::span<const Label> labels, std::span<const double> scores,
                                  std::span<const double> fractions);

// {0.1, 0.2, ..., 1.0}
std::vector<double> decile_fractions();

// Pearson correlation of average ranks; nullopt when either side is constant.
std::optional<double> spearman_rank_corr(std::span<const double> x, std::span<const double> y);

// Label metrics at `threshold`, AUC and lift from the raw scores.
MetricsReport evaluate(std::span<const Label> labels, std::span<const double> scores,
                       const CostSpec& cost, double threshold = 0.5,
                       std::span<const double> lift_fractions = {});

}  // namespace gatune
