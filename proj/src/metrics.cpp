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

#include "gatune/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gatune/error.hpp"

namespace gatune {
namespace {

double ratio(std::uint64_t num, std::uint64_t den, const char* metric) {
  if (den == 0) throw Error(std::string(metric) + " is undefined: zero denominator");
  return static_cast<double>(num) / static_cast<double>(den);
}

void check_scores(std::span<const Label> labels, std::span<const double> scores,
                  std::size_t& positives) {
  if (labels.size() != scores.size()) {
    throw Error("labels (" + std::to_string(labels.size()) + ") and scores (" +
                std::to_string(scores.size()) + ") differ in length");
  }
  positives = 0;
  for (Label y : labels) positives += (y == 1);
  if (positives == 0 || positives == labels.size()) {
    throw Error("ranking metrics need both classes present");
  }
}

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

ConfusionCounts confusion(std::span<const Label> labels, std::span<const Label> preds) {
  if (labels.size() != preds.size()) {
    throw Error("labels (" + std::to_string(labels.size()) + ") and predictions (" +
                std::to_string(preds.size()) + ") differ in length");
  }
  if (labels.empty()) throw Error("confusion matrix needs at least one row");
  ConfusionCounts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) {
      (preds[i] == 1 ? c.tp : c.fn)++;
    } else {
      (preds[i] == 1 ? c.fp : c.tn)++;
    }
  }
  return c;
}

double accuracy(const ConfusionCounts& c) { return ratio(c.tp + c.tn, c.total(), "accuracy"); }
double tpr(const ConfusionCounts& c) { return ratio(c.tp, c.tp + c.fn, "TPR"); }
double tnr(const ConfusionCounts& c) { return ratio(c.tn, c.fp + c.tn, "TNR"); }
double gmean(const ConfusionCounts& c) { return std::sqrt(tpr(c) * tnr(c)); }
double type_i_error(const ConfusionCounts& c) { return ratio(c.fn, c.tp + c.fn, "Type I error"); }
double type_ii_error(const ConfusionCounts& c) {
  return ratio(c.fp, c.fp + c.tn, "Type II error");
}

double total_cost(const ConfusionCounts& c, const CostSpec& cost) {
  return cost.lambda_fn * static_cast<double>(c.fn) + cost.mu_fp * static_cast<double>(c.fp);
}

RocResult roc_auc(std::span<const Label> labels, std::span<const double> scores) {
  std::size_t positives = 0;
  check_scores(labels, scores, positives);
  const std::size_t negatives = labels.size() - positives;

  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return scores[a] > scores[b]; });

  RocResult result;
  result.points.push_back({0.0, 0.0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  double area = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    const double score = scores[order[i]];
    const std::size_t tp_before = tp;
    const std::size_t fp_before = fp;
    for (; i < order.size() && scores[order[i]] == score; ++i) {
      (labels[order[i]] == 1 ? tp : fp)++;
    }
    // Trapezoid in count space keeps the sum exact up to the final division.
    area += static_cast<double>(fp - fp_before) * static_cast<double>(tp + tp_before) / 2.0;
    result.points.push_back({static_cast<double>(fp) / negatives,
                             static_cast<double>(tp) / positives});
  }
  result.auc = area / (static_cast<double>(positives) * static_cast<double>(negatives));
  return result;
}

std::vector<LiftPoint> lift_curve(std::span<const Label> labels, std::span<const double> scores,
                                  std::span<const double> fractions) {
  std::size_t positives = 0;
  check_scores(labels, scores, positives);
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (!(fractions[i] > 0.0 && fractions[i] <= 1.0)) {
      throw Error("lift fraction " + std::to_string(fractions[i]) + " is outside (0,1]");
    }
    if (i > 0 && fractions[i] < fractions[i - 1]) throw Error("lift fractions must be ascending");
  }
  const std::size_t n = labels.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return scores[a] > scores[b]; });

  std::vector<LiftPoint> points;
  std::size_t taken = 0;
  std::size_t captured = 0;
  for (double s : fractions) {
    const auto top = std::min<std::size_t>(
        n, static_cast<std::size_t>(std::ceil(s * static_cast<double>(n) - 1e-9)));
    for (; taken < top; ++taken) captured += labels[order[taken]] == 1;
    const double rate = static_cast<double>(captured) / static_cast<double>(positives);
    points.push_back({s, rate / s});
  }
  return points;
}

std::vector<double> decile_fractions() {
  std::vector<double> f;
  for (int i = 1; i <= 10; ++i) f.push_back(i / 10.0);
  return f;
}

std::optional<double> spearman_rank_corr(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error("spearman inputs differ in length (" + std::to_string(x.size()) + " vs " +
                std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) throw Error("spearman correlation needs at least two observations");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

MetricsReport evaluate(std::span<const Label> labels, std::span<const double> scores,
                       const CostSpec& cost, double threshold,
                       std::span<const double> lift_fractions) {
  std::vector<Label> preds(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) preds[i] = scores[i] >= threshold ? 1 : 0;
  const auto c = confusion(labels, preds);
  MetricsReport report;
  report.accuracy = accuracy(c);
  report.tpr = tpr(c);
  report.tnr = tnr(c);
  report.gmean = gmean(c);
  report.type_i_error = type_i_error(c);
  report.type_ii_error = type_ii_error(c);
  report.total_cost = total_cost(c, cost);
  report.auc = roc_auc(labels, scores).auc;
  if (!lift_fractions.empty()) report.lift_points = lift_curve(labels, scores, lift_fractions);
  return report;
}

}  // namespace gatune
