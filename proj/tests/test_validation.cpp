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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gatune/error.hpp"
#include "gatune/random.hpp"
#include "gatune/validation.hpp"
#include "support/synthetic.hpp"

using namespace gatune;

namespace {

std::vector<int> fold_sizes(const FoldAssignment& f, const std::vector<Label>& y, bool positives) {
  std::vector<int> sizes(static_cast<std::size_t>(f.k), 0);
  for (std::size_t r = 0; r < y.size(); ++r) {
    if (!positives || y[r] == 1) ++sizes[static_cast<std::size_t>(f.fold_of_row[r])];
  }
  return sizes;
}

int spread(const std::vector<int>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

}  // namespace

TEST_CASE("20 rows with 4 positives into 10 folds") {
  std::vector<Label> y(20, 0);
  for (int i = 0; i < 4; ++i) y[static_cast<std::size_t>(i * 5)] = 1;
  const auto f = stratified_kfold(y, 10, 7, true);
  CHECK(fold_sizes(f, y, false) == std::vector<int>(10, 2));
  const auto pos = fold_sizes(f, y, true);
  CHECK(std::count(pos.begin(), pos.end(), 0) == 6);
  CHECK(std::count(pos.begin(), pos.end(), 1) == 4);
  CHECK_THROWS_AS(stratified_kfold(y, 10, 7), Error);
}

TEST_CASE("k = n gives leave-one-out") {
  std::vector<Label> y{0, 1, 0, 1, 0, 0};
  const auto f = stratified_kfold(y, 6, 3, true);
  auto folds = f.fold_of_row;
  std::sort(folds.begin(), folds.end());
  CHECK(folds == std::vector<int>{0, 1, 2, 3, 4, 5});
  for (int k = 0; k < 6; ++k) {
    CHECK(f.test_rows(k).size() == 1);
    CHECK(f.train_rows(k).size() == 5);
  }
}

TEST_CASE("fold assignment is deterministic and seed dependent") {
  Rng rng(3);
  std::vector<Label> y(200);
  for (auto& v : y) v = rng.bernoulli(0.2);
  CHECK(stratified_kfold(y, 10, 5).fold_of_row == stratified_kfold(y, 10, 5).fold_of_row);
  CHECK(stratified_kfold(y, 10, 5).fold_of_row != stratified_kfold(y, 10, 6).fold_of_row);
}

TEST_CASE("fold balance on random instances") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const int k = 2 + static_cast<int>(rng.index(9));
    const std::size_t n = static_cast<std::size_t>(2 * k) + rng.index(400);
    const double prevalence = 0.05 + 0.5 * rng.uniform01();
    std::vector<Label> y(n);
    for (auto& v : y) v = rng.bernoulli(prevalence);
    for (int j = 0; j < k; ++j) {
      y[static_cast<std::size_t>(j)] = 1;
      y[static_cast<std::size_t>(k + j)] = 0;
    }
    const auto f = stratified_kfold(y, k, i);
    const auto sizes = fold_sizes(f, y, false);
    CHECK(spread(sizes) <= 1);
    CHECK(spread(fold_sizes(f, y, true)) <= 1);
    std::size_t pos = 0;
    for (auto v : y) pos += v;
    const double global = static_cast<double>(pos) / n;
    std::vector<int> seen(n, 0);
    for (int fold = 0; fold < k; ++fold) {
      const auto rows = f.test_rows(fold);
      std::size_t fp = 0;
      for (auto r : rows) {
        ++seen[r];
        fp += y[r];
      }
      CHECK(std::abs(static_cast<double>(fp) / rows.size() - global) <= 1.0 / rows.size() + 1e-12);
      CHECK(f.train_rows(fold).size() + rows.size() == n);
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
  }
}

TEST_CASE("holdout is stratified and disjoint") {
  Rng rng(12);
  std::vector<Label> y(1000);
  for (auto& v : y) v = rng.bernoulli(0.11);
  const auto s = stratified_holdout(y, 0.2, 4);
  CHECK(s.train.size() + s.test.size() == y.size());
  std::vector<std::size_t> all = s.train;
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  std::size_t pos = 0, test_pos = 0;
  for (auto v : y) pos += v;
  for (auto r : s.test) test_pos += y[r];
  CHECK(test_pos == static_cast<std::size_t>(std::llround(0.2 * pos)));
  CHECK_THROWS_AS(stratified_holdout(std::vector<Label>{0, 0, 1}, 0.2, 1), Error);
}

TEST_CASE("aggregate") {
  const std::vector<double> v{0.2, 0.4, 0.9};
  const auto a = aggregate(v);
  CHECK(a.min == 0.2);
  CHECK(a.max == 0.9);
  CHECK(a.avg == doctest::Approx(0.5));
  CHECK(a.sd == doctest::Approx(std::sqrt((0.09 + 0.01 + 0.16) / 2)));
  const std::vector<double> one{0.1};
  CHECK(aggregate(one).sd == 0.0);
  const std::vector<double> same(7, 0.1);
  CHECK(aggregate(same).avg == 0.1);
  CHECK_THROWS_AS(aggregate(std::vector<double>{}), Error);
}

TEST_CASE("repeated CV report") {
  const auto data = testing::synthetic_bank(600, 2);
  HyperParams p;
  p.n_estimators = 20;
  p.max_depth = 3;
  p.scale_pos_weight = 6;
  CvOptions opt;
  opt.k = 5;
  opt.repeats = 3;
  opt.seed = 9;
  const std::vector<int> features{0, 1, 8, 45, 50, 52, 62};
  const auto report = repeated_cv(data, features, p, opt);
  CHECK(report.model_count == 15);
  CHECK(report.per_model.size() == 15);
  for (std::size_t m = 0; m < kCvMetricNames.size(); ++m) {
    const auto& a = report.aggregates[m];
    CHECK(a.min <= a.avg);
    CHECK(a.avg <= a.max);
    CHECK(a.sd >= 0.0);
  }
  const auto again = aggregate_records(report.per_model);
  for (std::size_t m = 0; m < kCvMetricNames.size(); ++m) {
    CHECK(again[m].min == report.aggregates[m].min);
    CHECK(again[m].avg == report.aggregates[m].avg);
    CHECK(again[m].max == report.aggregates[m].max);
    CHECK(again[m].sd == report.aggregates[m].sd);
  }
  CHECK(report.aggregate_of("lift_at_100").min == 1.0);
  CHECK(report.aggregate_of("lift_at_100").max == 1.0);
  CHECK(report.aggregate_of("gmean").avg > 0.5);
  CHECK_THROWS_AS(report.aggregate_of("f1"), Error);

  opt.threads = 1;
  const auto serial = repeated_cv(data, features, p, opt);
  opt.threads = 4;
  const auto parallel = repeated_cv(data, features, p, opt);
  for (std::size_t i = 0; i < serial.per_model.size(); ++i) {
    CHECK(serial.per_model[i].counts == parallel.per_model[i].counts);
    CHECK(serial.per_model[i].metrics.auc == parallel.per_model[i].metrics.auc);
  }
  opt.repeats = 0;
  CHECK_THROWS_AS(repeated_cv(data, features, p, opt), Error);
}

TEST_CASE("label-isomorphic folds give min = max") {
  // Rows within a class are identical, so both folds hold the same multiset.
  std::vector<FeatureEntry> entries{{0, "x", FeatureKind::kNumeric, "x", std::nullopt}};
  std::vector<double> x;
  std::vector<Label> y;
  for (int i = 0; i < 14; ++i) {
    const bool pos = i < 4;
    x.push_back(pos ? 1.0 : 0.0);
    y.push_back(pos ? 1 : 0);
  }
  EncodedDataset data(x, y, FeatureSchema(entries));
  HyperParams p;
  p.n_estimators = 5;
  p.min_child_weight = 0.1;
  CvOptions opt;
  opt.k = 2;
  opt.seed = 1;
  const auto report = repeated_cv(data, std::vector<int>{0}, p, opt);
  CHECK(report.model_count == 2);
  for (std::size_t m = 0; m < 10; ++m) {
    CHECK(report.aggregates[m].min == report.aggregates[m].max);
  }
}
