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

#include <cmath>

#include "gatune/error.hpp"
#include "gatune/metrics.hpp"
#include "gatune/random.hpp"
#include "support/oracles.hpp"

using namespace gatune;

TEST_CASE("confusion orientation") {
  const std::vector<Label> y{1, 1, 0, 0};
  const auto c = confusion(y, std::vector<Label>{1, 0, 0, 1});
  CHECK(c.tp == 1);
  CHECK(c.fn == 1);
  CHECK(c.tn == 1);
  CHECK(c.fp == 1);
  const auto same = confusion(y, y);
  CHECK(same.fp == 0);
  CHECK(same.fn == 0);
  const auto flipped = confusion(y, std::vector<Label>{0, 0, 1, 1});
  CHECK(flipped.tp == 0);
  CHECK(flipped.tn == 0);
  CHECK_THROWS_AS(confusion(y, std::vector<Label>{1}), Error);
  CHECK_THROWS_AS(confusion(std::vector<Label>{}, std::vector<Label>{}), Error);
}

TEST_CASE("rates from counts") {
  ConfusionCounts c{90, 19, 81, 10};
  CHECK(tpr(c) == 0.9);
  CHECK(tnr(c) == 0.81);
  CHECK(gmean(c) == doctest::Approx(std::sqrt(0.729)).epsilon(1e-15));
  CHECK(gmean(c) == doctest::Approx(0.85381).epsilon(1e-5));

  ConfusionCounts perfect{5, 0, 7, 0};
  CHECK(accuracy(perfect) == 1.0);
  CHECK(gmean(perfect) == 1.0);
  CHECK(type_i_error(perfect) == 0.0);
  CHECK(type_ii_error(perfect) == 0.0);
  CHECK(total_cost(perfect, CostSpec(6)) == 0.0);

  ConfusionCounts no_pos{0, 3, 4, 0};
  CHECK_THROWS_WITH_AS(tpr(no_pos), doctest::Contains("TPR"), Error);
  CHECK_THROWS_WITH_AS(type_i_error(no_pos), doctest::Contains("Type I"), Error);
  ConfusionCounts no_neg{3, 0, 0, 4};
  CHECK_THROWS_WITH_AS(tnr(no_neg), doctest::Contains("TNR"), Error);
  CHECK_THROWS_WITH_AS(type_ii_error(no_neg), doctest::Contains("Type II"), Error);
}

TEST_CASE("published averages for J are mutually consistent") {
  const double t = 1.0 - 0.059;
  const double s = 1.0 - 0.157;
  CHECK(std::sqrt(t * s) == doctest::Approx(0.8907).epsilon(5e-3));
}

TEST_CASE("total cost") {
  ConfusionCounts c{4, 3, 9, 2};
  CHECK(total_cost(c, CostSpec(6)) == 15.0);
  CHECK(total_cost(c, CostSpec(1)) == 5.0);
}

TEST_CASE("metric identities on random matrices") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    ConfusionCounts c{1 + rng.index(500), rng.index(500), 1 + rng.index(500), rng.index(500)};
    const double a = tpr(c);
    const double b = tnr(c);
    CHECK(std::abs(gmean(c) * gmean(c) - a * b) <= 1e-12);
    CHECK(std::abs(type_i_error(c) - (1.0 - a)) <= 1e-12);
    CHECK(std::abs(type_ii_error(c) - (1.0 - b)) <= 1e-12);
    CHECK(gmean(c) <= (a + b) / 2 + 1e-15);
    CHECK(total_cost(c, CostSpec(1)) == static_cast<double>(c.fn + c.fp));
    const double n = static_cast<double>(c.total());
    CHECK(std::abs(total_cost(c, CostSpec(1)) - (1.0 - accuracy(c)) * n) <= 1e-9);
    const double prev = static_cast<double>(c.tp + c.fn) / n;
    CHECK(std::abs(accuracy(c) - (prev * a + (1 - prev) * b)) <= 1e-12);
  }
}

TEST_CASE("AUC examples") {
  const std::vector<Label> y{1, 0, 1, 0};
  CHECK(roc_auc(y, std::vector<double>{0.9, 0.8, 0.4, 0.3}).auc == 0.75);
  CHECK(roc_auc(y, std::vector<double>{0.9, 0.1, 0.8, 0.2}).auc == 1.0);
  const auto tied = roc_auc(y, std::vector<double>{0.5, 0.5, 0.5, 0.5});
  CHECK(tied.auc == 0.5);
  REQUIRE(tied.points.size() == 2);
  CHECK(tied.points.front().fpr == 0.0);
  CHECK(tied.points.back().tpr == 1.0);
  CHECK_THROWS_AS(roc_auc(std::vector<Label>{1, 1}, std::vector<double>{0.1, 0.2}), Error);
}

TEST_CASE("AUC equals the pairwise statistic") {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + rng.index(199);
    std::vector<Label> y(n);
    std::vector<double> s(n);
    for (std::size_t j = 0; j < n; ++j) {
      y[j] = rng.bernoulli(0.3);
      s[j] = static_cast<double>(rng.index(i % 2 ? 10 : 1000)) / 10.0;
    }
    y[0] = 1;
    y[1] = 0;
    CHECK(std::abs(roc_auc(y, s).auc - testing::pairwise_auc(y, s)) <= 1e-12);
  }
}

TEST_CASE("lift") {
  std::vector<Label> y(100, 0);
  std::vector<double> s(100);
  for (int i = 0; i < 100; ++i) s[i] = 1.0 - i / 100.0;
  for (int i = 0; i < 10; ++i) y[i] = 1;
  const auto pts = lift_curve(y, s, decile_fractions());
  REQUIRE(pts.size() == 10);
  CHECK(pts[0].lift == 10.0);
  CHECK(pts[9].lift == 1.0);

  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 10 + rng.index(300);
    std::vector<Label> yy(n);
    std::vector<double> ss(n);
    std::size_t pos = 0;
    for (std::size_t j = 0; j < n; ++j) {
      yy[j] = rng.bernoulli(0.2);
      ss[j] = rng.uniform01();
    }
    yy[0] = 1;
    yy[1] = 0;
    for (auto v : yy) pos += v;
    const auto curve = lift_curve(yy, ss, decile_fractions());
    CHECK(curve.back().lift == 1.0);
    for (const auto& p : curve) CHECK(p.lift <= static_cast<double>(n) / pos + 1e-12);
  }
  CHECK_THROWS_AS(lift_curve(y, s, std::vector<double>{0.5, 0.2}), Error);
  CHECK_THROWS_AS(lift_curve(y, s, std::vector<double>{0.0}), Error);
}

TEST_CASE("lift ties keep row order") {
  const std::vector<Label> y{0, 1, 0, 1};
  const std::vector<double> s{0.5, 0.5, 0.5, 0.5};
  // Top half is rows 0 and 1: one of two positives.
  CHECK(lift_curve(y, s, std::vector<double>{0.5})[0].lift == 1.0);
}

TEST_CASE("spearman") {
  const std::vector<double> up{1, 2, 3};
  CHECK(*spearman_rank_corr(up, std::vector<double>{2, 5, 9}) == doctest::Approx(1.0));
  CHECK(*spearman_rank_corr(up, std::vector<double>{3, 2, 1}) == doctest::Approx(-1.0));
  CHECK_FALSE(spearman_rank_corr(std::vector<double>{4, 4, 4}, up).has_value());
  CHECK(*spearman_rank_corr(std::vector<double>{0, 1}, std::vector<double>{0.8, 0.9}) == 1.0);
  CHECK_THROWS_AS(spearman_rank_corr(up, std::vector<double>{1, 2}), Error);

  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> x(20), y(20), fx(20);
    for (int j = 0; j < 20; ++j) {
      x[j] = static_cast<double>(rng.index(6));
      y[j] = rng.uniform01();
      fx[j] = std::exp(x[j]) * 3 - 1;
    }
    const auto a = spearman_rank_corr(x, y);
    const auto b = spearman_rank_corr(fx, y);
    REQUIRE(a.has_value() == b.has_value());
    if (a) CHECK(*a == doctest::Approx(*b).epsilon(1e-12));
  }
}

TEST_CASE("evaluate bundles the metrics") {
  const std::vector<Label> y{1, 0, 1, 0, 0};
  const std::vector<double> s{0.9, 0.6, 0.3, 0.2, 0.1};
  const auto r = evaluate(y, s, CostSpec(6), 0.5, decile_fractions());
  CHECK(r.tpr == 0.5);
  CHECK(r.tnr == 2.0 / 3.0);
  CHECK(r.total_cost == 7.0);
  CHECK(r.lift_points.size() == 10);
  CHECK(r.auc == testing::pairwise_auc(y, s));
}
