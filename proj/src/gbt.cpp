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

#include "gatune/gbt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gatune/error.hpp"
#include "gatune/random.hpp"

namespace gatune {
namespace {

constexpr double kMaxProbability = 1.0 - 0x1p-53;
constexpr double kMinProbability = 0x1p-53;

bool in_range(double v, double lo, double hi) { return v >= lo && v <= hi; }

// Distinct sorted values of one column and the bin of every row.
struct BinnedColumn {
  std::vector<double> values;
  std::vector<std::uint32_t> bin_of_row;
};

std::vector<BinnedColumn> bin_columns(const EncodedDataset& data) {
  const std::size_t n = data.rows();
  std::vector<BinnedColumn> columns(data.cols());
  std::vector<std::pair<double, std::uint32_t>> sorted(n);
  for (std::size_t c = 0; c < data.cols(); ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      sorted[r] = {data.at(r, c), static_cast<std::uint32_t>(r)};
    }
    std::sort(sorted.begin(), sorted.end());
    auto& col = columns[c];
    col.bin_of_row.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (col.values.empty() || col.values.back() != sorted[i].first) {
        col.values.push_back(sorted[i].first);
      }
      col.bin_of_row[sorted[i].second] = static_cast<std::uint32_t>(col.values.size() - 1);
    }
  }
  return columns;
}

double midpoint(double a, double b) {
  double mid = a + (b - a) / 2.0;
  if (!std::isfinite(mid)) mid = a / 2.0 + b / 2.0;
  if (!(a < mid)) mid = b;
  return mid;
}

// Compensated sum. Node statistics are then independent of summation order
// to well below double precision, so exact gain ties stay ties and a row
// weighted by k sums like k copies of it.
struct Sum2 {
  double hi = 0.0;
  double lo = 0.0;

  void add(double a, double a_lo = 0.0) {
    const double s = hi + a;
    const double b = s - hi;
    lo += (hi - (s - b)) + (a - b) + a_lo;
    hi = s;
  }
  void add(const Sum2& o) { add(o.hi, o.lo); }
  Sum2 minus(const Sum2& o) const {
    Sum2 r = *this;
    r.add(-o.hi, -o.lo);
    return r;
  }
  double value() const { return hi + lo; }
};

// Per-row gradient or hessian as an unevaluated sum hi + lo.
struct RowStats {
  std::vector<double> hi;
  std::vector<double> lo;

  void add_to(Sum2& s, std::size_t r) const { s.add(hi[r], lo[r]); }
};

struct GradStats {
  Sum2 g;
  Sum2 h;
  std::uint32_t count = 0;
};

struct SplitCandidate {
  bool found = false;
  std::size_t column = 0;
  std::uint32_t last_left_bin = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

class TreeGrower {
 public:
  TreeGrower(const std::vector<BinnedColumn>& columns, const RowStats& grad,
             const RowStats& hess, const std::vector<std::size_t>& active_columns,
             const HyperParams& params)
      : columns_(columns), grad_(grad), hess_(hess), active_(active_columns), params_(params) {
    std::size_t max_bins = 0;
    for (auto c : active_) max_bins = std::max(max_bins, columns_[c].values.size());
    histogram_.resize(max_bins);
  }

  RegressionTree grow(std::vector<std::uint32_t> rows) {
    nodes_.clear();
    grow_node(std::move(rows), 0);
    return RegressionTree(std::move(nodes_));
  }

 private:
  int grow_node(std::vector<std::uint32_t> rows, int depth) {
    Sum2 sum_g;
    Sum2 sum_h;
    for (auto r : rows) {
      grad_.add_to(sum_g, r);
      hess_.add_to(sum_h, r);
    }
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();

    SplitCandidate best;
    if (depth < params_.max_depth && rows.size() > 1) best = find_split(rows, sum_g, sum_h);
    if (!best.found) {
      nodes_[id].weight = -sum_g.value() / (sum_h.value() + params_.reg_lambda);
      return id;
    }

    const auto& bins = columns_[best.column].bin_of_row;
    std::vector<std::uint32_t> left;
    std::vector<std::uint32_t> right;
    for (auto r : rows) (bins[r] <= best.last_left_bin ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();

    nodes_[id].feature = static_cast<int>(best.column);
    nodes_[id].threshold = best.threshold;
    const int l = grow_node(std::move(left), depth + 1);
    const int r = grow_node(std::move(right), depth + 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  // Scans the columns in ascending position and thresholds in ascending
  // order; only a strictly larger gain replaces the incumbent.
  SplitCandidate find_split(const std::vector<std::uint32_t>& rows, const Sum2& sum_g,
                            const Sum2& sum_h) {
    SplitCandidate best;
    const double lambda = params_.reg_lambda;
    const double g = sum_g.value();
    const double parent_score = g * g / (sum_h.value() + lambda);
    for (std::size_t column : active_) {
      const auto& col = columns_[column];
      auto consider = [&](std::uint32_t prev_bin, std::uint32_t next_bin, const Sum2& left_g,
                          const Sum2& left_h) {
        const double gl = left_g.value();
        const double hl = left_h.value();
        const double gr = sum_g.minus(left_g).value();
        const double hr = sum_h.minus(left_h).value();
        if (hl < params_.min_child_weight || hr < params_.min_child_weight) return;
        const double gain =
            0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) - parent_score) -
            params_.gamma;
        if (gain > 0.0 && (!best.found || gain > best.gain)) {
          best.found = true;
          best.column = column;
          best.last_left_bin = prev_bin;
          best.threshold = midpoint(col.values[prev_bin], col.values[next_bin]);
          best.gain = gain;
        }
      };

      if (rows.size() * 4 < col.values.size()) {
        // Few rows relative to distinct values: sort the node's entries.
        entries_.clear();
        for (auto r : rows) entries_.push_back({col.bin_of_row[r], r});
        std::sort(entries_.begin(), entries_.end());
        Sum2 gl;
        Sum2 hl;
        std::size_t i = 0;
        bool have_prev = false;
        std::uint32_t prev_bin = 0;
        while (i < entries_.size()) {
          const std::uint32_t bin = entries_[i].first;
          GradStats stats;
          for (; i < entries_.size() && entries_[i].first == bin; ++i) {
            grad_.add_to(stats.g, entries_[i].second);
            hess_.add_to(stats.h, entries_[i].second);
          }
          if (have_prev) consider(prev_bin, bin, gl, hl);
          gl.add(stats.g);
          hl.add(stats.h);
          prev_bin = bin;
          have_prev = true;
        }
      } else {
        const std::size_t nbins = col.values.size();
        std::fill(histogram_.begin(), histogram_.begin() + static_cast<std::ptrdiff_t>(nbins),
                  GradStats{});
        for (auto r : rows) {
          auto& cell = histogram_[col.bin_of_row[r]];
          grad_.add_to(cell.g, r);
          hess_.add_to(cell.h, r);
          ++cell.count;
        }
        Sum2 gl;
        Sum2 hl;
        bool have_prev = false;
        std::uint32_t prev_bin = 0;
        for (std::uint32_t bin = 0; bin < nbins; ++bin) {
          const auto& cell = histogram_[bin];
          if (cell.count == 0) continue;
          if (have_prev) consider(prev_bin, bin, gl, hl);
          gl.add(cell.g);
          hl.add(cell.h);
          prev_bin = bin;
          have_prev = true;
        }
      }
    }
    return best;
  }

  const std::vector<BinnedColumn>& columns_;
  const RowStats& grad_;
  const RowStats& hess_;
  const std::vector<std::size_t>& active_;
  const HyperParams& params_;
  std::vector<TreeNode> nodes_;
  std::vector<GradStats> histogram_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries_;
};

}  // namespace

void HyperParams::validate() const {
  auto fail = [](const std::string& name, double v) {
    throw Error("hyperparameter " + name + " = " + std::to_string(v) + " is invalid");
  };
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) fail("learning_rate", learning_rate);
  if (n_estimators < 0) fail("n_estimators", n_estimators);
  if (max_depth < 1) fail("max_depth", max_depth);
  if (!(min_child_weight >= 0.0)) fail("min_child_weight", min_child_weight);
  if (!(gamma >= 0.0)) fail("gamma", gamma);
  if (!(subsample > 0.0 && subsample <= 1.0)) fail("subsample", subsample);
  if (!(colsample_bytree > 0.0 && colsample_bytree <= 1.0)) fail("colsample_bytree", colsample_bytree);
  if (!(reg_lambda >= 0.0)) fail("reg_lambda", reg_lambda);
  if (!(scale_pos_weight > 0.0) || !std::isfinite(scale_pos_weight)) {
    fail("scale_pos_weight", scale_pos_weight);
  }
}

bool HyperParams::within_search_ranges() const {
  return in_range(learning_rate, 0.01, 1.0) && n_estimators >= 10 && n_estimators <= 1500 &&
         max_depth >= 1 && max_depth <= 10 && in_range(min_child_weight, 0.01, 10.0) &&
         in_range(gamma, 0.01, 10.0) && subsample > 0.0 && subsample <= 1.0 &&
         colsample_bytree > 0.0 && colsample_bytree <= 1.0;
}

CostSpec::CostSpec(double lambda) : lambda_fn(lambda), mu_fp(1.0) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) {
    throw Error("false-negative cost lambda = " + std::to_string(lambda) + " must be >= 1");
  }
}

int RegressionTree::leaf_of(std::span<const double> row) const {
  int id = 0;
  while (!nodes_[static_cast<std::size_t>(id)].is_leaf()) {
    const auto& node = nodes_[static_cast<std::size_t>(id)];
    id = row[static_cast<std::size_t>(node.feature)] < node.threshold ? node.left : node.right;
  }
  return id;
}

int RegressionTree::depth() const {
  if (nodes_.empty()) return 0;
  std::vector<int> depth_of(nodes_.size(), 0);
  int deepest = 0;
  // Children always follow their parent in the node list.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& node = nodes_[i];
    deepest = std::max(deepest, depth_of[i]);
    if (!node.is_leaf()) {
      depth_of[static_cast<std::size_t>(node.left)] = depth_of[i] + 1;
      depth_of[static_cast<std::size_t>(node.right)] = depth_of[i] + 1;
    }
  }
  return deepest;
}

std::size_t RegressionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

double GbtModel::margin(std::span<const double> row) const {
  double m = base_score_logit;
  for (const auto& tree : trees) m += learning_rate * tree.leaf_value(row);
  return m;
}

double sigmoid(double margin) {
  const double p = 1.0 / (1.0 + std::exp(-margin));
  return std::clamp(p, kMinProbability, kMaxProbability);
}

GbtModel train(const EncodedDataset& data, const HyperParams& params, std::uint64_t seed) {
  params.validate();
  const std::size_t n = data.rows();
  const std::size_t f = data.cols();
  if (n == 0) throw Error("cannot train on an empty dataset");
  if (f == 0) throw Error("cannot train without feature columns");
  for (double v : data.values()) {
    if (!std::isfinite(v)) throw Error("training data contains a non-finite feature value");
  }

  GbtModel model;
  model.learning_rate = params.learning_rate;
  model.feature_count = f;
  model.params = params;
  model.seed = seed;
  for (const auto& entry : data.schema().entries()) model.feature_indices.push_back(entry.index);

  const auto columns = bin_columns(data);
  const auto& labels = data.labels();
  std::vector<double> margin(n, model.base_score_logit);
  RowStats grad{std::vector<double>(n), std::vector<double>(n)};
  RowStats hess{std::vector<double>(n), std::vector<double>(n)};

  const std::size_t row_count = params.subsample >= 1.0
      ? n
      : std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(params.subsample * n)));
  const std::size_t col_count = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(params.colsample_bytree * f - 1e-9)), 1, f);

  model.trees.reserve(static_cast<std::size_t>(params.n_estimators));
  for (int t = 0; t < params.n_estimators; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(margin[i]);
      const double w = labels[i] == 1 ? params.scale_pos_weight : 1.0;
      // Weighted values kept exact: w * v == hi + lo.
      const double d = p - labels[i];
      const double q = p * (1.0 - p);
      grad.hi[i] = w * d;
      grad.lo[i] = std::fma(w, d, -grad.hi[i]);
      hess.hi[i] = w * q;
      hess.lo[i] = std::fma(w, q, -hess.hi[i]);
    }

    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(t)}));
    std::vector<std::uint32_t> rows;
    if (row_count == n) {
      rows.resize(n);
      std::iota(rows.begin(), rows.end(), 0u);
    } else {
      for (auto r : rng.sample_without_replacement(n, row_count)) {
        rows.push_back(static_cast<std::uint32_t>(r));
      }
      std::sort(rows.begin(), rows.end());
    }
    std::vector<std::size_t> active;
    if (col_count == f) {
      active.resize(f);
      std::iota(active.begin(), active.end(), std::size_t{0});
    } else {
      active = rng.sample_without_replacement(f, col_count);
      std::sort(active.begin(), active.end());
    }

    TreeGrower grower(columns, grad, hess, active, params);
    model.trees.push_back(grower.grow(std::move(rows)));
    const auto& tree = model.trees.back();
    for (std::size_t i = 0; i < n; ++i) margin[i] += model.learning_rate * tree.leaf_value(data.row(i));
  }
  return model;
}

double predict_proba(const GbtModel& model, std::span<const double> row) {
  if (row.size() != model.feature_count) {
    throw Error("row has " + std::to_string(row.size()) + " values, model expects " +
                std::to_string(model.feature_count));
  }
  return sigmoid(model.margin(row));
}

Label predict_label(const GbtModel& model, std::span<const double> row, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error("classification threshold " + std::to_string(threshold) + " is outside (0,1)");
  }
  return predict_proba(model, row) >= threshold ? 1 : 0;
}

std::vector<double> predict_proba(const GbtModel& model, const EncodedDataset& data) {
  if (data.cols() != model.feature_count) {
    throw Error("dataset has " + std::to_string(data.cols()) + " columns, model expects " +
                std::to_string(model.feature_count));
  }
  std::vector<double> out(data.rows());
  for (std::size_t r = 0; r < data.rows(); ++r) out[r] = sigmoid(model.margin(data.row(r)));
  return out;
}

TimingSummary time_inference(const GbtModel& model, const EncodedDataset& data,
                             int repetitions) {
  if (repetitions < 3) {
    throw Error("timing needs at least 3 repetitions, got " + std::to_string(repetitions));
  }
  TimingSummary summary;
  volatile double sink = 0.0;
  for (int i = 0; i < repetitions; ++i) {
    const auto start = std::chrono::steady_clock::now();
    const auto scores = predict_proba(model, data);
    const auto stop = std::chrono::steady_clock::now();
    if (!scores.empty()) sink = sink + scores.front();
    summary.samples.push_back(std::chrono::duration<double>(stop - start).count());
  }
  auto sorted = summary.samples;
  std::sort(sorted.begin(), sorted.end());
  summary.min = sorted.front();
  const std::size_t mid = sorted.size() / 2;
  summary.median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  summary.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / sorted.size();
  return summary;
}

}  // namespace gatune
