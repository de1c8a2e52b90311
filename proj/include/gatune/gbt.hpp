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
#include <iosfwd>
#include <span>
#include <vector>

#include "gatune/data.hpp"

namespace gatune {

// Booster configuration. The first seven fields are the searched ones; their
// search ranges are checked by within_search_ranges(), while validate() only
// rejects values the trainer cannot run with (the library defaults use
// gamma = 0, which lies outside the search range).
struct HyperParams {
  double learning_rate = 0.3;
  int n_estimators = 100;
  int max_depth = 6;
  double min_child_weight = 1.0;
  double gamma = 0.0;
  double subsample = 1.0;
  double colsample_bytree = 1.0;
  double reg_lambda = 1.0;
  double scale_pos_weight = 1.0;

  // 0.3, 100, 6, 1, 0, 1, 1 with reg_lambda = 1 and no class weighting.
  static HyperParams defaults() { return {}; }

  void validate() const;
  bool within_search_ranges() const;

  bool operator==(const HyperParams&) const = default;
};

// Misclassification costs: lambda_fn for a missed positive, mu_fp (always 1)
// for a false alarm.
struct CostSpec {
  double lambda_fn = 1.0;
  double mu_fp = 1.0;

  explicit CostSpec(double lambda = 1.0);
};

struct TreeNode {
  int feature = -1;  // column position; -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double weight = 0.0;  // raw leaf value -G/(H + reg_lambda)

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

// Flat binary tree, root at node 0. value < threshold goes left.
class RegressionTree {
 public:
  RegressionTree() = default;
  explicit RegressionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::vector<TreeNode>& nodes() { return nodes_; }

  int leaf_of(std::span<const double> row) const;
  double leaf_value(std::span<const double> row) const {
    return nodes_[static_cast<std::size_t>(leaf_of(row))].weight;
  }
  // Edges on the longest root-to-leaf path.
  int depth() const;
  std::size_t leaf_count() const;

  bool operator==(const RegressionTree&) const = default;

 private:
  std::vector<TreeNode> nodes_;
};

struct GbtModel {
  std::vector<RegressionTree> trees;
  double base_score_logit = 0.0;
  double learning_rate = 0.3;
  std::size_t feature_count = 0;
  std::vector<int> feature_indices;  // schema index of each model column
  HyperParams params;
  std::uint64_t seed = 0;

  double margin(std::span<const double> row) const;
};

double sigmoid(double margin);

GbtModel train(const EncodedDataset& data, const HyperParams& params, std::uint64_t seed);

double predict_proba(const GbtModel& model, std::span<const double> row);
Label predict_label(const GbtModel& model, std::span<const double> row,
                    double threshold = 0.5);
std::vector<double> predict_proba(const GbtModel& model, const EncodedDataset& data);

struct TimingSummary {
  std::vector<double> samples;  // seconds per full pass
  double min = 0.0;
  double median = 0.0;
  double mean = 0.0;
};

TimingSummary time_inference(const GbtModel& model, const EncodedDataset& data,
                             int repetitions);

void save_model(std::ostream& out, const GbtModel& model);
GbtModel load_model(std::istream& in);

}  // namespace gatune
