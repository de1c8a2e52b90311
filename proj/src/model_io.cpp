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

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "gatune/error.hpp"
#include "gatune/gbt.hpp"

namespace gatune {
namespace {

constexpr const char* kMagic = "gatune-gbt-model";
constexpr int kFormatVersion = 1;

template <typename T>
T read_value(std::istream& in, const std::string& key) {
  std::string word;
  if (!(in >> word) || word != key) {
    throw Error("model file: expected '" + key + "', found '" + word + "'");
  }
  T value{};
  if (!(in >> value)) throw Error("model file: bad value for '" + key + "'");
  return value;
}

void expect_word(std::istream& in, const std::string& expected) {
  std::string word;
  if (!(in >> word) || word != expected) {
    throw Error("model file: expected '" + expected + "', found '" + word + "'");
  }
}

}  // namespace

// Layout:
//   gatune-gbt-model 1
//   feature_count N / feature_indices N i... / base_score_logit / learning_rate / seed
//   params <nine key value pairs>
//   tree_count T
//   tree t nodes K, then one line per node:
//     <id> split <column> <threshold> <left> <right>
//     <id> leaf <weight>
//   end
void save_model(std::ostream& out, const GbtModel& model) {
  std::ostringstream os;
  os.precision(17);
  const auto& p = model.params;
  os << kMagic << ' ' << kFormatVersion << '\n';
  os << "feature_count " << model.feature_count << '\n';
  os << "feature_indices " << model.feature_indices.size();
  for (int i : model.feature_indices) os << ' ' << i;
  os << '\n';
  os << "base_score_logit " << model.base_score_logit << '\n';
  os << "learning_rate " << model.learning_rate << '\n';
  os << "seed " << model.seed << '\n';
  os << "params learning_rate " << p.learning_rate << " n_estimators " << p.n_estimators
     << " max_depth " << p.max_depth << " min_child_weight " << p.min_child_weight << " gamma "
     << p.gamma << " subsample " << p.subsample << " colsample_bytree " << p.colsample_bytree
     << " reg_lambda " << p.reg_lambda << " scale_pos_weight " << p.scale_pos_weight << '\n';
  os << "tree_count " << model.trees.size() << '\n';
  for (std::size_t t = 0; t < model.trees.size(); ++t) {
    const auto& nodes = model.trees[t].nodes();
    os << "tree " << t << " nodes " << nodes.size() << '\n';
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& node = nodes[i];
      if (node.is_leaf()) {
        os << i << " leaf " << node.weight << '\n';
      } else {
        os << i << " split " << node.feature << ' ' << node.threshold << ' ' << node.left << ' '
           << node.right << '\n';
      }
    }
  }
  os << "end\n";
  out << os.str();
}

GbtModel load_model(std::istream& in) {
  GbtModel model;
  expect_word(in, kMagic);
  int version = 0;
  if (!(in >> version) || version != kFormatVersion) {
    throw Error("model file: unsupported format version " + std::to_string(version));
  }
  model.feature_count = read_value<std::size_t>(in, "feature_count");
  const auto index_count = read_value<std::size_t>(in, "feature_indices");
  model.feature_indices.resize(index_count);
  for (auto& i : model.feature_indices) {
    if (!(in >> i)) throw Error("model file: truncated feature_indices");
  }
  model.base_score_logit = read_value<double>(in, "base_score_logit");
  model.learning_rate = read_value<double>(in, "learning_rate");
  model.seed = read_value<std::uint64_t>(in, "seed");
  expect_word(in, "params");
  auto& p = model.params;
  p.learning_rate = read_value<double>(in, "learning_rate");
  p.n_estimators = read_value<int>(in, "n_estimators");
  p.max_depth = read_value<int>(in, "max_depth");
  p.min_child_weight = read_value<double>(in, "min_child_weight");
  p.gamma = read_value<double>(in, "gamma");
  p.subsample = read_value<double>(in, "subsample");
  p.colsample_bytree = read_value<double>(in, "colsample_bytree");
  p.reg_lambda = read_value<double>(in, "reg_lambda");
  p.scale_pos_weight = read_value<double>(in, "scale_pos_weight");

  const auto tree_count = read_value<std::size_t>(in, "tree_count");
  model.trees.reserve(tree_count);
  for (std::size_t t = 0; t < tree_count; ++t) {
    if (read_value<std::size_t>(in, "tree") != t) throw Error("model file: trees out of order");
    const auto node_count = read_value<std::size_t>(in, "nodes");
    std::vector<TreeNode> nodes(node_count);
    for (std::size_t i = 0; i < node_count; ++i) {
      std::size_t id = 0;
      std::string kind;
      if (!(in >> id >> kind) || id != i) throw Error("model file: bad node line in tree " + std::to_string(t));
      auto& node = nodes[i];
      if (kind == "leaf") {
        if (!(in >> node.weight)) throw Error("model file: bad leaf weight");
      } else if (kind == "split") {
        if (!(in >> node.feature >> node.threshold >> node.left >> node.right)) {
          throw Error("model file: bad split node");
        }
        const auto limit = static_cast<int>(node_count);
        if (node.feature < 0 || static_cast<std::size_t>(node.feature) >= model.feature_count ||
            node.left <= static_cast<int>(i) || node.right <= static_cast<int>(i) ||
            node.left >= limit || node.right >= limit) {
          throw Error("model file: split node " + std::to_string(i) + " has invalid links");
        }
      } else {
        throw Error("model file: unknown node kind '" + kind + "'");
      }
    }
    model.trees.emplace_back(std::move(nodes));
  }
  expect_word(in, "end");
  return model;
}

}  // namespace gatune
