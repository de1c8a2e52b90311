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

#include <algorithm>

#include "gatune/error.hpp"
#include "gatune/experiments.hpp"

namespace gatune {
namespace {

HyperParams params(double lr, int trees, int depth, double mcw, double gamma, double subsample,
                   double colsample, double lambda) {
  HyperParams p;
  p.learning_rate = lr;
  p.n_estimators = trees;
  p.max_depth = depth;
  p.min_child_weight = mcw;
  p.gamma = gamma;
  p.subsample = subsample;
  p.colsample_bytree = colsample;
  p.reg_lambda = 1.0;
  p.scale_pos_weight = lambda;
  return p;
}

std::vector<RegisteredExperiment> build_registry() {
  // id, F, P, C, G, lambda, GA seconds, fitness, params, features,
  // CV GMean and CV AUC ranges.
  return {
      {"A", 0.30, 100, 0.20, 30, 6, 6163.667, 0.9021, params(0.18, 163, 6, 10, 6.76, 0.97, 0.5, 6),
       {1, 5, 6, 7, 8, 15, 21, 22, 24, 25, 26, 36, 40, 49, 53, 55, 56, 58, 60},
       {0.8619, 0.8884, 0.9071, 0.007}, {0.9351, 0.9481, 0.9591, 0.003}},
      {"B", 0.30, 100, 0.80, 50, 8, 9807.685, 0.8997, params(0.18, 10, 6, 10, 10, 0.97, 0.5, 8),
       {1, 3, 5, 6, 7, 8, 13, 21, 23, 28, 29, 31, 39, 48, 53, 55, 56},
       {0.8618, 0.8800, 0.9017, 0.006}, {0.9286, 0.9390, 0.9547, 0.004}},
      {"C", 0.10, 20, 0.70, 100, 6, 1171.609, 0.8983, params(0.36, 114, 3, 5.8, 4.34, 1, 0.61, 6),
       {0, 1, 6, 8, 21, 41, 46},
       {0.8615, 0.8875, 0.9075, 0.007}, {0.9338, 0.9454, 0.9546, 0.003}},
      {"D", 0.30, 100, 0.70, 30, 6, 3713.541, 0.8981, params(0.18, 294, 6, 10, 9.35, 0.97, 0.5, 6),
       {1, 2, 6, 7, 8, 15, 21, 22, 24, 25, 28, 31, 32, 39, 40, 51, 56, 59, 60},
       {0.8664, 0.8887, 0.9083, 0.007}, {0.9365, 0.9478, 0.9557, 0.003}},
      {"E", 0.10, 10, 0.20, 100, 6, 937.327, 0.8975, params(0.15, 320, 5, 10, 10, 0.51, 0.8, 6),
       {0, 1, 2, 5, 8, 14, 56},
       {0.8624, 0.8861, 0.9067, 0.007}, {0.9347, 0.9457, 0.9567, 0.003}},
      {"F", 0.10, 10, 0.50, 100, 6, 722.467, 0.8970, params(0.27, 444, 3, 10, 2.97, 0.95, 0.78, 6),
       {0, 1, 6, 8, 9, 47, 56},
       {0.8656, 0.8860, 0.9039, 0.007}, {0.9346, 0.9452, 0.9542, 0.003}},
      {"G", 0.20, 50, 0.80, 30, 8, 2306.898, 0.8968, params(0.15, 10, 4, 7.31, 8.23, 0.53, 0.82, 8),
       {0, 1, 2, 6, 7, 8, 14, 21, 25, 53, 54, 55, 56},
       {0.8564, 0.8743, 0.8917, 0.006}, {0.9230, 0.9361, 0.9482, 0.004}},
      {"H", 0.40, 20, 0.20, 30, 6, 1021.876, 0.8965, params(0.39, 280, 2, 10, 6.84, 0.61, 0.94, 6),
       {1, 5, 6, 7, 8, 9, 12, 13, 15, 16, 22, 27, 28, 29, 31, 36, 37, 44, 46, 50, 51, 52, 56, 59, 60},
       {0.8610, 0.8864, 0.9041, 0.007}, {0.9348, 0.9461, 0.9557, 0.004}},
      {"I", 0.10, 10, 0.50, 100, 8, 1028.308, 0.8960, params(0.37, 80, 3, 10, 10, 0.65, 0.5, 8),
       {0, 1, 6, 8, 20, 29, 59},
       {0.8601, 0.8876, 0.9050, 0.006}, {0.9346, 0.9442, 0.9527, 0.003}},
      {"J", 0.10, 10, 0.50, 100, 10, 711.473, 0.8952, params(0.27, 51, 5, 8.65, 3.99, 1, 0.9, 10),
       {0, 1, 6, 7, 8, 24, 60},
       {0.8700, 0.8907, 0.9092, 0.006}, {0.9361, 0.9471, 0.9558, 0.004}},
  };
}

}  // namespace

const std::vector<RegisteredExperiment>& experiment_registry() {
  static const std::vector<RegisteredExperiment> registry = build_registry();
  return registry;
}

const RegisteredExperiment& find_experiment(const std::string& id) {
  const auto& registry = experiment_registry();
  auto it = std::find_if(registry.begin(), registry.end(),
                         [&](const RegisteredExperiment& e) { return e.id == id; });
  if (it == registry.end()) throw Error("unknown experiment id '" + id + "' (expected A-J)");
  return *it;
}

}  // namespace gatune
