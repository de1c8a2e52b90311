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

#include <string>
#include <vector>

#include "gatune/experiments.hpp"
#include "gatune/ga.hpp"
#include "gatune/gbt.hpp"
#include "gatune/metrics.hpp"
#include "gatune/validation.hpp"

namespace gatune {

inline constexpr const char* kCodeVersion = "gatune 1.0.0";

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// JSON with GaConfig/HyperParams field names. Unknown keys are rejected;
// missing keys keep the value from `base`.
GaConfig ga_config_from_json(const std::string& text, const GaConfig& base = {});
HyperParams params_from_json(const std::string& text, const HyperParams& base = {});
std::string ga_config_to_json(const GaConfig& cfg);

// Self-contained description of one GA run: configuration, seed, history,
// wall time, decoded parameters, selected features and code version.
std::string ga_manifest(const std::string& id, const GaConfig& cfg, const GaResult& result,
                        const FeatureSchema& schema);
RunOutcome outcome_from_manifest(const std::string& text);
GaConfig config_from_manifest(const std::string& text);
// Decoded parameters of the best run, scale_pos_weight included.
HyperParams params_from_manifest(const std::string& text);

// One row per model, delimited, with a header.
std::string cv_rows(const CvReport& report, char delimiter = ';');
std::string cv_summary_json(const std::string& id, const CvReport& report);
std::string cv_summary_table(const CvReport& report);

std::string roc_points(const RocResult& roc);
std::string lift_points(const std::vector<LiftPoint>& points);

std::string sweep_table(const std::string& name, const std::vector<SweepEntry>& entries);
std::string ablation_table(const std::vector<AblationRow>& rows);
std::string feature_table(const FeatureAnalysis& analysis);

}  // namespace gatune
