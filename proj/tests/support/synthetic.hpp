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

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "gatune/data.hpp"
#include "gatune/random.hpp"

namespace gatune::testing {

// Bank-format CSV with the public file's column order and quoting. The label
// depends on duration, euribor3m, month and poutcome so models have signal.
inline std::string synthetic_bank_csv(std::size_t rows, std::uint64_t seed) {
  const auto& cats = bank_categorical_columns();
  auto cat = [&](const char* name) -> const CategoricalColumn& {
    for (const auto& c : cats) {
      if (c.name == name) return c;
    }
    return cats[0];
  };
  Rng rng(seed);
  std::ostringstream os;
  os << "\"age\";\"job\";\"marital\";\"education\";\"default\";\"housing\";\"loan\";\"contact\";"
        "\"month\";\"day_of_week\";\"duration\";\"campaign\";\"pdays\";\"previous\";\"poutcome\";"
        "\"emp.var.rate\";\"cons.price.idx\";\"cons.conf.idx\";\"euribor3m\";\"nr.employed\";\"y\"\n";
  auto pick = [&](const char* name) {
    const auto& c = cat(name).categories;
    return c[rng.index(c.size())];
  };
  for (std::size_t i = 0; i < rows; ++i) {
    const int age = 18 + static_cast<int>(rng.index(70));
    const int duration = static_cast<int>(rng.index(1200));
    const double euribor = 0.6 + 4.5 * rng.uniform01();
    const std::string month = pick("month");
    const std::string poutcome = pick("poutcome");
    double logit = -3.0 + duration / 250.0 - 0.6 * (euribor - 3.0);
    if (month == "mar" || month == "oct") logit += 1.0;
    if (poutcome == "success") logit += 1.5;
    logit += rng.normal(0.0, 0.5);
    const bool yes = rng.uniform01() < 1.0 / (1.0 + std::exp(-logit));
    os << age << ";\"" << pick("job") << "\";\"" << pick("marital") << "\";\"" << pick("education")
       << "\";\"" << pick("default") << "\";\"" << pick("housing") << "\";\"" << pick("loan")
       << "\";\"" << pick("contact") << "\";\"" << month << "\";\"" << pick("day_of_week") << "\";"
       << duration << ";" << 1 + rng.index(6) << ";" << (rng.bernoulli(0.9) ? 999 : rng.index(20))
       << ";" << rng.index(3) << ";\"" << poutcome << "\";" << (rng.uniform01() * 4.0 - 2.0) << ";"
       << 92.0 + 2.5 * rng.uniform01() << ";" << -50.0 + 25.0 * rng.uniform01() << ";" << euribor
       << ";" << 4960 + rng.index(270) << ";\"" << (yes ? "yes" : "no") << "\"\n";
  }
  return os.str();
}

inline EncodedDataset synthetic_bank(std::size_t rows, std::uint64_t seed) {
  std::istringstream in(synthetic_bank_csv(rows, seed));
  return one_hot_encode(parse_bank_csv(in));
}

// Bank-schema matrix where column 0 alone decides the label and every other
// column is noise.
inline EncodedDataset planted_dataset(std::size_t rows, std::uint64_t seed) {
  const auto& schema = FeatureSchema::bank();
  Rng rng(seed);
  std::vector<double> values(rows * schema.size());
  std::vector<Label> labels(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < schema.size(); ++c) values[r * schema.size() + c] = rng.uniform01();
    labels[r] = values[r * schema.size()] > 0.7 ? 1 : 0;
  }
  return EncodedDataset(std::move(values), std::move(labels), schema);
}

// Small dataset with arbitrary width and an integer-valued grid so ties in
// feature values are common.
inline EncodedDataset random_dataset(Rng& rng, std::size_t rows, std::size_t cols, int levels) {
  std::vector<FeatureEntry> entries;
  for (std::size_t c = 0; c < cols; ++c) {
    entries.push_back({static_cast<int>(c), "f" + std::to_string(c), FeatureKind::kNumeric,
                       "f" + std::to_string(c), std::nullopt});
  }
  std::vector<double> values(rows * cols);
  std::vector<Label> labels(rows);
  for (auto& v : values) v = static_cast<double>(rng.index(static_cast<std::size_t>(levels)));
  for (std::size_t r = 0; r < rows; ++r) {
    const double signal = values[r * cols] + (cols > 1 ? 0.5 * values[r * cols + 1] : 0.0);
    labels[r] = rng.uniform01() < signal / (1.5 * levels) ? 1 : 0;
  }
  labels[0] = 0;
  labels[rows - 1] = 1;
  return EncodedDataset(std::move(values), std::move(labels), FeatureSchema(std::move(entries)));
}

}  // namespace gatune::testing
