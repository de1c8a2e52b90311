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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gatune {

using Label = std::uint8_t;

inline constexpr std::size_t kNumericColumns = 10;
inline constexpr std::size_t kCategoricalColumns = 10;
inline constexpr std::size_t kBankEncodedWidth = 63;

enum class FeatureKind { kNumeric, kOneHot };

struct FeatureEntry {
  int index = 0;
  std::string name;
  FeatureKind kind = FeatureKind::kNumeric;
  std::string source_column;
  std::optional<std::string> category;

  bool operator==(const FeatureEntry&) const = default;
};

// Ordered column descriptions. The bank schema is fixed: indices 0-9 are the
// numeric columns, 10-62 one indicator per category in the published order.
// A projected schema keeps the original indices of the columns it retains.
class FeatureSchema {
 public:
  FeatureSchema() = default;
  explicit FeatureSchema(std::vector<FeatureEntry> entries)
      : entries_(std::move(entries)) {}

  static const FeatureSchema& bank();

  std::size_t size() const { return entries_.size(); }
  const FeatureEntry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<FeatureEntry>& entries() const { return entries_; }

  // Position of the entry whose original index is `index`, if present.
  std::optional<std::size_t> position_of(int index) const;
  std::optional<std::size_t> position_of(const std::string& name) const;

 private:
  std::vector<FeatureEntry> entries_;
};

struct CategoricalColumn {
  std::string name;
  std::vector<std::string> categories;
};

const std::array<std::string, kNumericColumns>& bank_numeric_columns();
const std::array<CategoricalColumn, kCategoricalColumns>& bank_categorical_columns();

struct RawRecord {
  std::array<double, kNumericColumns> numeric{};
  std::array<std::string, kCategoricalColumns> categorical;
};

// Rows of the public CSV with columns reordered into schema order.
struct RawDataset {
  std::vector<RawRecord> rows;
  std::vector<std::string> labels;
  std::vector<std::string> column_names;  // header as read

  std::size_t size() const { return rows.size(); }
};

// Row-major numeric matrix with binary labels.
class EncodedDataset {
 public:
  EncodedDataset() = default;
  EncodedDataset(std::size_t rows, FeatureSchema schema);
  EncodedDataset(std::vector<double> values, std::vector<Label> labels,
                 FeatureSchema schema);

  std::size_t rows() const { return labels_.size(); }
  std::size_t cols() const { return schema_.size(); }

  double at(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }
  double& at(std::size_t r, std::size_t c) { return values_[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols(), cols()};
  }

  const std::vector<Label>& labels() const { return labels_; }
  std::vector<Label>& labels() { return labels_; }
  const FeatureSchema& schema() const { return schema_; }
  const std::vector<double>& values() const { return values_; }

  std::size_t positives() const;

  // Keeps the columns whose original schema index is listed, in list order.
  EncodedDataset project(std::span<const int> feature_indices) const;
  EncodedDataset select_rows(std::span<const std::size_t> row_ids) const;

 private:
  std::vector<double> values_;
  std::vector<Label> labels_;
  FeatureSchema schema_;
};

RawDataset load_bank_csv(const std::string& path, char delimiter = ';');
RawDataset parse_bank_csv(std::istream& in, char delimiter = ';');

std::vector<Label> encode_labels(const RawDataset& raw);
EncodedDataset one_hot_encode(const RawDataset& raw);

// Majority (label 0) count over minority (label 1) count.
double class_distribution_inverse(std::span<const Label> labels);

// Category recovered from the indicator group of `source_column`.
std::string decode_category(const FeatureSchema& schema,
                            std::span<const double> row,
                            const std::string& source_column);

// Header "index:name" per column then "y"; one line per row.
void write_encoded(std::ostream& out, const EncodedDataset& data,
                   char delimiter = ';');

}  // namespace gatune
