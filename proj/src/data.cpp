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

#include "gatune/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gatune/error.hpp"

namespace gatune {
namespace {

std::vector<std::string> split_fields(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == delimiter && !quoted) {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  fields.push_back(std::move(field));
  for (auto& f : fields) {
    auto first = f.find_first_not_of(" \t'");
    auto last = f.find_last_not_of(" \t'");
    f = first == std::string::npos ? std::string() : f.substr(first, last - first + 1);
  }
  return fields;
}

double parse_number(const std::string& text, std::size_t line_no,
                    const std::string& column) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw Error("line " + std::to_string(line_no) + ": column '" + column +
                "' is not a finite number: '" + text + "'");
  }
  return value;
}

FeatureSchema build_bank_schema() {
  std::vector<FeatureEntry> entries;
  int index = 0;
  for (const auto& name : bank_numeric_columns()) {
    entries.push_back({index++, name, FeatureKind::kNumeric, name, std::nullopt});
  }
  for (const auto& column : bank_categorical_columns()) {
    for (const auto& category : column.categories) {
      entries.push_back({index++, column.name + "_" + category, FeatureKind::kOneHot,
                         column.name, category});
    }
  }
  return FeatureSchema(std::move(entries));
}

}  // namespace

const std::array<std::string, kNumericColumns>& bank_numeric_columns() {
  static const std::array<std::string, kNumericColumns> columns = {
      "age",          "duration",       "campaign",      "pdays",     "previous",
      "emp.var.rate", "cons.price.idx", "cons.conf.idx", "euribor3m", "nr.employed"};
  return columns;
}

const std::array<CategoricalColumn, kCategoricalColumns>& bank_categorical_columns() {
  static const std::array<CategoricalColumn, kCategoricalColumns> columns = {{
      {"job",
       {"admin.", "blue-collar", "entrepreneur", "housemaid", "management", "retired",
        "self-employed", "services", "student", "technician", "unemployed", "unknown"}},
      {"marital", {"divorced", "married", "single", "unknown"}},
      {"education",
       {"basic.4y", "basic.6y", "basic.9y", "high.school", "illiterate",
        "professional.course", "university.degree", "unknown"}},
      {"default", {"no", "unknown", "yes"}},
      {"housing", {"no", "unknown", "yes"}},
      {"loan", {"no", "unknown", "yes"}},
      {"contact", {"cellular", "telephone"}},
      {"month", {"apr", "aug", "dec", "jul", "jun", "mar", "may", "nov", "oct", "sep"}},
      {"day_of_week", {"fri", "mon", "thu", "tue", "wed"}},
      {"poutcome", {"failure", "nonexistent", "success"}},
  }};
  return columns;
}

const FeatureSchema& FeatureSchema::bank() {
  static const FeatureSchema schema = build_bank_schema();
  return schema;
}

std::optional<std::size_t> FeatureSchema::position_of(int index) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].index == index) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> FeatureSchema::position_of(const std::string& name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name == name) return i;
  }
  return std::nullopt;
}

EncodedDataset::EncodedDataset(std::size_t rows, FeatureSchema schema)
    : values_(rows * schema.size(), 0.0), labels_(rows, 0), schema_(std::move(schema)) {}

EncodedDataset::EncodedDataset(std::vector<double> values, std::vector<Label> labels,
                               FeatureSchema schema)
    : values_(std::move(values)), labels_(std::move(labels)), schema_(std::move(schema)) {
  if (values_.size() != labels_.size() * schema_.size()) {
    throw Error("matrix has " + std::to_string(values_.size()) + " values, expected " +
                std::to_string(labels_.size()) + " x " + std::to_string(schema_.size()));
  }
  for (Label y : labels_) {
    if (y > 1) throw Error("label " + std::to_string(int(y)) + " is not 0 or 1");
  }
}

std::size_t EncodedDataset::positives() const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), Label{1}));
}

EncodedDataset EncodedDataset::project(std::span<const int> feature_indices) const {
  std::vector<std::size_t> positions;
  std::vector<FeatureEntry> entries;
  for (int index : feature_indices) {
    auto pos = schema_.position_of(index);
    if (!pos) throw Error("feature index " + std::to_string(index) + " is not in the dataset");
    if (std::find(positions.begin(), positions.end(), *pos) != positions.end()) {
      throw Error("feature index " + std::to_string(index) + " listed twice");
    }
    positions.push_back(*pos);
    entries.push_back(schema_[*pos]);
  }
  const std::size_t width = positions.size();
  std::vector<double> values(rows() * width);
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < width; ++c) values[r * width + c] = at(r, positions[c]);
  }
  return EncodedDataset(std::move(values), labels_, FeatureSchema(std::move(entries)));
}

EncodedDataset EncodedDataset::select_rows(std::span<const std::size_t> row_ids) const {
  const std::size_t width = cols();
  std::vector<double> values;
  values.reserve(row_ids.size() * width);
  std::vector<Label> labels;
  labels.reserve(row_ids.size());
  for (std::size_t r : row_ids) {
    if (r >= rows()) throw Error("row " + std::to_string(r) + " out of range");
    auto src = row(r);
    values.insert(values.end(), src.begin(), src.end());
    labels.push_back(labels_[r]);
  }
  return EncodedDataset(std::move(values), std::move(labels), schema_);
}

RawDataset load_bank_csv(const std::string& path, char delimiter) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset file '" + path + "'");
  return parse_bank_csv(in, delimiter);
}

RawDataset parse_bank_csv(std::istream& in, char delimiter) {
  std::string line;
  if (!std::getline(in, line)) throw Error("dataset has no header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  RawDataset raw;
  raw.column_names = split_fields(line, delimiter);
  const std::size_t width = raw.column_names.size();

  auto column_position = [&](const std::string& name) {
    auto it = std::find(raw.column_names.begin(), raw.column_names.end(), name);
    if (it == raw.column_names.end()) throw Error("header is missing column '" + name + "'");
    return static_cast<std::size_t>(it - raw.column_names.begin());
  };
  std::array<std::size_t, kNumericColumns> numeric_pos{};
  for (std::size_t i = 0; i < kNumericColumns; ++i) {
    numeric_pos[i] = column_position(bank_numeric_columns()[i]);
  }
  std::array<std::size_t, kCategoricalColumns> categorical_pos{};
  for (std::size_t i = 0; i < kCategoricalColumns; ++i) {
    categorical_pos[i] = column_position(bank_categorical_columns()[i].name);
  }
  const std::size_t label_pos = column_position("y");
  if (width != kNumericColumns + kCategoricalColumns + 1) {
    throw Error("header has " + std::to_string(width) + " columns, expected 21");
  }

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_fields(line, delimiter);
    if (fields.size() != width) {
      throw Error("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                  " fields, found " + std::to_string(fields.size()));
    }
    RawRecord record;
    for (std::size_t i = 0; i < kNumericColumns; ++i) {
      record.numeric[i] =
          parse_number(fields[numeric_pos[i]], line_no, bank_numeric_columns()[i]);
    }
    for (std::size_t i = 0; i < kCategoricalColumns; ++i) {
      const auto& column = bank_categorical_columns()[i];
      const auto& value = fields[categorical_pos[i]];
      if (std::find(column.categories.begin(), column.categories.end(), value) ==
          column.categories.end()) {
        throw Error("line " + std::to_string(line_no) + ": unknown category '" + value +
                    "' in column '" + column.name + "'");
      }
      record.categorical[i] = value;
    }
    raw.rows.push_back(std::move(record));
    raw.labels.push_back(fields[label_pos]);
  }
  return raw;
}

std::vector<Label> encode_labels(const RawDataset& raw) {
  std::vector<Label> labels;
  labels.reserve(raw.labels.size());
  for (const auto& value : raw.labels) {
    if (value == "yes") {
      labels.push_back(1);
    } else if (value == "no") {
      labels.push_back(0);
    } else {
      throw Error("label '" + value + "' is neither \"yes\" nor \"no\"");
    }
  }
  return labels;
}

EncodedDataset one_hot_encode(const RawDataset& raw) {
  const auto& schema = FeatureSchema::bank();
  EncodedDataset encoded(std::vector<double>(raw.size() * schema.size(), 0.0),
                         encode_labels(raw), schema);

  // First column of each indicator group.
  std::array<std::size_t, kCategoricalColumns> group_start{};
  std::size_t offset = kNumericColumns;
  for (std::size_t g = 0; g < kCategoricalColumns; ++g) {
    group_start[g] = offset;
    offset += bank_categorical_columns()[g].categories.size();
  }

  for (std::size_t r = 0; r < raw.size(); ++r) {
    const auto& record = raw.rows[r];
    for (std::size_t c = 0; c < kNumericColumns; ++c) encoded.at(r, c) = record.numeric[c];
    for (std::size_t g = 0; g < kCategoricalColumns; ++g) {
      const auto& categories = bank_categorical_columns()[g].categories;
      auto it = std::find(categories.begin(), categories.end(), record.categorical[g]);
      if (it == categories.end()) {
        throw Error("unknown category '" + record.categorical[g] + "' in column '" +
                    bank_categorical_columns()[g].name + "'");
      }
      encoded.at(r, group_start[g] + static_cast<std::size_t>(it - categories.begin())) = 1.0;
    }
  }
  return encoded;
}

double class_distribution_inverse(std::span<const Label> labels) {
  std::size_t ones = 0;
  for (Label y : labels) ones += (y == 1);
  const std::size_t zeros = labels.size() - ones;
  if (ones == 0 || zeros == 0) {
    throw Error("class distribution inverse needs both classes (" + std::to_string(zeros) +
                " zeros, " + std::to_string(ones) + " ones)");
  }
  return static_cast<double>(zeros) / static_cast<double>(ones);
}

std::string decode_category(const FeatureSchema& schema, std::span<const double> row,
                            const std::string& source_column) {
  std::optional<std::string> found;
  for (std::size_t c = 0; c < schema.size(); ++c) {
    const auto& entry = schema[c];
    if (entry.kind != FeatureKind::kOneHot || entry.source_column != source_column) continue;
    if (row[c] == 1.0) {
      if (found) throw Error("column '" + source_column + "' has more than one indicator set");
      found = entry.category;
    }
  }
  if (!found) throw Error("column '" + source_column + "' has no indicator set");
  return *found;
}

void write_encoded(std::ostream& out, const EncodedDataset& data, char delimiter) {
  const auto& schema = data.schema();
  for (std::size_t c = 0; c < schema.size(); ++c) {
    out << schema[c].index << ':' << schema[c].name << delimiter;
  }
  out << "y\n";
  std::ostringstream cell;
  cell.precision(17);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (std::size_t c = 0; c < data.cols(); ++c) {
      cell.str(std::string());
      cell << data.at(r, c);
      out << cell.str() << delimiter;
    }
    out << int(data.labels()[r]) << '\n';
  }
}

}  // namespace gatune
