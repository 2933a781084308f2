/* Copyright 2026 The Foothill Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "foothill/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "foothill/errors.hpp"

namespace foothill {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Non-blank lines of `text`.
std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(start, end - start));
    if (!line.empty()) out.push_back(line);
    start = end + 1;
  }
  return out;
}

double parse_number(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty()) {
    throw IoError("csv line " + std::to_string(line_no) +
                  ": not a number: '" + std::string(field) + "'");
  }
  if (!std::isfinite(value)) {
    throw IoError("csv line " + std::to_string(line_no) +
                  ": non-finite value: '" + std::string(field) + "'");
  }
  return value;
}

struct Table {
  std::vector<std::string_view> header;
  std::vector<std::vector<double>> rows;
};

Table parse_table(std::string_view text, std::string_view first_column) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw IoError("csv: empty input");
  Table table;
  table.header = split_fields(lines[0]);
  if (table.header.size() < 2 || table.header[0] != first_column) {
    throw IoError("csv: header must start with '" + std::string(first_column) +
                  "' followed by at least one feature column");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    if (fields.size() != table.header.size()) {
      throw IoError("csv line " + std::to_string(i + 1) + ": expected " +
                    std::to_string(table.header.size()) + " fields, got " +
                    std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) row.push_back(parse_number(f, i + 1));
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) throw IoError("csv: no data rows");
  return table;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

RegressionData parse_regression_csv(std::string_view text) {
  const Table table = parse_table(text, "y");
  const auto n = static_cast<Eigen::Index>(table.rows.size());
  const auto p = static_cast<Eigen::Index>(table.header.size() - 1);
  RegressionData data{Eigen::MatrixXd(n, p), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    data.y[i] = table.rows[i][0];
    for (Eigen::Index j = 0; j < p; ++j) data.X(i, j) = table.rows[i][j + 1];
  }
  return data;
}

RegressionData read_regression_csv(const std::filesystem::path& path) {
  return parse_regression_csv(read_text_file(path));
}

Dataset parse_dataset_csv(std::string_view text) {
  const Table table = parse_table(text, "label");
  const auto n = static_cast<Eigen::Index>(table.rows.size());
  const auto p = static_cast<Eigen::Index>(table.header.size() - 1);
  Dataset data;
  data.features.resize(n, p);
  data.labels.resize(n);
  int max_label = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double raw = table.rows[i][0];
    if (raw < 0.0 || raw != static_cast<double>(static_cast<int>(raw))) {
      throw IoError("csv line " + std::to_string(i + 2) +
                    ": label must be a non-negative integer");
    }
    data.labels[i] = static_cast<int>(raw);
    max_label = std::max(max_label, data.labels[i]);
    for (Eigen::Index j = 0; j < p; ++j) {
      data.features(i, j) = table.rows[i][j + 1];
    }
  }
  data.num_classes = std::max(2, max_label + 1);
  return data;
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  return parse_dataset_csv(read_text_file(path));
}

std::string to_csv(const SolutionPath& path) {
  std::string out = "z,theta\n";
  for (std::size_t i = 0; i < path.z_grid.size(); ++i) {
    out += format_double(path.z_grid[i]);
    out += ',';
    out += format_double(path.theta_values[i]);
    out += '\n';
  }
  return out;
}

std::string epoch_csv(const QuantReport& report) {
  std::string out = "epoch,lambda,train_acc,concentration\n";
  for (std::size_t t = 0; t < report.train_accuracy.size(); ++t) {
    out += std::to_string(t) + ',' + format_double(report.lambda[t]) + ',' +
           format_double(report.train_accuracy[t]) + ',' +
           format_double(report.concentration[t]) + '\n';
  }
  return out;
}

std::string comparison_csv(const std::vector<std::string>& labels,
                           const std::vector<QuantReport>& reports) {
  if (labels.size() != reports.size() || reports.empty()) {
    throw ArgumentError("comparison_csv: need one label per report");
  }
  const std::size_t epochs = reports.front().train_accuracy.size();
  for (const auto& r : reports) {
    if (r.train_accuracy.size() != epochs) {
      throw ArgumentError("comparison_csv: reports differ in epoch count");
    }
  }
  std::string out = "epoch,lambda";
  for (const auto& label : labels) {
    out += ',' + label + "_train_acc," + label + "_concentration";
  }
  out += '\n';
  for (std::size_t t = 0; t < epochs; ++t) {
    out += std::to_string(t) + ',' + format_double(reports.front().lambda[t]);
    for (const auto& r : reports) {
      out += ',' + format_double(r.train_accuracy[t]) + ',' +
             format_double(r.concentration[t]);
    }
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace foothill
