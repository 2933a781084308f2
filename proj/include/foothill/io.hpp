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

// CSV ingestion/emission and atomic file output.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "foothill/prox.hpp"
#include "foothill/quantizer.hpp"

namespace foothill {

struct RegressionData {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
};

// Header `y,x1,...,xp` required, then one numeric row per observation.
RegressionData parse_regression_csv(std::string_view text);
RegressionData read_regression_csv(const std::filesystem::path& path);

// Header `label,f1,...,fp` required; labels are integers from 0.
// num_classes = max(label) + 1, and at least 2.
Dataset parse_dataset_csv(std::string_view text);
Dataset read_dataset_csv(const std::filesystem::path& path);

std::string to_csv(const SolutionPath& path);

// `epoch,lambda,train_acc,concentration`, one row per epoch.
std::string epoch_csv(const QuantReport& report);

// Per-epoch side-by-side comparison. `reports[k]` was trained with
// `labels[k]`; all must share the epoch count.
std::string comparison_csv(const std::vector<std::string>& labels,
                           const std::vector<QuantReport>& reports);

std::string read_text_file(const std::filesystem::path& path);

// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

// Shortest round-trip representation of a double.
std::string format_double(double v);

}  // namespace foothill
