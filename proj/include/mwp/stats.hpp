// Copyright 2026 The mwp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MWP_STATS_HPP_
#define MWP_STATS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mwp::stats {

// Sample variance with the n-1 denominator, two-pass (mean, then squared
// deviations). Requires at least 2 values.
double variance(std::span<const double> x);

double covariance(std::span<const double> x, std::span<const double> y);

// Pearson correlation; nullopt when either variance is zero.
std::optional<double> correlation(std::span<const double> x,
                                  std::span<const double> y);

struct LabeledColumn {
  std::string label;
  std::vector<double> values;
};

struct CorrelationMatrix {
  std::vector<std::string> labels;
  std::vector<std::optional<double>> entries;  // row-major, size n*n

  std::size_t size() const { return labels.size(); }
  const std::optional<double>& at(std::size_t i, std::size_t j) const {
    return entries[i * labels.size() + j];
  }

  // Header row of labels, one row per label; undefined entries are "NA".
  std::string to_csv() const;
};

// Pairwise correlation() over all columns, bit-identical to the scalar path.
// Pairs are spread across MWP_THREADS threads.
CorrelationMatrix correlation_matrix(std::span<const LabeledColumn> columns);

}  // namespace mwp::stats

#endif  // MWP_STATS_HPP_
