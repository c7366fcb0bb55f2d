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

#include "mwp/stats.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "mwp/error.hpp"
#include "mwp/parallel.hpp"

namespace mwp::stats {

namespace {

double mean(std::span<const double> x) {
  double sum = 0;
  for (double v : x) sum += v;
  return sum / static_cast<double>(x.size());
}

void require_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ArgumentError("sample vectors differ in length (" +
                        std::to_string(x.size()) + " vs " +
                        std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) throw ArgumentError("need at least 2 samples");
}

}  // namespace

double variance(std::span<const double> x) {
  if (x.size() < 2) throw ArgumentError("need at least 2 samples");
  const double m = mean(x);
  double ss = 0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

double covariance(std::span<const double> x, std::span<const double> y) {
  require_pair(x, y);
  const double mx = mean(x);
  const double my = mean(y);
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
  return s / static_cast<double>(x.size() - 1);
}

std::optional<double> correlation(std::span<const double> x,
                                  std::span<const double> y) {
  require_pair(x, y);
  const double vx = variance(x);
  const double vy = variance(y);
  if (vx == 0 || vy == 0) return std::nullopt;
  return covariance(x, y) / std::sqrt(vx * vy);
}

CorrelationMatrix correlation_matrix(std::span<const LabeledColumn> columns) {
  CorrelationMatrix m;
  const std::size_t n = columns.size();
  for (const LabeledColumn& c : columns) m.labels.push_back(c.label);
  m.entries.assign(n * n, std::nullopt);
  if (n == 0) return m;
  for (const LabeledColumn& c : columns) {
    require_pair(columns[0].values, c.values);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);

  const int threads = parallel::thread_count();
  const long count = static_cast<long>(pairs.size());
#pragma omp parallel for num_threads(threads) if (threads > 1) schedule(dynamic)
  for (long k = 0; k < count; ++k) {
    const auto [i, j] = pairs[k];
    const auto r = correlation(columns[i].values, columns[j].values);
    m.entries[i * n + j] = r;
    m.entries[j * n + i] = r;
  }
  return m;
}

std::string CorrelationMatrix::to_csv() const {
  std::string out = "label";
  for (const std::string& l : labels) out += "," + l;
  out += "\n";
  char buf[32];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += labels[i];
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const auto& e = at(i, j);
      if (e) {
        std::snprintf(buf, sizeof buf, "%.17g", *e);
        out += ",";
        out += buf;
      } else {
        out += ",NA";
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace mwp::stats
