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

// Independent reference computations used only by the tests. Nothing here
// calls into the library paths it is used to check.

#ifndef MWP_TESTS_ORACLES_HPP_
#define MWP_TESTS_ORACLES_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "mwp/image.hpp"

namespace mwp::oracle {

// Textbook sample statistics with indexed loops in double precision.
inline double mean(const std::vector<double>& x) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i];
  return s / x.size();
}

inline double covariance(const std::vector<double>& x, const std::vector<double>& y) {
  const double mx = mean(x), my = mean(y);
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
  return s / (x.size() - 1);
}

inline double variance(const std::vector<double>& x) { return covariance(x, x); }

inline double correlation(const std::vector<double>& x, const std::vector<double>& y) {
  return covariance(x, y) / std::sqrt(variance(x) * variance(y));
}

// Least squares via column-pivoted Householder QR on the design matrix.
inline std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                         const std::vector<double>& y) {
  const Eigen::Index n = static_cast<Eigen::Index>(y.size());
  const Eigen::Index k = static_cast<Eigen::Index>(columns.size());
  Eigen::MatrixXd a(n, k);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    b(i) = y[i];
    for (Eigen::Index j = 0; j < k; ++j) a(i, j) = columns[j][i];
  }
  const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
  return {x.data(), x.data() + k};
}

// Shannon order-0 code length in bits of a symbol sequence.
template <typename T>
double order0_bits(const std::vector<T>& symbols) {
  std::map<T, std::size_t> hist;
  for (const T& s : symbols) ++hist[s];
  double bits = 0;
  const double n = static_cast<double>(symbols.size());
  for (const auto& [sym, c] : hist) bits -= c * std::log2(c / n);
  return bits;
}

inline GrayImage random_image(std::mt19937_64& rng, int width, int height, int depth) {
  GrayImage img(width, height, depth);
  const std::uint64_t mask = depth == 8 ? 0xFF : 0xFFFF;
  for (auto& s : img.samples) s = static_cast<std::uint16_t>(rng() & mask);
  return img;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace mwp::oracle

#endif  // MWP_TESTS_ORACLES_HPP_
