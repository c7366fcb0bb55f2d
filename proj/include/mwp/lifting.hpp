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

#ifndef MWP_LIFTING_HPP_
#define MWP_LIFTING_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mwp/image.hpp"

namespace mwp {

enum class Orientation : std::uint8_t { kLL, kHL, kLH, kHH };

const char* orientation_name(Orientation o);

inline constexpr int kMinLevels = 1;
inline constexpr int kMaxLevels = 8;
inline constexpr int kDefaultLevels = 3;

// Magnitude bound for any coefficient forward() can produce from a 16-bit
// image at 8 levels (5/3 lowpass L1 gain 1.5 per pass gives < 2^26). Decoders
// reject anything at or beyond it so later arithmetic cannot overflow.
inline constexpr std::int32_t kCoefficientLimit = 1 << 28;

struct Subband {
  int level = 0;  // 0 for LL, 1 = coarsest detail level
  Orientation orientation = Orientation::kLL;
  int rows = 0;
  int cols = 0;
  std::vector<std::int32_t> coeffs;

  std::int32_t at(int r, int c) const {
    return coeffs[static_cast<std::size_t>(r) * cols + c];
  }
  std::int32_t& at(int r, int c) {
    return coeffs[static_cast<std::size_t>(r) * cols + c];
  }
  bool contains(int r, int c) const {
    return r >= 0 && c >= 0 && r < rows && c < cols;
  }
  std::size_t size() const { return coeffs.size(); }

  // "LL", "L1_HL", ...
  std::string name() const;

  friend bool operator==(const Subband&, const Subband&) = default;
};

// Bands in coding order: LL, then for level 1 (coarsest) .. levels the
// HL, LH, HH triple.
struct SubbandPyramid {
  int levels = 0;
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  std::vector<Subband> bands;

  static std::size_t band_count(int levels) { return 3 * levels + 1; }
  static std::size_t index_of(int level, Orientation o) {
    return o == Orientation::kLL
               ? 0
               : 1 + 3 * static_cast<std::size_t>(level - 1) +
                     (static_cast<std::size_t>(o) - 1);
  }

  const Subband& band(int level, Orientation o) const {
    return bands[index_of(level, o)];
  }
  Subband& band(int level, Orientation o) { return bands[index_of(level, o)]; }

  friend bool operator==(const SubbandPyramid&,
                         const SubbandPyramid&) = default;
};

// Zero-filled pyramid with the band geometry forward() would produce.
// Throws ArgumentError when the geometry does not admit `levels`.
SubbandPyramid make_pyramid_layout(int width, int height, int bit_depth,
                                   int levels);

// LeGall 5/3 integer lifting with whole-sample symmetric extension, rows
// then columns per level, recursing on LL. Low halves take the ceiling on odd
// lengths. Rows and columns of a pass run in parallel (MWP_THREADS); the
// result is bit-identical to lifting::reference.
SubbandPyramid forward(const GrayImage& img, int levels = kDefaultLevels);

// Exact inverse. Throws FormatError on band geometry that does not match
// (width, height, levels) and CorruptionError when coefficients leave
// +-kCoefficientLimit or the output leaves the declared bit depth.
GrayImage inverse(const SubbandPyramid& pyr);

namespace lifting {

// One 1-D pass. `low` gets ceil(n/2) values, `high` floor(n/2). n >= 2.
void forward_1d(std::span<const std::int32_t> x, std::span<std::int32_t> low,
                std::span<std::int32_t> high);
void inverse_1d(std::span<const std::int32_t> low,
                std::span<const std::int32_t> high, std::span<std::int32_t> x);

// Straight-line serial transforms kept as the ground truth for the parallel
// kernels above.
namespace reference {
SubbandPyramid forward(const GrayImage& img, int levels);
GrayImage inverse(const SubbandPyramid& pyr);
}  // namespace reference

}  // namespace lifting
}  // namespace mwp

#endif  // MWP_LIFTING_HPP_
