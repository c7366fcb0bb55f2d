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

#ifndef MWP_IMAGE_HPP_
#define MWP_IMAGE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace mwp {

// Grayscale raster, row-major, one unsigned sample per pixel.
struct GrayImage {
  int width = 0;
  int height = 0;
  int bit_depth = 8;  // 8 or 16
  std::vector<std::uint16_t> samples;

  GrayImage() = default;
  GrayImage(int w, int h, int depth);

  std::uint16_t at(int row, int col) const {
    return samples[static_cast<std::size_t>(row) * width + col];
  }
  std::uint16_t& at(int row, int col) {
    return samples[static_cast<std::size_t>(row) * width + col];
  }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  int max_value() const { return (1 << bit_depth) - 1; }

  // Throws ArgumentError when dimensions, depth or sample range are off.
  void validate() const;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

// Binary PGM (P5). Header comments are skipped; maxval must be 255 or 65535.
// 16-bit samples are big-endian. Bytes after the raster are ignored.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_pgm(const GrayImage& img);

// Headerless raster, geometry supplied by the caller. 16-bit is big-endian to
// match PGM.
GrayImage read_raw(std::span<const std::uint8_t> bytes, int width, int height,
                   int bit_depth);
std::vector<std::uint8_t> write_raw(const GrayImage& img);

enum class PhantomKind { kConstant, kRamp, kGaussianBlob, kSmoothNoise };

PhantomKind parse_phantom_kind(std::string_view name);
std::string_view phantom_kind_name(PhantomKind kind);

// Deterministic 8-bit synthetic test images. Both dimensions must be >= 8.
//   constant      every sample 128
//   ramp          (row + col) mod 256
//   gaussian_blob 255 * exp(-d^2 / (2 s^2)) around the center, s = min(w,h)/4
//   smooth_noise  mt19937 noise through a 5x5 box filter (edge-replicated)
GrayImage make_phantom(PhantomKind kind, int width, int height,
                       std::uint64_t seed);

}  // namespace mwp

#endif  // MWP_IMAGE_HPP_
