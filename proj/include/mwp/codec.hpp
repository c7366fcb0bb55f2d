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

#ifndef MWP_CODEC_HPP_
#define MWP_CODEC_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mwp/entropy.hpp"
#include "mwp/image.hpp"
#include "mwp/prediction.hpp"

namespace mwp {

struct CodecConfig {
  int levels = kDefaultLevels;
  SelectionMode selection = SelectionMode::kGreedy;
  bool predict = true;  // false: every detail band gets the zero model
};

inline constexpr std::uint8_t kContainerVersion = 1;
// Flags byte: bit 0 is the wavelet id (0 = 5/3), bit 1 selects the dense
// entropy profile, the remaining bits are reserved and must be zero.
inline constexpr std::uint8_t kWavelet53 = 0;
inline constexpr std::uint8_t kFlagWavelet = 0x01;
inline constexpr std::uint8_t kFlagDenseEntropy = 0x02;

// Upper bound on decoded pixels; also bounded by payload size, see
// max_pixels_for_payload().
inline constexpr std::uint64_t kMaxPixels = std::uint64_t{1} << 28;

// Largest pixel count a payload of this many bytes can describe: no symbol
// costs less than -log2(1 - 513/65536) bits under AdaptiveModel.
std::uint64_t max_pixels_for_payload(std::size_t payload_bytes);

// On-disk layout, little-endian throughout:
//   "MWP1" | version u8 | flags u8 | bit_depth u8 | levels u8 |
//   width u32 | height u32 | per detail band: mask u16, coeff i32 * popcount |
//   payload_length u32 | payload | crc32 u32 (IEEE, over everything before)
struct Container {
  std::uint8_t version = kContainerVersion;
  std::uint8_t flags = kWavelet53;
  int bit_depth = 8;
  int levels = kDefaultLevels;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<PredictionModel> models;  // detail bands, coding order
  std::vector<std::uint8_t> payload;

  std::size_t model_record_bytes() const;
  entropy::Profile profile() const {
    return (flags & kFlagDenseEntropy) ? entropy::Profile::kDense
                                       : entropy::Profile::kSparse;
  }
};

std::vector<std::uint8_t> serialize_container(const Container& c);
// Checks size, magic, version and CRC before anything else, then flags,
// geometry and model records. Throws FormatError.
Container parse_container(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> compress(const GrayImage& img,
                                   const CodecConfig& cfg = {});
GrayImage decompress(std::span<const std::uint8_t> bytes);

struct BandReport {
  std::string name;
  RoleMask mask = 0;
  std::size_t coefficients = 0;
  double residual_entropy = 0;  // bits per symbol, order 0
};

struct Report {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t container_bytes = 0;
  double bpp = 0;
  double encode_ms = 0;  // mean over repeats
  double decode_ms = 0;
  std::vector<BandReport> per_band;

  std::string to_csv() const;
  std::string to_table() const;
};

inline double bits_per_pixel(std::size_t container_bytes, std::size_t pixels) {
  return 8.0 * static_cast<double>(container_bytes) /
         static_cast<double>(pixels);
}

// Compresses and decompresses `repeats` times, timing both. Throws
// CorruptionError if the round trip is not exact.
Report measure(const GrayImage& img, const CodecConfig& cfg, int repeats = 1);

}  // namespace mwp

#endif  // MWP_CODEC_HPP_
