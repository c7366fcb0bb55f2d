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

#ifndef MWP_ENTROPY_HPP_
#define MWP_ENTROPY_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mwp::entropy {

// Residual alphabet: zigzag values below 512 are coded directly, anything
// larger becomes an escape symbol followed by 32 raw bits of magnitude.
inline constexpr int kDirectSymbols = 512;
inline constexpr std::uint16_t kEscPos = 512;
inline constexpr std::uint16_t kEscNeg = 513;
inline constexpr int kAlphabetSize = 514;

struct MappedResidual {
  std::uint16_t symbol = 0;
  std::uint32_t payload = 0;  // |r| when symbol is an escape
  bool escaped() const { return symbol >= kEscPos; }
};

// Requires |r| < 2^31; throws ArgumentError otherwise.
MappedResidual map_residual(std::int64_t r);
std::int64_t unmap_residual(std::uint16_t symbol, std::uint32_t payload);

struct SymbolStream {
  std::vector<std::uint16_t> symbols;
  std::vector<std::uint32_t> escapes;  // one per escape symbol, in order

  std::size_t size() const { return symbols.size(); }
  friend bool operator==(const SymbolStream&, const SymbolStream&) = default;
};

SymbolStream map_residuals(std::span<const std::int64_t> residuals);
// Throws CorruptionError when the escape payloads do not line up.
std::vector<std::int64_t> unmap_residuals(const SymbolStream& stream);

// Adaptation speed of AdaptiveModel. Sparse streams (a few dominant
// symbols) are cheapest with a large starting increment, dense ones (wide,
// flat histograms) with a small one.
enum class Profile : std::uint8_t { kSparse = 0, kDense = 1 };

inline constexpr std::uint32_t kSparseIncrement = 64;
inline constexpr std::uint32_t kDenseIncrement = 4;

constexpr std::uint32_t initial_increment(Profile p) {
  return p == Profile::kDense ? kDenseIncrement : kSparseIncrement;
}

// Frequency table over the residual alphabet. Counts start at 1. Each coded
// symbol adds the current increment; when the total passes 2^16 every count
// is halved (floor, minimum 1) and the increment halves too, down to 4.
// Cumulative lookups go through a Fenwick tree.
class AdaptiveModel {
 public:
  static constexpr std::uint32_t kMinIncrement = 4;
  static constexpr std::uint32_t kMaxTotal = 1u << 16;

  explicit AdaptiveModel(Profile profile = Profile::kSparse);

  std::uint32_t total() const { return total_; }
  std::uint32_t frequency(std::uint16_t symbol) const {
    return counts_[symbol];
  }
  std::uint32_t increment() const { return increment_; }
  // Sum of frequencies of all symbols below `symbol`.
  std::uint32_t cumulative(std::uint16_t symbol) const;
  // Symbol whose cumulative range [cum, cum + freq) contains `target`.
  // Requires target < total().
  std::uint16_t find(std::uint32_t target) const;
  void update(std::uint16_t symbol);

  const std::array<std::uint32_t, kAlphabetSize>& counts() const {
    return counts_;
  }

 private:
  void rebuild_tree();

  std::array<std::uint32_t, kAlphabetSize> counts_{};
  std::array<std::uint32_t, kAlphabetSize + 1> tree_{};  // 1-based Fenwick
  std::uint32_t total_ = 0;
  std::uint32_t increment_ = kSparseIncrement;
};

// Byte-oriented range coder: 32-bit range, 33-bit low with a pending byte
// and 0xFF run for carry propagation, renormalizing while range < 2^24.
// finish() shifts out five bytes. The stream always starts with a zero byte.
class RangeEncoder {
 public:
  void encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t total);
  // Sixteen equiprobable bits, no model.
  void encode_raw16(std::uint32_t bits);
  std::vector<std::uint8_t> finish();

 private:
  void shift_low();

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  std::vector<std::uint8_t> out_;
};

// Mirror of RangeEncoder. Reading past the end of the input or landing in
// the unused top of the range throws CorruptionError.
class RangeDecoder {
 public:
  explicit RangeDecoder(std::span<const std::uint8_t> bytes);

  // Scaled target in [0, total); call consume() with the decoded symbol's
  // interval afterwards.
  std::uint32_t target(std::uint32_t total);
  void consume(std::uint32_t cum, std::uint32_t freq);
  std::uint32_t decode_raw16();

  std::size_t position() const { return pos_; }
  bool exhausted() const { return pos_ == bytes_.size(); }

 private:
  std::uint8_t next_byte();
  void normalize();

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint32_t code_ = 0;
  std::uint32_t step_ = 0;
};

void encode_symbol(RangeEncoder& enc, AdaptiveModel& model,
                   std::uint16_t symbol);
std::uint16_t decode_symbol(RangeDecoder& dec, AdaptiveModel& model);

// All streams through one coder; each stream starts from a fresh model.
// Escape payloads follow their escape symbol as two raw 16-bit halves, high
// half first.
std::vector<std::uint8_t> ac_encode(std::span<const SymbolStream> streams,
                                    Profile profile = Profile::kSparse);

// Inverse of ac_encode given each stream's symbol count. Throws
// CorruptionError (naming stream and symbol index) on truncated input, an
// impossible range state, or unread trailing bytes.
std::vector<SymbolStream> ac_decode(std::span<const std::uint8_t> bytes,
                                    std::span<const std::size_t> stream_sizes,
                                    Profile profile = Profile::kSparse);

// Ideal cost in bits of coding `stream` with a fresh AdaptiveModel, escape
// payloads included.
double adaptive_code_length(const SymbolStream& stream,
                            Profile profile = Profile::kSparse);

// n * H0 of the symbols (empirical order-0 entropy) plus 32 bits per escape.
double order0_code_length(const SymbolStream& stream);

}  // namespace mwp::entropy

#endif  // MWP_ENTROPY_HPP_
