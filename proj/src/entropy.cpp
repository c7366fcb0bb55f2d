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

#include "mwp/entropy.hpp"

#include <cmath>
#include <string>

#include "mwp/error.hpp"

namespace mwp::entropy {

MappedResidual map_residual(std::int64_t r) {
  constexpr std::int64_t kLimit = std::int64_t{1} << 31;
  if (r <= -kLimit || r >= kLimit) {
    throw ArgumentError("residual " + std::to_string(r) + " exceeds 31-bit magnitude");
  }
  const std::uint64_t z = r >= 0 ? static_cast<std::uint64_t>(r) * 2
                                 : static_cast<std::uint64_t>(-r) * 2 - 1;
  if (z < kDirectSymbols) return {static_cast<std::uint16_t>(z), 0};
  return {r > 0 ? kEscPos : kEscNeg,
          static_cast<std::uint32_t>(r > 0 ? r : -r)};
}

std::int64_t unmap_residual(std::uint16_t symbol, std::uint32_t payload) {
  if (symbol == kEscPos) return static_cast<std::int64_t>(payload);
  if (symbol == kEscNeg) return -static_cast<std::int64_t>(payload);
  return (symbol & 1) ? -static_cast<std::int64_t>((symbol + 1) / 2)
                      : static_cast<std::int64_t>(symbol / 2);
}

SymbolStream map_residuals(std::span<const std::int64_t> residuals) {
  SymbolStream s;
  s.symbols.reserve(residuals.size());
  for (std::int64_t r : residuals) {
    const MappedResidual m = map_residual(r);
    s.symbols.push_back(m.symbol);
    if (m.escaped()) s.escapes.push_back(m.payload);
  }
  return s;
}

std::vector<std::int64_t> unmap_residuals(const SymbolStream& stream) {
  std::vector<std::int64_t> out;
  out.reserve(stream.symbols.size());
  std::size_t next_escape = 0;
  for (std::uint16_t sym : stream.symbols) {
    if (sym >= kAlphabetSize) throw CorruptionError("symbol out of alphabet");
    std::uint32_t payload = 0;
    if (sym >= kEscPos) {
      if (next_escape >= stream.escapes.size()) {
        throw CorruptionError("escape symbol without payload");
      }
      payload = stream.escapes[next_escape++];
    }
    out.push_back(unmap_residual(sym, payload));
  }
  if (next_escape != stream.escapes.size()) {
    throw CorruptionError("unused escape payloads");
  }
  return out;
}

// --- AdaptiveModel ---------------------------------------------------------

AdaptiveModel::AdaptiveModel(Profile profile)
    : increment_(initial_increment(profile)) {
  counts_.fill(1);
  total_ = kAlphabetSize;
  rebuild_tree();
}

void AdaptiveModel::rebuild_tree() {
  tree_.fill(0);
  for (int i = 1; i <= kAlphabetSize; ++i) {
    tree_[i] += counts_[i - 1];
    const int parent = i + (i & -i);
    if (parent <= kAlphabetSize) tree_[parent] += tree_[i];
  }
}

std::uint32_t AdaptiveModel::cumulative(std::uint16_t symbol) const {
  std::uint32_t sum = 0;
  for (int i = symbol; i > 0; i -= i & -i) sum += tree_[i];
  return sum;
}

std::uint16_t AdaptiveModel::find(std::uint32_t target) const {
  // Largest prefix whose sum stays <= target.
  int pos = 0;
  for (int step = 512; step > 0; step >>= 1) {
    const int next = pos + step;
    if (next <= kAlphabetSize && tree_[next] <= target) {
      pos = next;
      target -= tree_[next];
    }
  }
  return static_cast<std::uint16_t>(pos);
}

void AdaptiveModel::update(std::uint16_t symbol) {
  counts_[symbol] += increment_;
  total_ += increment_;
  if (total_ > kMaxTotal) {
    total_ = 0;
    for (std::uint32_t& c : counts_) {
      c = c / 2 > 0 ? c / 2 : 1;
      total_ += c;
    }
    if (increment_ > kMinIncrement) increment_ /= 2;
    rebuild_tree();
    return;
  }
  for (int i = symbol + 1; i <= kAlphabetSize; i += i & -i) tree_[i] += increment_;
}

// --- RangeEncoder ----------------------------------------------------------

namespace {
constexpr std::uint32_t kTop = 1u << 24;
}  // namespace

void RangeEncoder::shift_low() {
  if (static_cast<std::uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
    const auto carry = static_cast<std::uint8_t>(low_ >> 32);
    std::uint8_t pending = cache_;
    do {
      out_.push_back(static_cast<std::uint8_t>(pending + carry));
      pending = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<std::uint8_t>(low_ >> 24);
  }
  ++cache_size_;
  low_ = (low_ & 0x00FFFFFFu) << 8;
}

void RangeEncoder::encode(std::uint32_t cum, std::uint32_t freq,
                          std::uint32_t total) {
  const std::uint32_t step = range_ / total;
  low_ += static_cast<std::uint64_t>(step) * cum;
  range_ = step * freq;
  while (range_ < kTop) {
    range_ <<= 8;
    shift_low();
  }
}

void RangeEncoder::encode_raw16(std::uint32_t bits) {
  const std::uint32_t step = range_ >> 16;
  low_ += static_cast<std::uint64_t>(step) * (bits & 0xFFFFu);
  range_ = step;
  while (range_ < kTop) {
    range_ <<= 8;
    shift_low();
  }
}

std::vector<std::uint8_t> RangeEncoder::finish() {
  for (int i = 0; i < 5; ++i) shift_low();
  return std::move(out_);
}

// --- RangeDecoder ----------------------------------------------------------

RangeDecoder::RangeDecoder(std::span<const std::uint8_t> bytes) : bytes_(bytes) {
  if (next_byte() != 0) throw CorruptionError("range coder stream must start with 0");
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | next_byte();
}

std::uint8_t RangeDecoder::next_byte() {
  if (pos_ >= bytes_.size()) throw CorruptionError("range coder stream exhausted");
  return bytes_[pos_++];
}

void RangeDecoder::normalize() {
  while (range_ < kTop) {
    code_ = (code_ << 8) | next_byte();
    range_ <<= 8;
  }
}

std::uint32_t RangeDecoder::target(std::uint32_t total) {
  step_ = range_ / total;
  const std::uint32_t v = code_ / step_;
  if (v >= total) throw CorruptionError("range coder state outside coded interval");
  return v;
}

void RangeDecoder::consume(std::uint32_t cum, std::uint32_t freq) {
  code_ -= step_ * cum;
  range_ = step_ * freq;
  normalize();
}

std::uint32_t RangeDecoder::decode_raw16() {
  step_ = range_ >> 16;
  const std::uint32_t v = code_ / step_;
  if (v > 0xFFFFu) throw CorruptionError("range coder state outside raw interval");
  code_ -= step_ * v;
  range_ = step_;
  normalize();
  return v;
}

// --- Stream coding ---------------------------------------------------------

void encode_symbol(RangeEncoder& enc, AdaptiveModel& model, std::uint16_t symbol) {
  enc.encode(model.cumulative(symbol), model.frequency(symbol), model.total());
  model.update(symbol);
}

std::uint16_t decode_symbol(RangeDecoder& dec, AdaptiveModel& model) {
  const std::uint16_t symbol = model.find(dec.target(model.total()));
  dec.consume(model.cumulative(symbol), model.frequency(symbol));
  model.update(symbol);
  return symbol;
}

std::vector<std::uint8_t> ac_encode(std::span<const SymbolStream> streams,
                                    Profile profile) {
  RangeEncoder enc;
  for (const SymbolStream& s : streams) {
    AdaptiveModel model(profile);
    std::size_t next_escape = 0;
    for (std::uint16_t sym : s.symbols) {
      encode_symbol(enc, model, sym);
      if (sym >= kEscPos) {
        const std::uint32_t payload = s.escapes.at(next_escape++);
        enc.encode_raw16(payload >> 16);
        enc.encode_raw16(payload & 0xFFFFu);
      }
    }
  }
  return enc.finish();
}

std::vector<SymbolStream> ac_decode(std::span<const std::uint8_t> bytes,
                                    std::span<const std::size_t> stream_sizes,
                                    Profile profile) {
  std::vector<SymbolStream> out(stream_sizes.size());
  std::size_t stream = 0, index = 0;
  try {
    RangeDecoder dec(bytes);
    for (; stream < stream_sizes.size(); ++stream) {
      AdaptiveModel model(profile);
      SymbolStream& s = out[stream];
      s.symbols.reserve(stream_sizes[stream]);
      for (index = 0; index < stream_sizes[stream]; ++index) {
        const std::uint16_t sym = decode_symbol(dec, model);
        s.symbols.push_back(sym);
        if (sym >= kEscPos) {
          const std::uint32_t hi = dec.decode_raw16();
          const std::uint32_t lo = dec.decode_raw16();
          const std::uint32_t payload = (hi << 16) | lo;
          if (payload >= 0x80000000u) {
            throw CorruptionError("escape magnitude exceeds 31 bits");
          }
          s.escapes.push_back(payload);
        }
      }
    }
    if (!dec.exhausted()) {
      throw CorruptionError(std::to_string(bytes.size() - dec.position()) +
                            " unread trailing bytes");
    }
  } catch (const CorruptionError& e) {
    if (stream >= stream_sizes.size()) throw;
    throw CorruptionError(std::string(e.what()) + " (stream " +
                          std::to_string(stream) + ", symbol " +
                          std::to_string(index) + ")");
  }
  return out;
}

double adaptive_code_length(const SymbolStream& stream, Profile profile) {
  AdaptiveModel model(profile);
  double bits = 0;
  for (std::uint16_t sym : stream.symbols) {
    bits += std::log2(static_cast<double>(model.total()) / model.frequency(sym));
    model.update(sym);
  }
  return bits + 32.0 * static_cast<double>(stream.escapes.size());
}

double order0_code_length(const SymbolStream& stream) {
  std::array<std::uint32_t, kAlphabetSize> hist{};
  for (std::uint16_t sym : stream.symbols) ++hist[sym];
  const double n = static_cast<double>(stream.symbols.size());
  double bits = 0;
  for (std::uint32_t c : hist) {
    if (c != 0) bits += c * std::log2(n / c);
  }
  return bits + 32.0 * static_cast<double>(stream.escapes.size());
}

}  // namespace mwp::entropy
