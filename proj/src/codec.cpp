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

#include "mwp/codec.hpp"

#include <zlib.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "mwp/entropy.hpp"
#include "mwp/error.hpp"
#include "mwp/lifting.hpp"
#include "mwp/parallel.hpp"

namespace mwp {

namespace {

constexpr std::uint8_t kMagic[4] = {'M', 'W', 'P', '1'};
// magic, version, flags, depth, levels, width, height, payload length, crc
constexpr std::size_t kFixedBytes = 4 + 4 + 4 + 4 + 4 + 4;

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
  return static_cast<std::uint32_t>(
      crc32_z(crc32_z(0L, Z_NULL, 0), bytes.data(), bytes.size()));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return std::uint32_t{b[at]} | (std::uint32_t{b[at + 1]} << 8) |
         (std::uint32_t{b[at + 2]} << 16) | (std::uint32_t{b[at + 3]} << 24);
}

std::vector<std::int64_t> widen(const std::vector<std::int32_t>& v) {
  return {v.begin(), v.end()};
}

struct BandPlan {
  PredictionModel model;
  entropy::SymbolStream stream;       // residuals under `model`
  entropy::SymbolStream zero_stream;  // residuals under the zero model
};

struct Encoded {
  std::vector<std::uint8_t> bytes;
  std::vector<BandReport> bands;
};

bool fits_alphabet(const std::vector<std::int64_t>& res) {
  constexpr std::int64_t kLimit = std::int64_t{1} << 31;
  return std::all_of(res.begin(), res.end(),
                     [](std::int64_t r) { return r > -kLimit && r < kLimit; });
}

BandPlan plan_band(const SubbandPyramid& pyr, std::size_t bi, const CodecConfig& cfg) {
  BandPlan plan;
  plan.zero_stream = entropy::map_residuals(widen(pyr.bands[bi].coeffs));
  if (!cfg.predict) return plan;
  BandEncoding enc = encode_band(pyr, bi, cfg.selection);
  if (enc.model.is_zero() || !fits_alphabet(enc.residuals.residuals)) return plan;
  plan.model = std::move(enc.model);
  plan.stream = entropy::map_residuals(enc.residuals.residuals);
  return plan;
}

// The selection objective is an order-0 estimate; keep a band's model only
// if the adaptive coder agrees it pays for its record bytes.
bool model_pays(const BandPlan& plan, entropy::Profile profile) {
  if (plan.model.is_zero()) return false;
  const double with_model = entropy::adaptive_code_length(plan.stream, profile) +
                            8.0 * static_cast<double>(plan.model.record_bytes());
  const double without = entropy::adaptive_code_length(plan.zero_stream, profile) + 16.0;
  return with_model < without;
}

double symbol_entropy(const entropy::SymbolStream& s) {
  if (s.symbols.empty()) return 0;
  entropy::SymbolStream bare{s.symbols, {}};
  return entropy::order0_code_length(bare) / static_cast<double>(s.size());
}

Encoded encode_image(const GrayImage& img, const CodecConfig& cfg) {
  img.validate();
  if (cfg.levels < kMinLevels || cfg.levels > kMaxLevels) {
    throw ArgumentError("levels must be in [1, 8], got " + std::to_string(cfg.levels));
  }
  if (img.pixel_count() > kMaxPixels) throw ArgumentError("image exceeds pixel limit");
  const SubbandPyramid pyr = forward(img, cfg.levels);
  const std::size_t nbands = pyr.bands.size();

  std::vector<BandPlan> plans(nbands);
  plans[0].zero_stream = entropy::map_residuals(dpcm_encode(pyr.bands[0]).residuals);

  const int threads = parallel::thread_count();
  const long details = static_cast<long>(nbands) - 1;
#pragma omp parallel for num_threads(threads) if (threads > 1) schedule(dynamic)
  for (long k = 0; k < details; ++k) {
    plans[k + 1] = plan_band(pyr, static_cast<std::size_t>(k + 1), cfg);
  }

  // Candidates: each entropy profile, with the models that pay for
  // themselves and with none at all. The smallest container wins; ties keep
  // the earlier candidate.
  Container base;
  base.bit_depth = img.bit_depth;
  base.levels = cfg.levels;
  base.width = static_cast<std::uint32_t>(img.width);
  base.height = static_cast<std::uint32_t>(img.height);

  Encoded best;
  std::vector<bool> best_uses(nbands, false);
  for (entropy::Profile profile : {entropy::Profile::kSparse, entropy::Profile::kDense}) {
    std::vector<bool> uses(nbands, false);
    bool any_model = false;
    for (std::size_t bi = 1; bi < nbands; ++bi) {
      uses[bi] = model_pays(plans[bi], profile);
      any_model = any_model || uses[bi];
    }
    for (bool with_models : {true, false}) {
      if (with_models && !any_model) continue;
      Container c = base;
      if (profile == entropy::Profile::kDense) c.flags |= kFlagDenseEntropy;
      std::vector<entropy::SymbolStream> streams;
      for (std::size_t bi = 0; bi < nbands; ++bi) {
        const bool use = with_models && uses[bi];
        streams.push_back(use ? plans[bi].stream : plans[bi].zero_stream);
        if (bi > 0) c.models.push_back(use ? plans[bi].model : PredictionModel{});
      }
      c.payload = entropy::ac_encode(streams, profile);
      std::vector<std::uint8_t> bytes = serialize_container(c);
      if (best.bytes.empty() || bytes.size() < best.bytes.size()) {
        best.bytes = std::move(bytes);
        best_uses = with_models ? uses : std::vector<bool>(nbands, false);
      }
    }
  }

  for (std::size_t bi = 0; bi < nbands; ++bi) {
    const BandPlan& p = plans[bi];
    if (best_uses[bi]) {
      best.bands.push_back({pyr.bands[bi].name(), p.model.mask, p.model.coeffs.size(),
                            symbol_entropy(p.stream)});
    } else {
      best.bands.push_back({pyr.bands[bi].name(), 0, 0, symbol_entropy(p.zero_stream)});
    }
  }
  return best;
}

}  // namespace

std::uint64_t max_pixels_for_payload(std::size_t payload_bytes) {
  return 712 * static_cast<std::uint64_t>(payload_bytes) + 1024;
}

std::size_t Container::model_record_bytes() const {
  std::size_t n = 0;
  for (const PredictionModel& m : models) n += m.record_bytes();
  return n;
}

std::vector<std::uint8_t> serialize_container(const Container& c) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(c.version);
  out.push_back(c.flags);
  out.push_back(static_cast<std::uint8_t>(c.bit_depth));
  out.push_back(static_cast<std::uint8_t>(c.levels));
  put_u32(out, c.width);
  put_u32(out, c.height);
  for (const PredictionModel& m : c.models) append_model(m, out);
  put_u32(out, static_cast<std::uint32_t>(c.payload.size()));
  out.insert(out.end(), c.payload.begin(), c.payload.end());
  put_u32(out, crc32_of(out));
  return out;
}

Container parse_container(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kFixedBytes) {
    throw FormatError("container too short (" + std::to_string(bytes.size()) + " bytes)");
  }
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw FormatError("bad magic", 0);
  }
  if (bytes[4] != kContainerVersion) {
    throw FormatError("unsupported version " + std::to_string(bytes[4]), 4);
  }
  const std::size_t body = bytes.size() - 4;
  if (crc32_of(bytes.first(body)) != get_u32(bytes, body)) {
    throw FormatError("CRC mismatch", body);
  }

  Container c;
  c.version = bytes[4];
  c.flags = bytes[5];
  if ((c.flags & kFlagWavelet) != kWavelet53) {
    throw FormatError("unsupported wavelet flags " + std::to_string(c.flags), 5);
  }
  if (c.flags & ~(kFlagWavelet | kFlagDenseEntropy)) {
    throw FormatError("reserved flag bits set: " + std::to_string(c.flags), 5);
  }
  c.bit_depth = bytes[6];
  if (c.bit_depth != 8 && c.bit_depth != 16) {
    throw FormatError("bit depth must be 8 or 16", 6);
  }
  c.levels = bytes[7];
  if (c.levels < kMinLevels || c.levels > kMaxLevels) {
    throw FormatError("levels must be in [1, 8]", 7);
  }
  c.width = get_u32(bytes, 8);
  c.height = get_u32(bytes, 12);
  const std::uint32_t min_dim = 1u << c.levels;
  if (c.width < min_dim || c.height < min_dim || c.width > 0x7FFFFFFFu ||
      c.height > 0x7FFFFFFFu ||
      std::uint64_t{c.width} * c.height > kMaxPixels) {
    throw FormatError("implausible geometry " + std::to_string(c.width) + "x" +
                          std::to_string(c.height),
                      8);
  }

  std::size_t offset = 16;
  const std::span<const std::uint8_t> header = bytes.first(body);
  for (int i = 0; i < 3 * c.levels; ++i) c.models.push_back(read_model(header, offset));
  if (offset + 4 > body) throw FormatError("truncated payload length", offset);
  const std::uint32_t len = get_u32(bytes, offset);
  offset += 4;
  if (static_cast<std::uint64_t>(offset) + len != body) {
    throw FormatError("payload length " + std::to_string(len) +
                          " does not match container size",
                      offset - 4);
  }
  c.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                   bytes.begin() + static_cast<std::ptrdiff_t>(body));
  return c;
}

std::vector<std::uint8_t> compress(const GrayImage& img, const CodecConfig& cfg) {
  return encode_image(img, cfg).bytes;
}

GrayImage decompress(std::span<const std::uint8_t> bytes) {
  const Container c = parse_container(bytes);
  const std::uint64_t pixels = std::uint64_t{c.width} * c.height;
  if (pixels > max_pixels_for_payload(c.payload.size())) {
    throw CorruptionError("payload of " + std::to_string(c.payload.size()) +
                          " bytes cannot hold " + std::to_string(pixels) + " pixels");
  }
  PartialPyramid partial(make_pyramid_layout(static_cast<int>(c.width),
                                             static_cast<int>(c.height),
                                             c.bit_depth, c.levels));
  const SubbandPyramid& layout = partial.pyramid();
  std::vector<std::size_t> sizes;
  for (const Subband& b : layout.bands) sizes.push_back(b.size());

  const std::vector<entropy::SymbolStream> streams = entropy::ac_decode(c.payload, sizes, c.profile());
  for (std::size_t bi = 0; bi < streams.size(); ++bi) {
    const Subband& b = layout.bands[bi];
    const ResidualPlane res{bi, b.rows, b.cols, entropy::unmap_residuals(streams[bi])};
    if (bi == 0) {
      partial.decode_ll(res);
    } else {
      partial.decode_band(bi, c.models[bi - 1], res);
    }
  }
  return inverse(std::move(partial).release());
}

Report measure(const GrayImage& img, const CodecConfig& cfg, int repeats) {
  using Clock = std::chrono::steady_clock;
  if (repeats < 1) throw ArgumentError("repeats must be >= 1");
  Report rep;
  rep.width = static_cast<std::size_t>(img.width);
  rep.height = static_cast<std::size_t>(img.height);
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = Clock::now();
    Encoded enc = encode_image(img, cfg);
    const auto t1 = Clock::now();
    const GrayImage back = decompress(enc.bytes);
    const auto t2 = Clock::now();
    if (back != img) throw CorruptionError("round trip mismatch");
    rep.encode_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
    rep.decode_ms += std::chrono::duration<double, std::milli>(t2 - t1).count();
    rep.container_bytes = enc.bytes.size();
    rep.per_band = std::move(enc.bands);
  }
  rep.encode_ms /= repeats;
  rep.decode_ms /= repeats;
  rep.bpp = bits_per_pixel(rep.container_bytes, img.pixel_count());
  return rep;
}

namespace {

std::string mask_roles(RoleMask mask) {
  std::string s;
  for (int k = 0; k < kRoleCount; ++k) {
    if (!(mask & (1u << k))) continue;
    if (!s.empty()) s += "+";
    s += role_name(static_cast<Role>(k));
  }
  return s.empty() ? "-" : s;
}

}  // namespace

std::string Report::to_csv() const {
  std::string out = "band,mask,roles,residual_entropy\n";
  char buf[160];
  for (const BandReport& b : per_band) {
    std::snprintf(buf, sizeof buf, "%s,0x%03x,%s,%.6f\n", b.name.c_str(),
                  static_cast<unsigned>(b.mask), mask_roles(b.mask).c_str(),
                  b.residual_entropy);
    out += buf;
  }
  return out;
}

std::string Report::to_table() const {
  std::string out;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%zux%zu  %zu bytes  %.4f bpp  encode %.2f ms  decode %.2f ms\n",
                width, height, container_bytes, bpp, encode_ms, decode_ms);
  out += buf;
  std::snprintf(buf, sizeof buf, "  %-8s %-6s %-9s %s\n", "band", "mask", "H0(bits)", "roles");
  out += buf;
  for (const BandReport& b : per_band) {
    std::snprintf(buf, sizeof buf, "  %-8s 0x%03x  %-9.4f %s\n", b.name.c_str(),
                  static_cast<unsigned>(b.mask), b.residual_entropy,
                  mask_roles(b.mask).c_str());
    out += buf;
  }
  return out;
}

}  // namespace mwp
