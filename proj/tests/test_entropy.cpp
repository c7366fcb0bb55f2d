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

#include <doctest.h>

#include <cmath>
#include <random>

#include "mwp/entropy.hpp"
#include "mwp/error.hpp"
#include "oracles.hpp"

using namespace mwp;
using namespace mwp::entropy;

namespace {

SymbolStream random_stream(std::mt19937_64& rng, std::size_t n, double escape_rate) {
  std::vector<std::int64_t> residuals(n);
  std::geometric_distribution<int> mag(0.2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto& r : residuals) {
    std::int64_t v = mag(rng);
    if (u(rng) < escape_rate) v = 256 + static_cast<std::int64_t>(rng() % 0x7FFFFF00u);
    r = (rng() & 1) ? v : -v;
  }
  return map_residuals(residuals);
}

std::vector<std::size_t> sizes_of(const std::vector<SymbolStream>& streams) {
  std::vector<std::size_t> out;
  for (const auto& s : streams) out.push_back(s.size());
  return out;
}

}  // namespace

TEST_CASE("zigzag mapping examples") {
  CHECK(map_residual(0).symbol == 0);
  CHECK(map_residual(1).symbol == 2);
  CHECK(map_residual(-1).symbol == 1);
  CHECK(map_residual(-2).symbol == 3);
  CHECK(map_residual(255).symbol == 510);
  CHECK(map_residual(-256).symbol == 511);
  CHECK_FALSE(map_residual(-256).escaped());
}

TEST_CASE("values beyond the direct range escape") {
  const MappedResidual pos = map_residual(300);
  CHECK(pos.symbol == kEscPos);
  CHECK(pos.payload == 300);
  CHECK(unmap_residual(pos.symbol, pos.payload) == 300);
  const MappedResidual neg = map_residual(-257);
  CHECK(neg.symbol == kEscNeg);
  CHECK(unmap_residual(neg.symbol, neg.payload) == -257);
  const std::int64_t big = (std::int64_t{1} << 31) - 1;
  CHECK(unmap_residual(map_residual(big).symbol, map_residual(big).payload) == big);
  CHECK(unmap_residual(map_residual(-big).symbol, map_residual(-big).payload) == -big);
  CHECK_THROWS_AS(map_residual(std::int64_t{1} << 31), ArgumentError);
}

TEST_CASE("mapping round trip over the whole 20-bit range") {
  std::vector<std::int64_t> all;
  for (std::int64_t r = -(1 << 19); r <= (1 << 19); ++r) all.push_back(r);
  const SymbolStream s = map_residuals(all);
  std::size_t escapes = 0;
  for (auto sym : s.symbols) escapes += sym >= kEscPos;
  CHECK(escapes == s.escapes.size());
  CHECK(unmap_residuals(s) == all);
}

TEST_CASE("unmap rejects misaligned escape payloads") {
  SymbolStream s;
  s.symbols = {kEscPos};
  CHECK_THROWS_AS(unmap_residuals(s), CorruptionError);
  s.escapes = {300, 301};
  CHECK_THROWS_AS(unmap_residuals(s), CorruptionError);
}

TEST_CASE("a long run of zeros compresses to almost nothing") {
  SymbolStream s;
  s.symbols.assign(10000, 0);
  const auto bytes = ac_encode(std::vector<SymbolStream>{s});
  CHECK(bytes.size() < 300);
  const auto back = ac_decode(bytes, std::vector<std::size_t>{10000});
  CHECK(back[0] == s);
}

TEST_CASE("empty stream set flushes only the coder state") {
  const auto bytes = ac_encode(std::vector<SymbolStream>{});
  CHECK(bytes == std::vector<std::uint8_t>{0, 0, 0, 0, 0});
  CHECK(ac_decode(bytes, std::vector<std::size_t>{}).empty());
  const auto empties = ac_encode(std::vector<SymbolStream>(3));
  CHECK(ac_decode(empties, std::vector<std::size_t>{0, 0, 0}).size() == 3);
}

TEST_CASE("single-symbol streams round trip") {
  for (std::uint16_t sym : {0, 1, 511, 512, 513}) {
    SymbolStream s;
    s.symbols = {sym};
    if (sym >= kEscPos) s.escapes = {0x09ABCDEFu};
    const auto bytes = ac_encode(std::vector<SymbolStream>{s});
    CHECK(ac_decode(bytes, std::vector<std::size_t>{1})[0] == s);
  }
}

TEST_CASE("random multi-band stream sets round trip") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<SymbolStream> streams(1 + rng() % 6);
    for (auto& s : streams) s = random_stream(rng, rng() % 300, trial % 3 ? 0.0 : 0.05);
    const auto bytes = ac_encode(streams);
    REQUIRE(ac_decode(bytes, sizes_of(streams)) == streams);
  }
}

TEST_CASE("truncated or padded payloads raise corruption errors") {
  std::mt19937_64 rng(9);
  std::vector<SymbolStream> streams = {random_stream(rng, 500, 0.01), random_stream(rng, 800, 0.0)};
  const auto bytes = ac_encode(streams);
  for (std::size_t cut = 0; cut < bytes.size(); ++cut) {
    std::vector<std::uint8_t> head(bytes.begin(), bytes.begin() + cut);
    CHECK_THROWS_AS(ac_decode(head, sizes_of(streams)), CorruptionError);
  }
  auto padded = bytes;
  padded.push_back(0);
  CHECK_THROWS_AS(ac_decode(padded, sizes_of(streams)), CorruptionError);
  try {
    ac_decode(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + bytes.size() / 2),
              sizes_of(streams));
  } catch (const CorruptionError& e) {
    CHECK(std::string(e.what()).find("stream") != std::string::npos);
    CHECK(std::string(e.what()).find("symbol") != std::string::npos);
  }
}

TEST_CASE("decoder model tracks the encoder model after every symbol") {
  std::mt19937_64 rng(12);
  const SymbolStream s = random_stream(rng, 20000, 0.0);
  AdaptiveModel enc_model;
  RangeEncoder enc;
  std::vector<std::array<std::uint32_t, kAlphabetSize>> snapshots;
  for (auto sym : s.symbols) {
    encode_symbol(enc, enc_model, sym);
    snapshots.push_back(enc_model.counts());
  }
  const auto bytes = enc.finish();

  AdaptiveModel dec_model;
  RangeDecoder dec(bytes);
  for (std::size_t i = 0; i < s.symbols.size(); ++i) {
    REQUIRE(decode_symbol(dec, dec_model) == s.symbols[i]);
    REQUIRE(dec_model.counts() == snapshots[i]);
  }
}

TEST_CASE("adaptive model invariants") {
  AdaptiveModel m;
  CHECK(m.total() == kAlphabetSize);
  CHECK(m.increment() == kSparseIncrement);
  CHECK(AdaptiveModel(Profile::kDense).increment() == kDenseIncrement);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200000; ++i) {
    const auto sym = static_cast<std::uint16_t>(i % 7 == 0 ? rng() % kAlphabetSize : rng() % 4);
    m.update(sym);
    REQUIRE(m.total() <= AdaptiveModel::kMaxTotal);
  }
  CHECK(m.increment() == AdaptiveModel::kMinIncrement);
  std::uint32_t sum = 0;
  for (int s = 0; s < kAlphabetSize; ++s) {
    REQUIRE(m.frequency(static_cast<std::uint16_t>(s)) >= 1);
    REQUIRE(m.cumulative(static_cast<std::uint16_t>(s)) == sum);
    sum += m.frequency(static_cast<std::uint16_t>(s));
  }
  CHECK(sum == m.total());
  for (std::uint32_t t = 0; t < m.total(); t += 97) {
    const std::uint16_t s = m.find(t);
    REQUIRE(m.cumulative(s) <= t);
    REQUIRE(t < m.cumulative(s) + m.frequency(s));
  }
}

TEST_CASE("golden byte vector") {
  SymbolStream a;
  a.symbols = {0, 2, 1, 0, 0, 3, kEscPos, 0};
  a.escapes = {1000};
  SymbolStream b;
  b.symbols = {4, 4, 4};
  const auto bytes = ac_encode(std::vector<SymbolStream>{a, b});
  const std::vector<std::uint8_t> expected = {0x00, 0x00, 0x0E, 0x94, 0xD5, 0x31, 0x73, 0xE7, 0xD2,
                                              0x80, 0x1E, 0x61, 0x5B, 0x1D, 0x48, 0x22, 0x48};
  CHECK(bytes == expected);
  const auto back = ac_decode(expected, std::vector<std::size_t>{8, 3});
  CHECK(back[0] == a);
  CHECK(back[1] == b);
}

TEST_CASE("code length estimates bracket the real coder") {
  std::mt19937_64 rng(21);
  const SymbolStream s = random_stream(rng, 50000, 0.001);
  const double bits = 8.0 * ac_encode(std::vector<SymbolStream>{s}).size();
  const double ideal = adaptive_code_length(s);
  CHECK(std::abs(bits - ideal) < 64.0);
  CHECK(order0_code_length(s) ==
        doctest::Approx(oracle::order0_bits(s.symbols) + 32.0 * s.escapes.size()));
}

TEST_CASE("coder stays within 0.05 bits per symbol of order-0 entropy") {
  std::mt19937_64 rng(77);
  std::geometric_distribution<int> geo(0.3);
  std::vector<std::uint16_t> symbols(100000);
  for (auto& s : symbols) s = static_cast<std::uint16_t>(std::min(geo(rng), 511));
  SymbolStream stream;
  stream.symbols = symbols;
  const double bits = 8.0 * ac_encode(std::vector<SymbolStream>{stream}).size();
  CHECK(bits <= oracle::order0_bits(symbols) + 0.05 * symbols.size() + 1024);
}

TEST_CASE("both profiles round trip and suit different sources") {
  std::mt19937_64 rng(31);
  SymbolStream flat;
  for (int i = 0; i < 4096; ++i) flat.symbols.push_back(static_cast<std::uint16_t>(rng() % 400));
  SymbolStream zeros;
  zeros.symbols.assign(4096, 0);
  for (Profile p : {Profile::kSparse, Profile::kDense}) {
    const std::vector<SymbolStream> streams = {flat, zeros};
    const auto bytes = ac_encode(streams, p);
    CHECK(ac_decode(bytes, std::vector<std::size_t>{4096, 4096}, p) == streams);
  }
  CHECK(adaptive_code_length(flat, Profile::kDense) < adaptive_code_length(flat, Profile::kSparse));
  CHECK(adaptive_code_length(zeros, Profile::kSparse) < adaptive_code_length(zeros, Profile::kDense));
}
