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

#include <cstdlib>
#include <random>

#include "mwp/error.hpp"
#include "mwp/lifting.hpp"
#include "oracles.hpp"

using namespace mwp;

namespace {

struct ThreadsEnv {
  explicit ThreadsEnv(const char* value) { ::setenv("MWP_THREADS", value, 1); }
  ~ThreadsEnv() { ::unsetenv("MWP_THREADS"); }
};

}  // namespace

TEST_CASE("1-D lifting on a short ramp") {
  const std::vector<std::int32_t> x = {0, 1, 2, 3, 4, 5};
  std::vector<std::int32_t> s(3), d(3);
  lifting::forward_1d(x, s, d);
  CHECK(d == std::vector<std::int32_t>{0, 0, 1});
  CHECK(s == std::vector<std::int32_t>{0, 2, 4});

  std::vector<std::int32_t> back(6);
  lifting::inverse_1d(s, d, back);
  CHECK(back == x);
}

TEST_CASE("1-D lifting handles odd and unit lengths") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 33; ++n) {
    std::vector<std::int32_t> x(n);
    for (auto& v : x) v = oracle::uniform_int(rng, -70000, 70000);
    std::vector<std::int32_t> s((n + 1) / 2), d(n / 2), back(n);
    lifting::forward_1d(x, s, d);
    lifting::inverse_1d(s, d, back);
    REQUIRE(back == x);
  }
  std::vector<std::int32_t> one = {42}, s(1), d, back(1);
  lifting::forward_1d(one, s, d);
  CHECK(s[0] == 42);
}

TEST_CASE("constant images have zero detail bands") {
  GrayImage img(64, 64, 8);
  std::fill(img.samples.begin(), img.samples.end(), 77);
  const SubbandPyramid pyr = forward(img, 3);
  for (std::size_t b = 1; b < pyr.bands.size(); ++b) {
    for (auto v : pyr.bands[b].coeffs) REQUIRE(v == 0);
  }
  for (auto v : pyr.bands[0].coeffs) CHECK(v == 77);
}

TEST_CASE("pyramid layout for 128x128 at three levels") {
  const SubbandPyramid pyr = make_pyramid_layout(128, 128, 8, 3);
  REQUIRE(pyr.bands.size() == 10);
  CHECK(pyr.bands[0].rows == 16);
  CHECK(pyr.bands[0].cols == 16);
  CHECK(pyr.band(1, Orientation::kHL).rows == 16);
  CHECK(pyr.band(3, Orientation::kHH).rows == 64);
  CHECK(pyr.bands[1].name() == "L1_HL");
  CHECK(pyr.bands[9].name() == "L3_HH");
}

TEST_CASE("odd geometry splits low halves up") {
  const SubbandPyramid pyr = make_pyramid_layout(61, 37, 16, 1);
  CHECK(pyr.bands[0].rows == 19);
  CHECK(pyr.bands[0].cols == 31);
  const Subband& hl = pyr.band(1, Orientation::kHL);
  const Subband& lh = pyr.band(1, Orientation::kLH);
  const Subband& hh = pyr.band(1, Orientation::kHH);
  CHECK(hl.rows == 19);
  CHECK(hl.cols == 30);
  CHECK(lh.rows == 18);
  CHECK(lh.cols == 31);
  CHECK(hh.rows == 18);
  CHECK(hh.cols == 30);
  std::size_t total = 0;
  for (const auto& b : pyr.bands) total += b.size();
  CHECK(total == 61u * 37u);
}

TEST_CASE("layout rejects bad levels and tiny images") {
  CHECK_THROWS_AS(make_pyramid_layout(64, 64, 8, 0), ArgumentError);
  CHECK_THROWS_AS(make_pyramid_layout(64, 64, 8, 9), ArgumentError);
  CHECK_THROWS_AS(make_pyramid_layout(7, 64, 8, 3), ArgumentError);
  CHECK_NOTHROW(make_pyramid_layout(8, 8, 8, 3));
}

TEST_CASE("parallel kernel matches the serial reference bit for bit") {
  std::mt19937_64 rng(5);
  for (const char* threads : {"0", "1", "3", "8"}) {
    ThreadsEnv env(threads);
    for (int i = 0; i < 40; ++i) {
      const int levels = oracle::uniform_int(rng, 1, 4);
      const int lo = 1 << levels;
      const GrayImage img = oracle::random_image(rng, oracle::uniform_int(rng, lo, 90),
                                                 oracle::uniform_int(rng, lo, 90), (i % 2) ? 16 : 8);
      const SubbandPyramid fast = forward(img, levels);
      const SubbandPyramid ref = lifting::reference::forward(img, levels);
      REQUIRE(fast == ref);
      REQUIRE(inverse(fast) == img);
      REQUIRE(lifting::reference::inverse(ref) == img);
    }
  }
}

TEST_CASE("perfect reconstruction over random images") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const int levels = oracle::uniform_int(rng, 1, 5);
    const int lo = 1 << levels;
    const int depth = (i % 2) ? 16 : 8;
    const GrayImage img = oracle::random_image(rng, oracle::uniform_int(rng, lo, lo + 40),
                                               oracle::uniform_int(rng, lo, lo + 40), depth);
    const SubbandPyramid pyr = forward(img, levels);
    for (const auto& b : pyr.bands) {
      for (auto v : b.coeffs) REQUIRE(std::abs(v) < kCoefficientLimit);
    }
    REQUIRE(inverse(pyr) == img);
  }
}

TEST_CASE("16-bit 37x61 image rejects eight levels and round-trips at three") {
  std::mt19937_64 rng(99);
  const GrayImage img = oracle::random_image(rng, 37, 61, 16);
  CHECK_THROWS_AS(forward(img, 8), ArgumentError);
  const SubbandPyramid pyr = forward(img, 3);
  CHECK(inverse(pyr) == img);
}

TEST_CASE("extreme 16-bit checkerboard stays in range at eight levels") {
  GrayImage img(256, 256, 16);
  for (int r = 0; r < 256; ++r)
    for (int c = 0; c < 256; ++c) img.at(r, c) = ((r + c) % 2) ? 65535 : 0;
  const SubbandPyramid pyr = forward(img, 8);
  CHECK(inverse(pyr) == img);
}

TEST_CASE("all-zero pyramid inverts to an all-zero image") {
  const SubbandPyramid pyr = make_pyramid_layout(40, 24, 8, 3);
  const GrayImage img = inverse(pyr);
  CHECK(img.width == 40);
  CHECK(img.height == 24);
  for (auto v : img.samples) CHECK(v == 0);
}

TEST_CASE("inverse rejects inconsistent pyramids") {
  SubbandPyramid pyr = make_pyramid_layout(32, 32, 8, 2);
  SUBCASE("wrong band size") {
    pyr.bands[3].coeffs.pop_back();
    CHECK_THROWS_AS(inverse(pyr), FormatError);
  }
  SUBCASE("wrong band count") {
    pyr.bands.pop_back();
    CHECK_THROWS_AS(inverse(pyr), FormatError);
  }
  SUBCASE("coefficient beyond the limit") {
    pyr.bands[2].coeffs[0] = kCoefficientLimit;
    CHECK_THROWS_AS(inverse(pyr), CorruptionError);
  }
  SUBCASE("reconstruction outside the sample range") {
    for (auto& v : pyr.bands[0].coeffs) v = 1000;
    CHECK_THROWS_AS(inverse(pyr), CorruptionError);
  }
}
