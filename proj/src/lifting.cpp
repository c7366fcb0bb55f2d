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

#include "mwp/lifting.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "mwp/error.hpp"
#include "mwp/parallel.hpp"

namespace mwp {

const char* orientation_name(Orientation o) {
  switch (o) {
    case Orientation::kLL: return "LL";
    case Orientation::kHL: return "HL";
    case Orientation::kLH: return "LH";
    case Orientation::kHH: return "HH";
  }
  return "?";
}

std::string Subband::name() const {
  if (orientation == Orientation::kLL) return "LL";
  return "L" + std::to_string(level) + "_" + orientation_name(orientation);
}

SubbandPyramid make_pyramid_layout(int width, int height, int bit_depth,
                                   int levels) {
  if (levels < kMinLevels || levels > kMaxLevels) {
    throw ArgumentError("levels must be in [1, 8], got " +
                        std::to_string(levels));
  }
  if (width < (1 << levels) || height < (1 << levels)) {
    throw ArgumentError(std::to_string(width) + "x" + std::to_string(height) +
                        " image is too small for " + std::to_string(levels) +
                        " levels");
  }
  SubbandPyramid pyr;
  pyr.levels = levels;
  pyr.width = width;
  pyr.height = height;
  pyr.bit_depth = bit_depth;
  pyr.bands.resize(SubbandPyramid::band_count(levels));

  // Walk finest to coarsest; level numbering counts from the coarse end.
  int w = width;
  int h = height;
  for (int step = 0; step < levels; ++step) {
    const int level = levels - step;
    const int lw = (w + 1) / 2, hw = w / 2;
    const int lh = (h + 1) / 2, hh = h / 2;
    auto set = [&](Orientation o, int rows, int cols) {
      Subband& b = pyr.band(level, o);
      b.level = level;
      b.orientation = o;
      b.rows = rows;
      b.cols = cols;
      b.coeffs.assign(static_cast<std::size_t>(rows) * cols, 0);
    };
    set(Orientation::kHL, lh, hw);
    set(Orientation::kLH, hh, lw);
    set(Orientation::kHH, hh, hw);
    w = lw;
    h = lh;
  }
  Subband& ll = pyr.bands[0];
  ll.level = 0;
  ll.orientation = Orientation::kLL;
  ll.rows = h;
  ll.cols = w;
  ll.coeffs.assign(static_cast<std::size_t>(h) * w, 0);
  return pyr;
}

namespace lifting {

namespace {

// Index of the right-hand even neighbor x[2i+2] under whole-sample mirroring.
inline int right_even(int i, int n) { return 2 * i + 2 < n ? 2 * i + 2 : 2 * i; }

}  // namespace

void forward_1d(std::span<const std::int32_t> x, std::span<std::int32_t> low,
                std::span<std::int32_t> high) {
  const int n = static_cast<int>(x.size());
  const int nl = (n + 1) / 2, nh = n / 2;
  if (nh == 0) {
    if (n == 1) low[0] = x[0];
    return;
  }
  for (int i = 0; i < nh; ++i) {
    high[i] = x[2 * i + 1] -
              static_cast<std::int32_t>(
                  (std::int64_t{x[2 * i]} + x[right_even(i, n)]) >> 1);
  }
  for (int i = 0; i < nl; ++i) {
    const std::int64_t dl = high[std::max(i - 1, 0)];
    const std::int64_t dr = high[std::min(i, nh - 1)];
    low[i] = x[2 * i] + static_cast<std::int32_t>((dl + dr + 2) >> 2);
  }
}

void inverse_1d(std::span<const std::int32_t> low,
                std::span<const std::int32_t> high, std::span<std::int32_t> x) {
  const int n = static_cast<int>(x.size());
  const int nl = (n + 1) / 2, nh = n / 2;
  if (nh == 0) {
    if (n == 1) x[0] = low[0];
    return;
  }
  for (int i = 0; i < nl; ++i) {
    const std::int64_t dl = high[std::max(i - 1, 0)];
    const std::int64_t dr = high[std::min(i, nh - 1)];
    x[2 * i] = low[i] - static_cast<std::int32_t>((dl + dr + 2) >> 2);
  }
  for (int i = 0; i < nh; ++i) {
    x[2 * i + 1] = high[i] + static_cast<std::int32_t>(
                                 (std::int64_t{x[2 * i]} + x[right_even(i, n)]) >> 1);
  }
}

}  // namespace lifting

namespace {

// Row-major working plane; each level operates on its top-left w x h corner.
struct Plane {
  int stride = 0;
  std::vector<std::int32_t> data;

  std::int32_t* row(int r) { return data.data() + static_cast<std::size_t>(r) * stride; }
  const std::int32_t* row(int r) const {
    return data.data() + static_cast<std::size_t>(r) * stride;
  }
};

void forward_rows(Plane& p, int w, int h, int threads) {
#pragma omp parallel num_threads(threads) if (threads > 1)
  {
    std::vector<std::int32_t> tmp(w);
#pragma omp for schedule(static)
    for (int r = 0; r < h; ++r) {
      std::int32_t* row = p.row(r);
      std::copy(row, row + w, tmp.begin());
      const int nl = (w + 1) / 2;
      lifting::forward_1d(tmp, std::span(row, nl), std::span(row + nl, w - nl));
    }
  }
}

void inverse_rows(Plane& p, int w, int h, int threads) {
#pragma omp parallel num_threads(threads) if (threads > 1)
  {
    std::vector<std::int32_t> tmp(w);
#pragma omp for schedule(static)
    for (int r = 0; r < h; ++r) {
      std::int32_t* row = p.row(r);
      const int nl = (w + 1) / 2;
      lifting::inverse_1d(std::span<const std::int32_t>(row, nl),
                          std::span<const std::int32_t>(row + nl, w - nl), tmp);
      std::copy(tmp.begin(), tmp.end(), row);
    }
  }
}

// Column lifting applied a whole row at a time so the inner loop runs along
// contiguous memory.
void forward_columns(Plane& p, int w, int h, int threads) {
  const int nl = (h + 1) / 2, nh = h / 2;
  std::vector<std::int32_t> src(static_cast<std::size_t>(w) * h);
  for (int r = 0; r < h; ++r) std::copy(p.row(r), p.row(r) + w, src.begin() + static_cast<std::size_t>(r) * w);
  auto in = [&](int r) { return src.data() + static_cast<std::size_t>(r) * w; };

#pragma omp parallel num_threads(threads) if (threads > 1)
  {
#pragma omp for schedule(static)
    for (int i = 0; i < nh; ++i) {
      const std::int32_t* a = in(2 * i);
      const std::int32_t* b = in(2 * i + 1);
      const std::int32_t* c = in(2 * i + 2 < h ? 2 * i + 2 : 2 * i);
      std::int32_t* d = p.row(nl + i);
      for (int x = 0; x < w; ++x) {
        d[x] = b[x] - static_cast<std::int32_t>((std::int64_t{a[x]} + c[x]) >> 1);
      }
    }
#pragma omp for schedule(static)
    for (int i = 0; i < nl; ++i) {
      const std::int32_t* e = in(2 * i);
      const std::int32_t* dl = p.row(nl + std::max(i - 1, 0));
      const std::int32_t* dr = p.row(nl + std::min(i, nh - 1));
      std::int32_t* s = p.row(i);
      for (int x = 0; x < w; ++x) {
        s[x] = e[x] + static_cast<std::int32_t>(
                          (std::int64_t{dl[x]} + dr[x] + 2) >> 2);
      }
    }
  }
}

void inverse_columns(Plane& p, int w, int h, int threads) {
  const int nl = (h + 1) / 2, nh = h / 2;
  std::vector<std::int32_t> out(static_cast<std::size_t>(w) * h);
  auto dst = [&](int r) { return out.data() + static_cast<std::size_t>(r) * w; };

#pragma omp parallel num_threads(threads) if (threads > 1)
  {
#pragma omp for schedule(static)
    for (int i = 0; i < nl; ++i) {
      const std::int32_t* s = p.row(i);
      const std::int32_t* dl = p.row(nl + std::max(i - 1, 0));
      const std::int32_t* dr = p.row(nl + std::min(i, nh - 1));
      std::int32_t* e = dst(2 * i);
      for (int x = 0; x < w; ++x) {
        e[x] = s[x] - static_cast<std::int32_t>(
                          (std::int64_t{dl[x]} + dr[x] + 2) >> 2);
      }
    }
#pragma omp for schedule(static)
    for (int i = 0; i < nh; ++i) {
      const std::int32_t* d = p.row(nl + i);
      const std::int32_t* a = dst(2 * i);
      const std::int32_t* c = dst(2 * i + 2 < h ? 2 * i + 2 : 2 * i);
      std::int32_t* o = dst(2 * i + 1);
      for (int x = 0; x < w; ++x) {
        o[x] = d[x] + static_cast<std::int32_t>((std::int64_t{a[x]} + c[x]) >> 1);
      }
    }
  }
  for (int r = 0; r < h; ++r) std::copy(dst(r), dst(r) + w, p.row(r));
}

void check_region(const Plane& p, int w, int h) {
  for (int r = 0; r < h; ++r) {
    const std::int32_t* row = p.row(r);
    for (int c = 0; c < w; ++c) {
      if (row[c] <= -kCoefficientLimit || row[c] >= kCoefficientLimit) {
        throw CorruptionError("wavelet coefficient out of range during inverse");
      }
    }
  }
}

void copy_band_out(const Plane& p, int r0, int c0, Subband& b) {
  for (int r = 0; r < b.rows; ++r) {
    const std::int32_t* src = p.row(r0 + r) + c0;
    std::copy(src, src + b.cols, b.coeffs.begin() + static_cast<std::size_t>(r) * b.cols);
  }
}

void copy_band_in(Plane& p, int r0, int c0, const Subband& b) {
  for (int r = 0; r < b.rows; ++r) {
    const auto src = b.coeffs.begin() + static_cast<std::size_t>(r) * b.cols;
    std::copy(src, src + b.cols, p.row(r0 + r) + c0);
  }
}

void check_layout(const SubbandPyramid& pyr) {
  SubbandPyramid expect;
  try {
    expect = make_pyramid_layout(pyr.width, pyr.height, pyr.bit_depth, pyr.levels);
  } catch (const ArgumentError& e) {
    throw FormatError(std::string("pyramid geometry: ") + e.what());
  }
  if (pyr.bands.size() != expect.bands.size()) {
    throw FormatError("pyramid has " + std::to_string(pyr.bands.size()) +
                      " bands, expected " + std::to_string(expect.bands.size()));
  }
  for (std::size_t i = 0; i < pyr.bands.size(); ++i) {
    const Subband& a = pyr.bands[i];
    const Subband& b = expect.bands[i];
    if (a.rows != b.rows || a.cols != b.cols || a.level != b.level ||
        a.orientation != b.orientation || a.coeffs.size() != b.coeffs.size()) {
      throw FormatError("band " + std::to_string(i) + " has inconsistent geometry");
    }
  }
}

}  // namespace

SubbandPyramid forward(const GrayImage& img, int levels) {
  img.validate();
  SubbandPyramid pyr = make_pyramid_layout(img.width, img.height, img.bit_depth, levels);
  const int threads = parallel::thread_count();

  Plane p{img.width, std::vector<std::int32_t>(img.samples.begin(), img.samples.end())};
  int w = img.width, h = img.height;
  for (int step = 0; step < levels; ++step) {
    const int level = levels - step;
    forward_rows(p, w, h, threads);
    forward_columns(p, w, h, threads);
    const int lw = (w + 1) / 2, lh = (h + 1) / 2;
    copy_band_out(p, 0, lw, pyr.band(level, Orientation::kHL));
    copy_band_out(p, lh, 0, pyr.band(level, Orientation::kLH));
    copy_band_out(p, lh, lw, pyr.band(level, Orientation::kHH));
    w = lw;
    h = lh;
  }
  copy_band_out(p, 0, 0, pyr.bands[0]);
  return pyr;
}

GrayImage inverse(const SubbandPyramid& pyr) {
  check_layout(pyr);
  if (pyr.bit_depth != 8 && pyr.bit_depth != 16) {
    throw FormatError("pyramid bit depth must be 8 or 16");
  }
  for (const Subband& b : pyr.bands) {
    for (std::int32_t v : b.coeffs) {
      if (v <= -kCoefficientLimit || v >= kCoefficientLimit) {
        throw CorruptionError("band " + b.name() + " has an out-of-range coefficient");
      }
    }
  }
  const int threads = parallel::thread_count();

  // Region sizes per step, finest first.
  std::vector<std::pair<int, int>> dims;
  for (int w = pyr.width, h = pyr.height, s = 0; s < pyr.levels; ++s) {
    dims.emplace_back(w, h);
    w = (w + 1) / 2;
    h = (h + 1) / 2;
  }

  Plane p{pyr.width, std::vector<std::int32_t>(static_cast<std::size_t>(pyr.width) * pyr.height)};
  copy_band_in(p, 0, 0, pyr.bands[0]);
  for (int level = 1; level <= pyr.levels; ++level) {
    const auto [w, h] = dims[pyr.levels - level];
    const int lw = (w + 1) / 2, lh = (h + 1) / 2;
    copy_band_in(p, 0, lw, pyr.band(level, Orientation::kHL));
    copy_band_in(p, lh, 0, pyr.band(level, Orientation::kLH));
    copy_band_in(p, lh, lw, pyr.band(level, Orientation::kHH));
    inverse_columns(p, w, h, threads);
    check_region(p, w, h);
    inverse_rows(p, w, h, threads);
    check_region(p, w, h);
  }

  GrayImage img(pyr.width, pyr.height, pyr.bit_depth);
  const std::int32_t maxv = img.max_value();
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    const std::int32_t v = p.data[i];
    if (v < 0 || v > maxv) {
      throw CorruptionError("reconstructed sample " + std::to_string(i) +
                            " outside " + std::to_string(pyr.bit_depth) +
                            "-bit range");
    }
    img.samples[i] = static_cast<std::uint16_t>(v);
  }
  return img;
}

}  // namespace mwp
