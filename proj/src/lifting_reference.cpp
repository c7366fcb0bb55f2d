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

// Serial textbook form of the 5/3 transform. Every sample is read through an
// explicitly mirrored signal; no in-place tricks, no boundary shortcuts.

#include <cstdint>
#include <vector>

#include "mwp/error.hpp"
#include "mwp/lifting.hpp"

namespace mwp::lifting::reference {

namespace {

using Signal = std::vector<std::int64_t>;

// Whole-sample symmetric extension: x[-k] = x[k], x[n-1+k] = x[n-1-k].
std::int64_t mirrored(const Signal& x, long i) {
  const long n = static_cast<long>(x.size());
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return x[static_cast<std::size_t>(i)];
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// d[i] for any i, evaluated on the extended signal.
std::int64_t detail(const Signal& x, long i) {
  return mirrored(x, 2 * i + 1) -
         floor_div(mirrored(x, 2 * i) + mirrored(x, 2 * i + 2), 2);
}

void analyze(const Signal& x, Signal& low, Signal& high) {
  const long n = static_cast<long>(x.size());
  low.assign((n + 1) / 2, 0);
  high.assign(n / 2, 0);
  for (long i = 0; i < n / 2; ++i) high[i] = detail(x, i);
  for (long i = 0; i < (n + 1) / 2; ++i) {
    low[i] = x[2 * i] + floor_div(detail(x, i - 1) + detail(x, i) + 2, 4);
  }
}

// Undo the update step on even samples, then the predict step on odd ones.
Signal synthesize(const Signal& low, const Signal& high) {
  const long nl = static_cast<long>(low.size());
  const long nh = static_cast<long>(high.size());
  const long n = nl + nh;
  // Detail signal extension mirrors the source extension: d[-1] = d[0],
  // d[nh] = d[nh-1].
  auto d = [&](long i) { return high[i < 0 ? 0 : (i >= nh ? nh - 1 : i)]; };
  Signal even(nl);
  for (long i = 0; i < nl; ++i) {
    even[i] = low[i] - floor_div(d(i - 1) + d(i) + 2, 4);
  }
  Signal x(n);
  for (long i = 0; i < nl; ++i) x[2 * i] = even[i];
  for (long i = 0; i < nh; ++i) {
    x[2 * i + 1] = high[i] + floor_div(mirrored(x, 2 * i) + mirrored(x, 2 * i + 2), 2);
  }
  return x;
}

using Grid = std::vector<Signal>;  // grid[row][col]

}  // namespace

SubbandPyramid forward(const GrayImage& img, int levels) {
  img.validate();
  SubbandPyramid pyr = make_pyramid_layout(img.width, img.height, img.bit_depth, levels);

  Grid g(img.height, Signal(img.width));
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c) g[r][c] = img.at(r, c);

  for (int level = levels; level >= 1; --level) {
    const long h = static_cast<long>(g.size());
    const long w = static_cast<long>(g[0].size());
    const long lw = (w + 1) / 2, lh = (h + 1) / 2;

    Grid lo(h), hi(h);
    for (long r = 0; r < h; ++r) analyze(g[r], lo[r], hi[r]);

    // Columns of the row-low and row-high halves.
    auto columns = [&](const Grid& src, long cols, Grid& col_lo, Grid& col_hi) {
      col_lo.assign(lh, Signal(cols));
      col_hi.assign(h - lh, Signal(cols));
      for (long c = 0; c < cols; ++c) {
        Signal col(h), cl, ch;
        for (long r = 0; r < h; ++r) col[r] = src[r][c];
        analyze(col, cl, ch);
        for (long r = 0; r < lh; ++r) col_lo[r][c] = cl[r];
        for (long r = 0; r < h - lh; ++r) col_hi[r][c] = ch[r];
      }
    };
    Grid ll, lh_band, hl, hh;
    columns(lo, lw, ll, lh_band);
    columns(hi, w - lw, hl, hh);

    auto store = [](const Grid& src, Subband& b) {
      for (int r = 0; r < b.rows; ++r)
        for (int c = 0; c < b.cols; ++c) b.at(r, c) = static_cast<std::int32_t>(src[r][c]);
    };
    store(hl, pyr.band(level, Orientation::kHL));
    store(lh_band, pyr.band(level, Orientation::kLH));
    store(hh, pyr.band(level, Orientation::kHH));
    g = std::move(ll);
  }
  Subband& ll = pyr.bands[0];
  for (int r = 0; r < ll.rows; ++r)
    for (int c = 0; c < ll.cols; ++c) ll.at(r, c) = static_cast<std::int32_t>(g[r][c]);
  return pyr;
}

GrayImage inverse(const SubbandPyramid& pyr) {
  const SubbandPyramid layout =
      make_pyramid_layout(pyr.width, pyr.height, pyr.bit_depth, pyr.levels);
  if (layout.bands.size() != pyr.bands.size()) {
    throw FormatError("pyramid band count mismatch");
  }
  auto load = [](const Subband& b) {
    Grid g(b.rows, Signal(b.cols));
    for (int r = 0; r < b.rows; ++r)
      for (int c = 0; c < b.cols; ++c) g[r][c] = b.at(r, c);
    return g;
  };

  Grid g = load(pyr.bands[0]);
  for (int level = 1; level <= pyr.levels; ++level) {
    const Grid hl = load(pyr.band(level, Orientation::kHL));
    const Grid lh = load(pyr.band(level, Orientation::kLH));
    const Grid hh = load(pyr.band(level, Orientation::kHH));
    const long rows_lo = static_cast<long>(g.size());
    const long rows_hi = static_cast<long>(lh.size());
    const long h = rows_lo + rows_hi;
    const long w_lo = static_cast<long>(g[0].size());
    const long w_hi = hl.empty() ? 0 : static_cast<long>(hl[0].size());

    // Columns first, rebuilding the row-low and row-high halves.
    auto columns = [&](const Grid& top, const Grid& bottom, long cols) {
      Grid out(h, Signal(cols));
      for (long c = 0; c < cols; ++c) {
        Signal lo(rows_lo), hi(rows_hi);
        for (long r = 0; r < rows_lo; ++r) lo[r] = top[r][c];
        for (long r = 0; r < rows_hi; ++r) hi[r] = bottom[r][c];
        const Signal x = synthesize(lo, hi);
        for (long r = 0; r < h; ++r) out[r][c] = x[r];
      }
      return out;
    };
    const Grid row_lo = columns(g, lh, w_lo);
    const Grid row_hi = columns(hl, hh, w_hi);

    Grid next(h);
    for (long r = 0; r < h; ++r) next[r] = synthesize(row_lo[r], row_hi[r]);
    g = std::move(next);
  }

  GrayImage img(pyr.width, pyr.height, pyr.bit_depth);
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      const std::int64_t v = g[r][c];
      if (v < 0 || v > img.max_value()) {
        throw CorruptionError("reconstructed sample outside bit depth");
      }
      img.at(r, c) = static_cast<std::uint16_t>(v);
    }
  }
  return img;
}

}  // namespace mwp::lifting::reference
