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

#include "mwp/image.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "mwp/error.hpp"

namespace mwp {

GrayImage::GrayImage(int w, int h, int depth)
    : width(w), height(h), bit_depth(depth) {
  if (w < 1 || h < 1) throw ArgumentError("image dimensions must be >= 1");
  if (depth != 8 && depth != 16) throw ArgumentError("bit depth must be 8 or 16");
  samples.assign(pixel_count(), 0);
}

void GrayImage::validate() const {
  if (width < 1 || height < 1) {
    throw ArgumentError("image dimensions must be >= 1");
  }
  if (bit_depth != 8 && bit_depth != 16) {
    throw ArgumentError("bit depth must be 8 or 16");
  }
  if (samples.size() != pixel_count()) {
    throw ArgumentError("sample count does not match dimensions");
  }
  if (bit_depth == 8) {
    const auto it = std::find_if(samples.begin(), samples.end(),
                                 [](std::uint16_t v) { return v > 255; });
    if (it != samples.end()) {
      throw ArgumentError("sample " + std::to_string(it - samples.begin()) +
                          " exceeds 8-bit range");
    }
  }
}

namespace {

bool is_pnm_space(std::uint8_t b) {
  return b == ' ' || b == '\t' || b == '\n' || b == '\r' || b == '\v' ||
         b == '\f';
}

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_pnm_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' &&
               bytes_[pos_] != '\r') {
          ++pos_;
        }
      } else {
        break;
      }
    }
  }

  std::uint32_t read_uint(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 0xFFFFFFFFu) throw FormatError(std::string("pgm: ") + what + " too large", start);
      ++pos_;
    }
    if (pos_ == start) {
      throw FormatError(std::string("pgm: expected ") + what, start);
    }
    return static_cast<std::uint32_t>(v);
  }

  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw FormatError("pgm: missing P5 magic", 0);
  }
  HeaderReader hdr(bytes);
  hdr.advance();
  hdr.advance();
  if (hdr.pos() >= bytes.size() || !(is_pnm_space(bytes[hdr.pos()]) || bytes[hdr.pos()] == '#')) {
    throw FormatError("pgm: expected whitespace after magic", hdr.pos());
  }
  const std::uint32_t width = hdr.read_uint("width");
  const std::uint32_t height = hdr.read_uint("height");
  hdr.skip_space_and_comments();
  const std::size_t maxval_offset = hdr.pos();
  const std::uint32_t maxval = hdr.read_uint("maxval");
  if (width == 0 || height == 0 || width > 0x7FFFFFFF || height > 0x7FFFFFFF) {
    throw FormatError("pgm: bad dimensions", 0);
  }
  if (maxval != 255 && maxval != 65535) {
    throw FormatError("pgm: maxval must be 255 or 65535, got " +
                          std::to_string(maxval),
                      maxval_offset);
  }
  if (hdr.pos() >= bytes.size() || !is_pnm_space(bytes[hdr.pos()])) {
    throw FormatError("pgm: expected single whitespace after maxval",
                      hdr.pos());
  }
  const std::size_t data = hdr.pos() + 1;
  const int bytes_per_sample = maxval == 255 ? 1 : 2;
  const std::uint64_t pixels = std::uint64_t{width} * height;
  const std::uint64_t need = pixels * bytes_per_sample;
  if (bytes.size() - data < need) {
    throw FormatError("pgm: truncated payload, need " + std::to_string(need) +
                          " bytes, have " + std::to_string(bytes.size() - data),
                      bytes.size());
  }

  GrayImage img(static_cast<int>(width), static_cast<int>(height),
                maxval == 255 ? 8 : 16);
  const std::uint8_t* p = bytes.data() + data;
  if (bytes_per_sample == 1) {
    std::copy(p, p + pixels, img.samples.begin());
  } else {
    for (std::size_t i = 0; i < pixels; ++i) {
      img.samples[i] = static_cast<std::uint16_t>((p[2 * i] << 8) | p[2 * i + 1]);
    }
  }
  return img;
}

std::vector<std::uint8_t> write_pgm(const GrayImage& img) {
  img.validate();
  const std::string header = "P5\n" + std::to_string(img.width) + " " +
                             std::to_string(img.height) + "\n" +
                             std::to_string(img.max_value()) + "\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const std::vector<std::uint8_t> raw = write_raw(img);
  out.insert(out.end(), raw.begin(), raw.end());
  return out;
}

GrayImage read_raw(std::span<const std::uint8_t> bytes, int width, int height,
                   int bit_depth) {
  GrayImage img(width, height, bit_depth);
  const std::size_t bps = bit_depth == 8 ? 1 : 2;
  if (bytes.size() != img.pixel_count() * bps) {
    throw FormatError("raw: expected " + std::to_string(img.pixel_count() * bps) +
                      " bytes, got " + std::to_string(bytes.size()));
  }
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    img.samples[i] = bps == 1 ? bytes[i]
                              : static_cast<std::uint16_t>(
                                    (bytes[2 * i] << 8) | bytes[2 * i + 1]);
  }
  return img;
}

std::vector<std::uint8_t> write_raw(const GrayImage& img) {
  img.validate();
  std::vector<std::uint8_t> out;
  if (img.bit_depth == 8) {
    out.assign(img.samples.begin(), img.samples.end());
  } else {
    out.reserve(img.pixel_count() * 2);
    for (std::uint16_t v : img.samples) {
      out.push_back(static_cast<std::uint8_t>(v >> 8));
      out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    }
  }
  return out;
}

PhantomKind parse_phantom_kind(std::string_view name) {
  if (name == "constant") return PhantomKind::kConstant;
  if (name == "ramp") return PhantomKind::kRamp;
  if (name == "gaussian_blob") return PhantomKind::kGaussianBlob;
  if (name == "smooth_noise") return PhantomKind::kSmoothNoise;
  throw ArgumentError("unknown phantom kind '" + std::string(name) + "'");
}

std::string_view phantom_kind_name(PhantomKind kind) {
  switch (kind) {
    case PhantomKind::kConstant: return "constant";
    case PhantomKind::kRamp: return "ramp";
    case PhantomKind::kGaussianBlob: return "gaussian_blob";
    case PhantomKind::kSmoothNoise: return "smooth_noise";
  }
  return "?";
}

GrayImage make_phantom(PhantomKind kind, int width, int height,
                       std::uint64_t seed) {
  if (width < 8 || height < 8) {
    throw ArgumentError("phantom dimensions must be >= 8");
  }
  GrayImage img(width, height, 8);
  switch (kind) {
    case PhantomKind::kConstant:
      std::fill(img.samples.begin(), img.samples.end(), 128);
      break;
    case PhantomKind::kRamp:
      for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c)
          img.at(r, c) = static_cast<std::uint16_t>((r + c) % 256);
      break;
    case PhantomKind::kGaussianBlob: {
      const double cy = (height - 1) / 2.0;
      const double cx = (width - 1) / 2.0;
      const double sigma = std::min(width, height) / 4.0;
      for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
          const double d2 = (r - cy) * (r - cy) + (c - cx) * (c - cx);
          img.at(r, c) = static_cast<std::uint16_t>(
              std::lround(255.0 * std::exp(-d2 / (2 * sigma * sigma))));
        }
      }
      break;
    }
    case PhantomKind::kSmoothNoise: {
      // Raw engine output only; distribution adaptors differ across
      // standard libraries.
      std::mt19937 rng(static_cast<std::mt19937::result_type>(seed ^ (seed >> 32)));
      std::vector<int> noise(img.pixel_count());
      for (int& v : noise) v = static_cast<int>(rng() >> 24);
      auto sample = [&](int r, int c) {
        r = std::clamp(r, 0, height - 1);
        c = std::clamp(c, 0, width - 1);
        return noise[static_cast<std::size_t>(r) * width + c];
      };
      for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
          int sum = 0;
          for (int dr = -2; dr <= 2; ++dr)
            for (int dc = -2; dc <= 2; ++dc) sum += sample(r + dr, c + dc);
          img.at(r, c) =
              static_cast<std::uint16_t>(std::clamp((sum + 12) / 25, 0, 255));
        }
      }
      break;
    }
  }
  return img;
}

}  // namespace mwp
