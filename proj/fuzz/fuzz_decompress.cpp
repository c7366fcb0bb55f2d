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

// Fuzz target for the container decoder. Each input is decoded twice: as
// given (almost always stopped by the CRC) and with the trailing CRC
// recomputed, which lets mutations reach the header, model and payload
// parsers. Decoding must either throw mwp::Error or return an image that
// passes validation.

#include <zlib.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <vector>

#include "mwp/codec.hpp"
#include "mwp/error.hpp"

namespace {

void decode_one(const std::uint8_t* data, std::size_t size) {
  try {
    const mwp::GrayImage img = mwp::decompress(std::span(data, size));
    img.validate();
  } catch (const mwp::Error&) {
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected exception: %s\n", e.what());
    std::abort();
  }
}

}  // namespace

extern "C" int LLVMFuzzerTestOneInput(const std::uint8_t* data, std::size_t size) {
  decode_one(data, size);
  if (size >= 8) {
    std::vector<std::uint8_t> fixed(data, data + size);
    const std::size_t body = size - 4;
    const auto crc = static_cast<std::uint32_t>(crc32_z(0, fixed.data(), body));
    for (int i = 0; i < 4; ++i) fixed[body + i] = static_cast<std::uint8_t>(crc >> (8 * i));
    decode_one(fixed.data(), fixed.size());
  }
  return 0;
}
