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

// Mutation driver used when libFuzzer is unavailable. Accepts the subset of
// libFuzzer flags the acceptance suite passes: -max_total_time=N,
// -timeout=N, -seed=N and seed corpus directories.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <thread>
#include <vector>

extern "C" int LLVMFuzzerTestOneInput(const std::uint8_t* data, std::size_t size);

namespace {

using Bytes = std::vector<std::uint8_t>;

Bytes mutate(const std::vector<Bytes>& seeds, std::mt19937_64& rng) {
  Bytes b = seeds[rng() % seeds.size()];
  const int rounds = 1 + static_cast<int>(rng() % 8);
  for (int i = 0; i < rounds; ++i) {
    const std::size_t pos = b.empty() ? 0 : rng() % b.size();
    switch (rng() % 7) {
      case 0:
        if (!b.empty()) b[pos] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
        break;
      case 1:
        if (!b.empty()) b[pos] = static_cast<std::uint8_t>(rng());
        break;
      case 2:
        b.insert(b.begin() + static_cast<std::ptrdiff_t>(pos), static_cast<std::uint8_t>(rng()));
        break;
      case 3:
        if (!b.empty()) b.erase(b.begin() + static_cast<std::ptrdiff_t>(pos));
        break;
      case 4:
        b.resize(b.empty() ? 0 : rng() % b.size());
        break;
      case 5: {
        const Bytes& other = seeds[rng() % seeds.size()];
        if (!other.empty() && !b.empty()) {
          const std::size_t from = rng() % other.size();
          const std::size_t len = std::min<std::size_t>(1 + rng() % 64, std::min(other.size() - from, b.size() - pos));
          std::memcpy(b.data() + pos, other.data() + from, len);
        }
        break;
      }
      default:
        // Interesting header values: 0, 0xFF and small integers.
        if (!b.empty()) {
          static const std::uint8_t kValues[] = {0, 1, 2, 8, 9, 16, 0x7F, 0x80, 0xFF};
          b[pos] = kValues[rng() % std::size(kValues)];
        }
        break;
    }
  }
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  double max_seconds = 60;
  double timeout = 10;
  std::uint64_t seed = 1;
  std::vector<Bytes> seeds;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("-max_total_time=", 0) == 0) max_seconds = std::stod(arg.substr(16));
    else if (arg.rfind("-timeout=", 0) == 0) timeout = std::stod(arg.substr(9));
    else if (arg.rfind("-seed=", 0) == 0) seed = std::stoull(arg.substr(6));
    else if (arg[0] == '-') continue;
    else if (std::filesystem::is_directory(arg)) {
      for (const auto& entry : std::filesystem::directory_iterator(arg)) {
        std::ifstream in(entry.path(), std::ios::binary);
        seeds.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
      }
    }
  }
  if (seeds.empty()) seeds.emplace_back();

  std::atomic<std::int64_t> started_ms{-1};
  std::atomic<bool> done{false};
  const auto t0 = std::chrono::steady_clock::now();
  auto now_ms = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  };
  std::thread watchdog([&] {
    while (!done) {
      std::this_thread::sleep_for(std::chrono::milliseconds(200));
      const std::int64_t s = started_ms.load();
      if (s >= 0 && now_ms() - s > static_cast<std::int64_t>(timeout * 1000)) {
        std::fprintf(stderr, "==ERROR: input exceeded %.0f s timeout\n", timeout);
        std::_Exit(70);
      }
    }
  });

  std::mt19937_64 rng(seed);
  std::uint64_t runs = 0;
  for (const Bytes& s : seeds) LLVMFuzzerTestOneInput(s.data(), s.size());
  while (now_ms() < max_seconds * 1000) {
    const Bytes input = mutate(seeds, rng);
    started_ms = now_ms();
    LLVMFuzzerTestOneInput(input.data(), input.size());
    started_ms = -1;
    ++runs;
  }
  done = true;
  watchdog.join();
  std::printf("Done %llu runs in %.0f second(s)\n", static_cast<unsigned long long>(runs), now_ms() / 1000.0);
  return 0;
}
