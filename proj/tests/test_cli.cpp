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
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "mwp/cli.hpp"
#include "mwp/image.hpp"

namespace fs = std::filesystem;
using namespace mwp;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "mwp");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::uint8_t> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
  std::ofstream(p, std::ios::binary).write(reinterpret_cast<const char*>(bytes.data()),
                                            static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("mwp_cli_test_" + std::to_string(::getpid()) + "_" +
                                         std::to_string(counter_++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::size_t file_count(const fs::path& dir) {
  return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator()));
}

}  // namespace

TEST_CASE("compress then decompress reproduces the canonical PGM") {
  TempDir tmp;
  // Non-canonical header with a comment; output must be the canonical form.
  const GrayImage img = make_phantom(PhantomKind::kGaussianBlob, 40, 24, 0);
  auto pgm = write_pgm(img);
  const std::string fancy = "P5\n# made by hand\n40  24\n255\n";
  std::vector<std::uint8_t> input(fancy.begin(), fancy.end());
  input.insert(input.end(), pgm.end() - 40 * 24, pgm.end());
  spit(tmp / "a.pgm", input);

  CHECK(run({"compress", (tmp / "a.pgm").string(), (tmp / "a.mwp").string(), "--levels", "2"}).code == 0);
  CHECK(run({"decompress", (tmp / "a.mwp").string(), (tmp / "b.pgm").string()}).code == 0);
  CHECK(slurp(tmp / "b.pgm") == pgm);
}

TEST_CASE("raw 16-bit input round trips through raw output") {
  TempDir tmp;
  const GrayImage img = make_phantom(PhantomKind::kSmoothNoise, 16, 16, 3);
  GrayImage deep(16, 16, 16);
  for (std::size_t i = 0; i < img.samples.size(); ++i) deep.samples[i] = static_cast<std::uint16_t>(img.samples[i] * 200);
  spit(tmp / "a.raw", write_raw(deep));
  CHECK(run({"compress", (tmp / "a.raw").string(), (tmp / "a.mwp").string(), "--raw", "16x16x16"}).code == 0);
  CHECK(run({"decompress", (tmp / "a.mwp").string(), (tmp / "b.raw").string()}).code == 0);
  CHECK(slurp(tmp / "b.raw") == write_raw(deep));
}

TEST_CASE("phantom command writes the requested image") {
  TempDir tmp;
  CHECK(run({"phantom", "--kind", "ramp", "--size", "24x16", "--out", (tmp / "r.pgm").string()}).code == 0);
  CHECK(read_pgm(slurp(tmp / "r.pgm")) == make_phantom(PhantomKind::kRamp, 24, 16, 0));
  CHECK(run({"phantom", "--kind", "smooth_noise", "--size", "32", "--seed", "5", "--out",
             (tmp / "s.pgm").string()})
            .code == 0);
  CHECK(read_pgm(slurp(tmp / "s.pgm")) == make_phantom(PhantomKind::kSmoothNoise, 32, 32, 5));
}

TEST_CASE("bench emits one row per image and configuration") {
  TempDir tmp;
  fs::create_directories(tmp / "corpus");
  const char* kinds[] = {"constant", "ramp", "gaussian_blob", "smooth_noise"};
  for (const char* kind : kinds) {
    REQUIRE(run({"phantom", "--kind", kind, "--size", "32", "--out",
                 (tmp / "corpus" / (std::string(kind) + ".pgm")).string()})
                .code == 0);
  }
  const Outcome o = run({"bench", "--corpus", (tmp / "corpus").string(), "--out-csv",
                         (tmp / "bench.csv").string(), "--repeats", "1", "--levels", "2"});
  REQUIRE(o.code == 0);
  CHECK(o.out.find("non-binding") != std::string::npos);
  const auto lines = lines_of(tmp / "bench.csv");
  REQUIRE(lines.size() == 1 + 4 * 3);
  CHECK(lines[0] == "image,config,bpp,enc_ms,dec_ms");
  std::map<std::string, int> per_config;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t a = lines[i].find(',');
    const std::size_t b = lines[i].find(',', a + 1);
    ++per_config[lines[i].substr(a + 1, b - a - 1)];
  }
  CHECK(per_config.size() == 3);
  for (const auto& [config, n] : per_config) CHECK(n == 4);
  CHECK(lines[1].rfind("constant.pgm,", 0) == 0);
  CHECK(lines.back().rfind("smooth_noise.pgm,", 0) == 0);
}

TEST_CASE("analyze writes one CSV per detail band plus the correlation matrix") {
  TempDir tmp;
  REQUIRE(run({"phantom", "--kind", "smooth_noise", "--size", "64", "--out", (tmp / "p.pgm").string()}).code == 0);
  const Outcome o = run({"analyze", (tmp / "p.pgm").string(), "--out-dir", (tmp / "out").string(),
                         "--levels", "3"});
  REQUIRE(o.code == 0);
  CHECK(file_count(tmp / "out") == 3 * 3 + 1);
  const auto band = lines_of(tmp / "out" / "L3_HH.csv");
  CHECK(band[0] == "band_id,row,col,actual,predicted,residual");
  CHECK(band.size() == 1 + 32 * 32);
  const auto corr = lines_of(tmp / "out" / "correlation.csv");
  CHECK(corr[0].rfind("band_id,label,Parent,", 0) == 0);
  CHECK(corr.size() == 1 + 9 * 12);
}

TEST_CASE("exit codes") {
  TempDir tmp;
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);
  const Outcome unknown = run({"compress", "--bogus"});
  CHECK(unknown.code == cli::kExitUsage);
  CHECK_FALSE(unknown.err.empty());
  CHECK(run({"compress", (tmp / "missing.pgm").string(), (tmp / "x.mwp").string()}).code == cli::kExitData);
  spit(tmp / "junk.mwp", {'M', 'W', 'P', '1', 0, 0});
  CHECK(run({"decompress", (tmp / "junk.mwp").string(), (tmp / "y.pgm").string()}).code == cli::kExitData);
  spit(tmp / "a.pgm", write_pgm(make_phantom(PhantomKind::kRamp, 16, 16, 0)));
  CHECK(run({"compress", (tmp / "a.pgm").string(), (tmp / "a.mwp").string(), "--levels", "12"}).code ==
        cli::kExitUsage);
  CHECK(run({"compress", (tmp / "a.pgm").string(), (tmp / "a.mwp").string(), "--selection", "magic"}).code ==
        cli::kExitUsage);
  CHECK(run({"phantom", "--kind", "noise", "--size", "16", "--out", (tmp / "n.pgm").string()}).code ==
        cli::kExitUsage);
}

TEST_CASE("failures leave no partial output behind") {
  TempDir tmp;
  spit(tmp / "bad.pgm", {'P', '5', '\n', '4', ' ', '4', '\n', '2', '5', '5', '\n', 1, 2});
  CHECK(run({"compress", (tmp / "bad.pgm").string(), (tmp / "out.mwp").string()}).code == cli::kExitData);
  CHECK_FALSE(fs::exists(tmp / "out.mwp"));

  spit(tmp / "bad.mwp", std::vector<std::uint8_t>(64, 0x4D));
  CHECK(run({"decompress", (tmp / "bad.mwp").string(), (tmp / "out.pgm").string()}).code == cli::kExitData);
  CHECK(file_count(tmp.path()) == 2);

  // Too small for the requested depth: usage error, nothing written.
  spit(tmp / "tiny.pgm", write_pgm(make_phantom(PhantomKind::kRamp, 8, 8, 0)));
  CHECK(run({"compress", (tmp / "tiny.pgm").string(), (tmp / "t.mwp").string(), "--levels", "5"}).code != 0);
  CHECK_FALSE(fs::exists(tmp / "t.mwp"));
}
