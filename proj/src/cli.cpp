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

#include "mwp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "mwp/codec.hpp"
#include "mwp/error.hpp"
#include "mwp/image.hpp"
#include "mwp/parallel.hpp"
#include "mwp/stats.hpp"

namespace fs = std::filesystem;

namespace mwp::cli {

namespace {

// Unreadable files and failed bench images; exit 2 like a bad container.
class DataError : public Error {
 public:
  using Error::Error;
};

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Write next to the target, then rename over it.
void write_file_atomic(const fs::path& path, std::span<const std::uint8_t> data) {
  std::random_device rd;
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw DataError("write failed for " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw DataError("cannot rename into " + path.string() + ": " + ec.message());
  }
}

void write_text_atomic(const fs::path& path, const std::string& text) {
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

struct RawGeometry {
  int width = 0, height = 0, depth = 0;
};

RawGeometry parse_raw_geometry(const std::string& spec) {
  RawGeometry g;
  char x1 = 0, x2 = 0;
  std::istringstream in(spec);
  in >> g.width >> x1 >> g.height >> x2 >> g.depth;
  if (!in || x1 != 'x' || x2 != 'x' || !in.eof() || g.width < 1 || g.height < 1 ||
      (g.depth != 8 && g.depth != 16)) {
    throw ArgumentError("--raw expects WIDTHxHEIGHTxDEPTH with depth 8 or 16, got '" + spec + "'");
  }
  return g;
}

GrayImage load_image(const fs::path& path, const std::optional<RawGeometry>& raw) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  if (raw) return read_raw(bytes, raw->width, raw->height, raw->depth);
  return read_pgm(bytes);
}

SelectionMode parse_selection(const std::string& s) {
  if (s == "greedy") return SelectionMode::kGreedy;
  if (s == "exhaustive") return SelectionMode::kExhaustive;
  throw ArgumentError("--selection must be greedy or exhaustive, got '" + s + "'");
}

void check_levels(int levels) {
  if (levels < kMinLevels || levels > kMaxLevels) {
    throw ArgumentError("--levels must be in [1, 8]");
  }
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeOutput {
  std::vector<std::pair<std::string, std::string>> files;  // name, contents
  std::string summary;
};

AnalyzeOutput analyze(const GrayImage& img, int levels, SelectionMode mode) {
  const SubbandPyramid pyr = forward(img, levels);
  AnalyzeOutput out;
  std::string corr = "band_id,label";
  for (int k = 0; k < kRoleCount; ++k) corr += std::string(",") + role_name(static_cast<Role>(k));
  corr += ",Dependent\n";

  for (std::size_t bi = 1; bi < pyr.bands.size(); ++bi) {
    const Subband& band = pyr.bands[bi];
    const ContextMatrix ctx = extract_context(pyr, bi);

    std::vector<stats::LabeledColumn> cols(kRoleCount + 1);
    for (int k = 0; k < kRoleCount; ++k) {
      cols[k].label = role_name(static_cast<Role>(k));
      cols[k].values.assign(ctx.columns[k].begin(), ctx.columns[k].end());
    }
    cols[kRoleCount].label = "Dependent";
    cols[kRoleCount].values.assign(ctx.dependent.begin(), ctx.dependent.end());
    if (ctx.size() >= 2) {
      const stats::CorrelationMatrix m = stats::correlation_matrix(cols);
      std::istringstream lines(m.to_csv());
      std::string line;
      std::getline(lines, line);  // label header, already emitted once
      while (std::getline(lines, line)) corr += band.name() + "," + line + "\n";
    }

    const Selection sel = select_predictors(ctx, mode);
    std::string csv = "band_id,row,col,actual,predicted,residual\n";
    for (int r = 0; r < ctx.rows; ++r) {
      for (int c = 0; c < ctx.cols; ++c) {
        const std::size_t i = static_cast<std::size_t>(r) * ctx.cols + c;
        const std::int64_t p = predict(sel.model, ctx.row(i));
        const std::int64_t a = ctx.dependent[i];
        csv += band.name() + "," + std::to_string(r) + "," + std::to_string(c) + "," +
               std::to_string(a) + "," + std::to_string(p) + "," + std::to_string(a - p) + "\n";
      }
    }
    out.files.emplace_back(band.name() + ".csv", std::move(csv));

    out.summary += band.name() + ": ";
    if (sel.model.is_zero()) {
      out.summary += "zero model";
    } else {
      std::size_t j = 0;
      for (int k = 0; k < kRoleCount; ++k) {
        if (!(sel.model.mask & (1u << k))) continue;
        if (j) out.summary += " + ";
        out.summary += fmt("%.5f", sel.model.coeffs[j++] / 65536.0) + "*" +
                       role_name(static_cast<Role>(k));
      }
    }
    out.summary += fmt("  (%.0f bits", sel.objective) + fmt(" vs %.0f unpredicted)\n", sel.empty_objective);
  }
  out.files.emplace_back("correlation.csv", std::move(corr));
  return out;
}

// --- bench -----------------------------------------------------------------

struct BenchConfig {
  std::string name;
  CodecConfig cfg;
};

struct BenchRow {
  std::string image;
  std::string config;
  Report report;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mwp: lossless grayscale compression with wavelet-domain linear prediction", "mwp"};
  app.require_subcommand(1);

  std::string in_path, out_path, raw_spec, selection = "greedy", kind, size_spec, out_dir, corpus,
                                            out_csv;
  int levels = kDefaultLevels;
  int repeats = 1;
  bool no_predict = false;
  std::uint64_t seed = 0;

  auto* c_compress = app.add_subcommand("compress", "Compress a PGM (or raw) image");
  c_compress->add_option("in", in_path, "Input image")->required();
  c_compress->add_option("out", out_path, "Output container")->required();
  c_compress->add_option("--levels", levels, "Decomposition levels (1-8)");
  c_compress->add_option("--selection", selection, "greedy or exhaustive");
  c_compress->add_flag("--no-predict", no_predict, "Zero models for every band");
  c_compress->add_option("--raw", raw_spec, "Headerless input, WIDTHxHEIGHTxDEPTH");

  auto* c_decompress = app.add_subcommand("decompress", "Decompress a container");
  c_decompress->add_option("in", in_path, "Input container")->required();
  c_decompress->add_option("out", out_path, "Output image (.raw for headerless, else PGM)")->required();

  auto* c_analyze = app.add_subcommand("analyze", "Per-band correlation and prediction CSVs");
  c_analyze->add_option("in", in_path, "Input image")->required();
  c_analyze->add_option("--out-dir", out_dir, "Directory for the CSV files")->required();
  c_analyze->add_option("--levels", levels, "Decomposition levels (1-8)");
  c_analyze->add_option("--selection", selection, "greedy or exhaustive");
  c_analyze->add_option("--raw", raw_spec, "Headerless input, WIDTHxHEIGHTxDEPTH");

  auto* c_bench = app.add_subcommand("bench", "Rate and timing over a directory of PGM files");
  c_bench->add_option("--corpus", corpus, "Directory of .pgm files")->required();
  c_bench->add_option("--out-csv", out_csv, "CSV output path");
  c_bench->add_option("--repeats", repeats, "Timing repeats per image and config");
  c_bench->add_option("--levels", levels, "Decomposition levels (1-8)");

  auto* c_phantom = app.add_subcommand("phantom", "Write a synthetic test image");
  c_phantom->add_option("--kind", kind, "constant, ramp, gaussian_blob or smooth_noise")->required();
  c_phantom->add_option("--size", size_spec, "N or WIDTHxHEIGHT")->required();
  c_phantom->add_option("--seed", seed, "Noise seed");
  c_phantom->add_option("--out", out_path, "Output PGM")->required();

  // CLI11 consumes a reversed argument list without the program name.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    // Validate everything that does not need input data first.
    check_levels(levels);
    const SelectionMode mode = parse_selection(selection);
    std::optional<RawGeometry> raw;
    if (!raw_spec.empty()) raw = parse_raw_geometry(raw_spec);

    if (*c_compress) {
      CodecConfig cfg{levels, mode, !no_predict};
      const GrayImage img = load_image(in_path, raw);
      const std::vector<std::uint8_t> bytes = compress(img, cfg);
      write_file_atomic(out_path, bytes);
      out << in_path << ": " << img.width << "x" << img.height << ", " << bytes.size() << " bytes, "
          << fmt("%.4f bpp\n", bits_per_pixel(bytes.size(), img.pixel_count()));
    } else if (*c_decompress) {
      const GrayImage img = decompress(read_file(in_path));
      const bool as_raw = fs::path(out_path).extension() == ".raw";
      write_file_atomic(out_path, as_raw ? write_raw(img) : write_pgm(img));
    } else if (*c_analyze) {
      const GrayImage img = load_image(in_path, raw);
      const AnalyzeOutput a = analyze(img, levels, mode);
      std::error_code ec;
      fs::create_directories(out_dir, ec);
      if (ec) throw DataError("cannot create " + out_dir + ": " + ec.message());
      for (const auto& [name, text] : a.files) write_text_atomic(fs::path(out_dir) / name, text);
      out << a.summary;
    } else if (*c_bench) {
      if (repeats < 1) throw ArgumentError("--repeats must be >= 1");
      std::vector<fs::path> files;
      std::error_code ec;
      for (const auto& e : fs::directory_iterator(corpus, ec)) {
        if (e.is_regular_file() && e.path().extension() == ".pgm") files.push_back(e.path());
      }
      if (ec) throw DataError("cannot list " + corpus + ": " + ec.message());
      std::sort(files.begin(), files.end());

      const std::vector<BenchConfig> configs = {
          {"greedy", {levels, SelectionMode::kGreedy, true}},
          {"exhaustive", {levels, SelectionMode::kExhaustive, true}},
          {"no_predict", {levels, SelectionMode::kGreedy, false}},
      };
      std::vector<GrayImage> images;
      for (const fs::path& f : files) images.push_back(read_pgm(read_file(f)));

      std::vector<BenchRow> rows(files.size() * configs.size());
      const int threads = parallel::thread_count();
      const long jobs = static_cast<long>(rows.size());
      std::vector<std::string> failures(rows.size());
#pragma omp parallel for num_threads(threads) if (threads > 1) schedule(dynamic)
      for (long j = 0; j < jobs; ++j) {
        const std::size_t fi = static_cast<std::size_t>(j) / configs.size();
        const std::size_t ci = static_cast<std::size_t>(j) % configs.size();
        rows[j].image = files[fi].filename().string();
        rows[j].config = configs[ci].name;
        try {
          rows[j].report = measure(images[fi], configs[ci].cfg, repeats);
        } catch (const std::exception& e) {
          failures[j] = rows[j].image + ": " + e.what();
        }
      }
      for (const std::string& f : failures)
        if (!f.empty()) throw DataError(f);

      std::string csv = "image,config,bpp,enc_ms,dec_ms\n";
      for (const BenchRow& r : rows) {
        csv += r.image + "," + r.config + "," + fmt("%.4f", r.report.bpp) + "," +
               fmt("%.3f", r.report.encode_ms) + "," + fmt("%.3f", r.report.decode_ms) + "\n";
      }
      if (!out_csv.empty()) write_text_atomic(out_csv, csv);

      char line[200];
      std::snprintf(line, sizeof line, "%-28s %-11s %8s %10s %10s\n", "image", "config", "bpp",
                    "enc_ms", "dec_ms");
      out << line;
      std::map<std::string, std::pair<double, int>> mean_bpp;
      for (const BenchRow& r : rows) {
        std::snprintf(line, sizeof line, "%-28s %-11s %8.4f %10.3f %10.3f\n", r.image.c_str(),
                      r.config.c_str(), r.report.bpp, r.report.encode_ms, r.report.decode_ms);
        out << line;
        mean_bpp[r.config].first += r.report.bpp;
        mean_bpp[r.config].second += 1;
      }
      for (const BenchConfig& c : configs) {
        const auto& [sum, n] = mean_bpp[c.name];
        if (n > 0) out << "average " << c.name << fmt(": %.4f bpp\n", sum / n);
      }
      out << "published reference, non-binding (128x128 MRI/CT, images not available): "
             "MRI avg 1.48 bpp, CT avg 1.42 bpp, encode/decode 2.57 s / 3.14 s\n";
    } else if (*c_phantom) {
      const PhantomKind k = parse_phantom_kind(kind);
      int w = 0, h = 0;
      char x = 0;
      std::istringstream s(size_spec);
      s >> w;
      if (!s.eof()) s >> x >> h;
      else h = w;
      if (!s || (x != 0 && x != 'x') || !s.eof()) {
        throw ArgumentError("--size expects N or WIDTHxHEIGHT, got '" + size_spec + "'");
      }
      write_file_atomic(out_path, write_pgm(make_phantom(k, w, h, seed)));
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace mwp::cli
