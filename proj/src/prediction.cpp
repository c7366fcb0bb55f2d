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

#include "mwp/prediction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "mwp/error.hpp"
#include "mwp/parallel.hpp"
#include "mwp/stats.hpp"

namespace mwp {

const char* role_name(Role r) {
  static constexpr const char* kNames[kRoleCount] = {
      "Parent", "ParentEast", "ParentWest", "ParentSouth", "ParentNorth",
      "North",  "NorthEast",  "NorthWest",  "West",        "Aunt1",
      "Aunt2"};
  return kNames[static_cast<std::size_t>(r)];
}

ContextRow ContextMatrix::row(std::size_t i) const {
  ContextRow out;
  for (int k = 0; k < kRoleCount; ++k) out[k] = columns[k][i];
  return out;
}

namespace {

inline std::int32_t read_or_zero(const Subband& b, int r, int c) {
  return b.contains(r, c) ? b.at(r, c) : 0;
}

// HL -> LH -> HH -> HL
inline Orientation next_orientation(Orientation o) {
  switch (o) {
    case Orientation::kHL: return Orientation::kLH;
    case Orientation::kLH: return Orientation::kHH;
    default: return Orientation::kHL;
  }
}

void require_detail_band(const SubbandPyramid& pyr, std::size_t band_index) {
  if (band_index == 0 || band_index >= pyr.bands.size()) {
    throw ArgumentError("band " + std::to_string(band_index) +
                        " is not a detail band of this pyramid");
  }
}

}  // namespace

ContextRow context_at(const SubbandPyramid& pyr, std::size_t band_index, int r,
                      int c) {
  const Subband& b = pyr.bands[band_index];
  const Orientation o = b.orientation;
  ContextRow row{};
  row[static_cast<int>(Role::kNorth)] = read_or_zero(b, r - 1, c);
  row[static_cast<int>(Role::kNorthEast)] = read_or_zero(b, r - 1, c + 1);
  row[static_cast<int>(Role::kNorthWest)] = read_or_zero(b, r - 1, c - 1);
  row[static_cast<int>(Role::kWest)] = read_or_zero(b, r, c - 1);

  const bool coarsest = b.level == 1;
  const Subband& parent = coarsest ? pyr.bands[0] : pyr.band(b.level - 1, o);
  const int pr = coarsest ? r : r / 2;
  const int pc = coarsest ? c : c / 2;
  row[static_cast<int>(Role::kParent)] = read_or_zero(parent, pr, pc);
  row[static_cast<int>(Role::kParentEast)] = read_or_zero(parent, pr, pc + 1);
  row[static_cast<int>(Role::kParentWest)] = read_or_zero(parent, pr, pc - 1);
  row[static_cast<int>(Role::kParentSouth)] = read_or_zero(parent, pr + 1, pc);
  row[static_cast<int>(Role::kParentNorth)] = read_or_zero(parent, pr - 1, pc);

  const Orientation a1 = next_orientation(o);
  const Orientation a2 = next_orientation(a1);
  if (coarsest) {
    // Only siblings already coded at this level are available.
    if (a1 < o) row[static_cast<int>(Role::kAunt1)] = read_or_zero(pyr.band(1, a1), r, c);
    if (a2 < o) row[static_cast<int>(Role::kAunt2)] = read_or_zero(pyr.band(1, a2), r, c);
  } else {
    row[static_cast<int>(Role::kAunt1)] = read_or_zero(pyr.band(b.level - 1, a1), pr, pc);
    row[static_cast<int>(Role::kAunt2)] = read_or_zero(pyr.band(b.level - 1, a2), pr, pc);
  }
  return row;
}

ContextMatrix extract_context(const SubbandPyramid& pyr, std::size_t band_index) {
  require_detail_band(pyr, band_index);
  const Subband& b = pyr.bands[band_index];
  ContextMatrix ctx;
  ctx.band_index = band_index;
  ctx.rows = b.rows;
  ctx.cols = b.cols;
  ctx.dependent = b.coeffs;
  for (auto& col : ctx.columns) col.resize(b.size());

  const int threads = parallel::thread_count();
#pragma omp parallel for num_threads(threads) if (threads > 1) schedule(static)
  for (int r = 0; r < b.rows; ++r) {
    for (int c = 0; c < b.cols; ++c) {
      const ContextRow row = context_at(pyr, band_index, r, c);
      const std::size_t i = static_cast<std::size_t>(r) * b.cols + c;
      for (int k = 0; k < kRoleCount; ++k) ctx.columns[k][i] = row[k];
    }
  }
  return ctx;
}

// --- Fitting ---------------------------------------------------------------

std::int32_t quantize_coefficient(double value) {
  constexpr double kLo = -32768.0;
  constexpr double kHi = 32768.0 - 1.0 / (1 << kFractionBits);
  if (std::isnan(value)) return 0;
  const double clamped = std::clamp(value, kLo, kHi);
  return static_cast<std::int32_t>(std::llround(clamped * (1 << kFractionBits)));
}

namespace {

// X^T X and X^T y over all eleven roles.
struct NormalSystem {
  std::array<std::array<double, kRoleCount>, kRoleCount> gram{};
  std::array<double, kRoleCount> rhs{};
};

NormalSystem build_normal_system(const ContextMatrix& ctx, RoleMask mask) {
  NormalSystem sys;
  const std::size_t n = ctx.size();
  for (int j = 0; j < kRoleCount; ++j) {
    if (!(mask & (1u << j))) continue;
    const auto& xj = ctx.columns[j];
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += static_cast<double>(xj[i]) * ctx.dependent[i];
    sys.rhs[j] = s;
    for (int k = j; k < kRoleCount; ++k) {
      if (!(mask & (1u << k))) continue;
      const auto& xk = ctx.columns[k];
      double g = 0;
      for (std::size_t i = 0; i < n; ++i) g += static_cast<double>(xj[i]) * xk[i];
      sys.gram[j][k] = g;
      sys.gram[k][j] = g;
    }
  }
  return sys;
}

FitResult solve_subset(const NormalSystem& sys, RoleMask mask) {
  FitResult fit;
  std::vector<int> roles;
  for (int j = 0; j < kRoleCount; ++j)
    if (mask & (1u << j)) roles.push_back(j);
  const std::size_t k = roles.size();
  if (k == 0) return fit;

  // Augmented k x (k+1) matrix.
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = sys.gram[roles[i]][roles[j]];
    a[i][k] = sys.rhs[roles[i]];
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (!(std::abs(a[pivot][col]) >= 1e-9)) {
      fit.degenerate = true;
      return fit;
    }
    std::swap(a[col], a[pivot]);
    for (std::size_t r = col + 1; r < k; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0) continue;
      for (std::size_t j = col; j <= k; ++j) a[r][j] -= f * a[col][j];
    }
  }
  std::vector<double> x(k);
  for (std::size_t i = k; i-- > 0;) {
    double s = a[i][k];
    for (std::size_t j = i + 1; j < k; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
    if (!std::isfinite(x[i])) {
      fit.degenerate = true;
      return fit;
    }
  }
  fit.coefficients = x;
  fit.model.mask = mask;
  for (double v : x) fit.model.coeffs.push_back(quantize_coefficient(v));
  return fit;
}

}  // namespace

FitResult fit_model(const ContextMatrix& ctx, RoleMask mask) {
  if (mask & ~kAllRoles) throw ArgumentError("role mask has reserved bits set");
  return solve_subset(build_normal_system(ctx, mask), mask);
}

std::int64_t predict(const PredictionModel& model, const ContextRow& row) {
  std::int64_t acc = 0;
  std::size_t j = 0;
  for (int k = 0; k < kRoleCount; ++k) {
    if (model.mask & (1u << k)) acc += std::int64_t{model.coeffs[j++]} * row[k];
  }
  constexpr std::int64_t kHalf = std::int64_t{1} << (kFractionBits - 1);
  return acc >= 0 ? (acc + kHalf) >> kFractionBits
                  : -((-acc + kHalf) >> kFractionBits);
}

std::vector<std::int64_t> compute_residuals(const ContextMatrix& ctx,
                                            const PredictionModel& model) {
  const std::size_t n = ctx.size();
  std::vector<std::int64_t> acc(n, 0);
  std::size_t j = 0;
  for (int k = 0; k < kRoleCount; ++k) {
    if (!(model.mask & (1u << k))) continue;
    const std::int64_t q = model.coeffs[j++];
    const auto& col = ctx.columns[k];
    for (std::size_t i = 0; i < n; ++i) acc[i] += q * col[i];
  }
  constexpr std::int64_t kHalf = std::int64_t{1} << (kFractionBits - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t a = acc[i];
    const std::int64_t p = a >= 0 ? (a + kHalf) >> kFractionBits
                                  : -((-a + kHalf) >> kFractionBits);
    acc[i] = ctx.dependent[i] - p;
  }
  return acc;
}

// --- Selection -------------------------------------------------------------

RoleMask candidate_roles(const ContextMatrix& ctx) {
  if (ctx.size() < 2) return 0;
  std::vector<stats::LabeledColumn> cols(kRoleCount + 1);
  for (int k = 0; k < kRoleCount; ++k) {
    cols[k].label = role_name(static_cast<Role>(k));
    cols[k].values.assign(ctx.columns[k].begin(), ctx.columns[k].end());
  }
  cols[kRoleCount].label = "Dependent";
  cols[kRoleCount].values.assign(ctx.dependent.begin(), ctx.dependent.end());
  const stats::CorrelationMatrix m = stats::correlation_matrix(cols);

  RoleMask admitted = 0;
  for (int k = 0; k < kRoleCount; ++k) {
    if (!m.at(k, kRoleCount)) continue;
    bool collinear = false;
    for (int a = 0; a < k && !collinear; ++a) {
      if (!(admitted & (1u << a))) continue;
      const auto& r = m.at(k, a);
      collinear = r && std::abs(*r) > 0.95;
    }
    if (!collinear) admitted |= static_cast<RoleMask>(1u << k);
  }
  return admitted;
}

namespace {

// Order-0 code length of a zigzag histogram plus escape payloads and the
// model record, in bits.
double objective_bits(const std::array<std::uint32_t, 514>& hist, std::size_t escapes,
                      std::size_t n, std::size_t coeffs) {
  double bits = 0;
  const double total = static_cast<double>(n);
  for (std::uint32_t c : hist)
    if (c != 0) bits += c * std::log2(total / c);
  bits += 32.0 * static_cast<double>(escapes);
  return bits + 16.0 + 32.0 * static_cast<double>(coeffs);
}

constexpr std::int64_t kResidualLimit = std::int64_t{1} << 31;

// Adds residual r to the histogram; false if it cannot be mapped.
bool tally(std::int64_t r, std::array<std::uint32_t, 514>& hist, std::size_t& escapes) {
  if (r <= -kResidualLimit || r >= kResidualLimit) return false;
  const std::uint64_t z = r >= 0 ? static_cast<std::uint64_t>(r) * 2
                                 : static_cast<std::uint64_t>(-r) * 2 - 1;
  if (z < 512) {
    ++hist[z];
  } else {
    ++hist[r > 0 ? 512 : 513];
    ++escapes;
  }
  return true;
}

}  // namespace

double selection_objective(const ContextMatrix& ctx, const PredictionModel& model) {
  const std::vector<std::int64_t> res = compute_residuals(ctx, model);
  std::array<std::uint32_t, 514> hist{};
  std::size_t escapes = 0;
  for (std::int64_t r : res) {
    if (!tally(r, hist, escapes)) return std::numeric_limits<double>::infinity();
  }
  return objective_bits(hist, escapes, res.size(), model.coeffs.size());
}

namespace {

// selection_objective() for many models over one context without the
// per-call allocations: rows are processed in blocks small enough to stay in
// L1, with the same integer arithmetic as predict().
class ObjectiveEvaluator {
 public:
  explicit ObjectiveEvaluator(const ContextMatrix& ctx) : ctx_(ctx) {}

  double operator()(const PredictionModel& model) const {
    std::array<const std::int32_t*, kRoleCount> cols{};
    std::array<std::int32_t, kRoleCount> q{};
    int k = 0;
    for (int r = 0; r < kRoleCount; ++r) {
      if (!(model.mask & (1u << r))) continue;
      cols[k] = ctx_.columns[r].data();
      q[k] = model.coeffs[k];
      ++k;
    }
    // Four interleaved histograms keep runs of one symbol from serializing
    // on a single counter.
    std::array<std::array<std::uint32_t, 514>, 4> sub{};
    const std::size_t n = ctx_.size();
    alignas(64) std::int64_t acc[kBlock];
    for (std::size_t i0 = 0; i0 < n; i0 += kBlock) {
      const std::size_t len = std::min(kBlock, n - i0);
      accumulate(cols.data(), q.data(), k, i0, len, acc);
      if (!residuals(ctx_.dependent.data() + i0, len, acc)) {
        return std::numeric_limits<double>::infinity();
      }
      for (std::size_t i = 0; i < len; ++i) {
        const std::int64_t r = acc[i];
        const auto z = static_cast<std::uint64_t>((r << 1) ^ (r >> 63));
        const std::size_t bin = z < 512 ? z : (r > 0 ? 512 : 513);
        ++sub[i & 3][bin];
      }
    }
    std::array<std::uint32_t, 514> hist{};
    for (std::size_t b = 0; b < hist.size(); ++b) hist[b] = sub[0][b] + sub[1][b] + sub[2][b] + sub[3][b];
    const std::size_t escapes = std::size_t{hist[512]} + hist[513];
    return objective_bits(hist, escapes, n, model.coeffs.size());
  }

 private:
  static constexpr std::size_t kBlock = 512;

  __attribute__((target_clones("avx2", "default")))
  static void accumulate(const std::int32_t* const* cols, const std::int32_t* q, int k,
                         std::size_t i0, std::size_t len, std::int64_t* acc) {
    std::fill(acc, acc + len, 0);
    for (int j = 0; j < k; ++j) {
      const std::int32_t* col = cols[j] + i0;
      const std::int32_t w = q[j];
      for (std::size_t i = 0; i < len; ++i) acc[i] += std::int64_t{w} * col[i];
    }
  }

  // acc[i] becomes dep[i] minus acc[i] / 2^16 rounded half away from zero.
  // False if any residual falls outside the mappable range.
  __attribute__((target_clones("avx2", "default")))
  static bool residuals(const std::int32_t* dep, std::size_t len, std::int64_t* acc) {
    constexpr std::int64_t kHalf = std::int64_t{1} << (kFractionBits - 1);
    std::int64_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < len; ++i) {
      const std::int64_t a = acc[i];
      const std::int64_t neg = a < 0 ? -1 : 0;
      const std::uint64_t mag = static_cast<std::uint64_t>((a ^ neg) - neg) + kHalf;
      const auto p = static_cast<std::int64_t>(mag >> kFractionBits);
      const std::int64_t r = dep[i] - ((p ^ neg) - neg);
      acc[i] = r;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    return lo > -kResidualLimit && hi < kResidualLimit;
  }

  const ContextMatrix& ctx_;
};

}  // namespace

namespace {

// Strict preference: lower objective, then fewer roles, then earlier roles.
bool preferred(double obj_a, RoleMask a, double obj_b, RoleMask b) {
  if (obj_a != obj_b) return obj_a < obj_b;
  const int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  const unsigned diff = a ^ b;
  if (diff == 0) return false;
  return (a & (diff & -diff)) != 0;
}

struct Candidate {
  PredictionModel model;
  double objective = std::numeric_limits<double>::infinity();
  bool degenerate = false;
};

}  // namespace

Selection select_predictors(const ContextMatrix& ctx, SelectionMode mode) {
  Selection sel;
  sel.empty_objective = selection_objective(ctx, PredictionModel{});
  sel.objective = sel.empty_objective;
  if (ctx.size() == 0) return sel;
  sel.candidates = candidate_roles(ctx);
  if (sel.candidates == 0) return sel;

  const NormalSystem sys = build_normal_system(ctx, sel.candidates);
  const ObjectiveEvaluator objective(ctx);
  // Evaluates every mask in parallel, then scans them in order so the choice
  // does not depend on the schedule.
  const int threads = parallel::thread_count();
  auto evaluate_all = [&](const std::vector<RoleMask>& masks) {
    std::vector<Candidate> out(masks.size());
    const long count = static_cast<long>(masks.size());
#pragma omp parallel for num_threads(threads) if (threads > 1) schedule(dynamic, 16)
    for (long i = 0; i < count; ++i) {
      const FitResult fit = solve_subset(sys, masks[i]);
      out[i].model = fit.model;
      out[i].degenerate = fit.degenerate;
      out[i].objective = objective(out[i].model);
    }
    return out;
  };

  Candidate best{PredictionModel{}, sel.empty_objective, false};
  if (mode == SelectionMode::kGreedy) {
    RoleMask current = 0;
    for (;;) {
      std::vector<RoleMask> masks;
      for (int k = 0; k < kRoleCount; ++k) {
        const RoleMask bit = static_cast<RoleMask>(1u << k);
        if ((sel.candidates & bit) && !(current & bit)) masks.push_back(current | bit);
      }
      if (masks.empty()) break;
      std::vector<Candidate> round = evaluate_all(masks);
      std::size_t pick = 0;
      for (std::size_t i = 1; i < round.size(); ++i) {
        if (preferred(round[i].objective, round[i].model.mask, round[pick].objective,
                      round[pick].model.mask)) {
          pick = i;
        }
      }
      if (!(round[pick].objective < best.objective)) break;
      best = std::move(round[pick]);
      current = masks[pick];
    }
  } else {
    std::vector<RoleMask> masks;
    for (RoleMask sub = sel.candidates; sub != 0; sub = (sub - 1) & sel.candidates) masks.push_back(sub);
    std::vector<Candidate> all = evaluate_all(masks);
    for (Candidate& c : all) {
      if (preferred(c.objective, c.model.mask, best.objective, best.model.mask)) best = std::move(c);
    }
  }
  sel.model = std::move(best.model);
  sel.objective = best.objective;
  sel.degenerate = best.degenerate;
  return sel;
}

// --- DPCM ------------------------------------------------------------------

ResidualPlane dpcm_encode(const Subband& ll) {
  if (ll.orientation != Orientation::kLL) {
    throw ArgumentError("DPCM applies to the LL band only, got " + ll.name());
  }
  ResidualPlane res{0, ll.rows, ll.cols, {}};
  res.residuals.resize(ll.size());
  std::int64_t prev = 0;
  for (std::size_t i = 0; i < ll.size(); ++i) {
    res.residuals[i] = ll.coeffs[i] - prev;
    prev = ll.coeffs[i];
  }
  return res;
}

Subband dpcm_decode(const ResidualPlane& res, int rows, int cols) {
  if (res.band_index != 0) {
    throw ArgumentError("DPCM applies to the LL band only, got band " +
                        std::to_string(res.band_index));
  }
  if (rows < 1 || cols < 1 ||
      res.residuals.size() != static_cast<std::size_t>(rows) * cols) {
    throw ArgumentError("residual plane does not match LL dimensions");
  }
  Subband ll{0, Orientation::kLL, rows, cols, {}};
  ll.coeffs.resize(res.residuals.size());
  std::int64_t prev = 0;
  for (std::size_t i = 0; i < res.residuals.size(); ++i) {
    const std::int64_t v = prev + res.residuals[i];
    if (v <= -kCoefficientLimit || v >= kCoefficientLimit) {
      throw CorruptionError("LL coefficient " + std::to_string(i) + " out of range");
    }
    ll.coeffs[i] = static_cast<std::int32_t>(v);
    prev = v;
  }
  return ll;
}

// --- Band coding -----------------------------------------------------------

ResidualPlane encode_band_with(const SubbandPyramid& pyr, std::size_t band_index,
                               const PredictionModel& model) {
  const ContextMatrix ctx = extract_context(pyr, band_index);
  return {band_index, ctx.rows, ctx.cols, compute_residuals(ctx, model)};
}

BandEncoding encode_band(const SubbandPyramid& pyr, std::size_t band_index,
                         SelectionMode mode) {
  const ContextMatrix ctx = extract_context(pyr, band_index);
  BandEncoding enc;
  enc.selection = select_predictors(ctx, mode);
  enc.model = enc.selection.model;
  enc.residuals = {band_index, ctx.rows, ctx.cols, compute_residuals(ctx, enc.model)};
  return enc;
}

PartialPyramid::PartialPyramid(SubbandPyramid layout)
    : pyr_(std::move(layout)), ready_(pyr_.bands.size(), false) {}

std::size_t PartialPyramid::next_band() const {
  return static_cast<std::size_t>(std::find(ready_.begin(), ready_.end(), false) -
                                  ready_.begin());
}

void PartialPyramid::decode_ll(const ResidualPlane& res) {
  Subband& ll = pyr_.bands[0];
  ll = dpcm_decode(res, ll.rows, ll.cols);
  ready_[0] = true;
}

const Subband& PartialPyramid::decode_band(std::size_t band_index,
                                           const PredictionModel& model,
                                           const ResidualPlane& res) {
  require_detail_band(pyr_, band_index);
  if (next_band() < band_index) {
    throw SequencingError("band " + pyr_.bands[band_index].name() +
                          " decoded before band " +
                          pyr_.bands[next_band()].name());
  }
  if (static_cast<std::size_t>(std::popcount(model.mask)) != model.coeffs.size() ||
      (model.mask & ~kAllRoles)) {
    throw ArgumentError("prediction model coefficient count does not match mask");
  }
  Subband& b = pyr_.bands[band_index];
  if (res.residuals.size() != b.size()) {
    throw ArgumentError("residual plane does not match band " + b.name());
  }
  for (int r = 0; r < b.rows; ++r) {
    for (int c = 0; c < b.cols; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * b.cols + c;
      const std::int64_t v =
          predict(model, context_at(pyr_, band_index, r, c)) + res.residuals[i];
      if (v <= -kCoefficientLimit || v >= kCoefficientLimit) {
        throw CorruptionError("band " + b.name() + " coefficient " +
                              std::to_string(i) + " out of range");
      }
      b.coeffs[i] = static_cast<std::int32_t>(v);
    }
  }
  ready_[band_index] = true;
  return b;
}

SubbandPyramid PartialPyramid::release() && { return std::move(pyr_); }

// --- Serialization ---------------------------------------------------------

void append_model(const PredictionModel& model, std::vector<std::uint8_t>& out) {
  out.push_back(static_cast<std::uint8_t>(model.mask & 0xFF));
  out.push_back(static_cast<std::uint8_t>(model.mask >> 8));
  for (std::int32_t q : model.coeffs) {
    const auto u = static_cast<std::uint32_t>(q);
    for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::uint8_t>(u >> s));
  }
}

PredictionModel read_model(std::span<const std::uint8_t> bytes, std::size_t& offset) {
  if (bytes.size() < offset + 2) throw FormatError("truncated model record", offset);
  PredictionModel m;
  m.mask = static_cast<RoleMask>(bytes[offset] | (bytes[offset + 1] << 8));
  if (m.mask & ~kAllRoles) throw FormatError("model mask uses reserved bits", offset);
  offset += 2;
  const int k = std::popcount(m.mask);
  if (bytes.size() < offset + 4 * static_cast<std::size_t>(k)) {
    throw FormatError("truncated model coefficients", offset);
  }
  for (int j = 0; j < k; ++j) {
    std::uint32_t u = 0;
    for (int s = 0; s < 4; ++s) u |= std::uint32_t{bytes[offset + s]} << (8 * s);
    m.coeffs.push_back(static_cast<std::int32_t>(u));
    offset += 4;
  }
  return m;
}

}  // namespace mwp
