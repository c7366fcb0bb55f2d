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

#ifndef MWP_PREDICTION_HPP_
#define MWP_PREDICTION_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mwp/lifting.hpp"

namespace mwp {

// Causal neighbors a detail coefficient can be predicted from. The order is
// the bit order of RoleMask and the order coefficients are stored in.
enum class Role : std::uint8_t {
  kParent,
  kParentEast,
  kParentWest,
  kParentSouth,
  kParentNorth,
  kNorth,
  kNorthEast,
  kNorthWest,
  kWest,
  kAunt1,
  kAunt2,
};

inline constexpr int kRoleCount = 11;

using RoleMask = std::uint16_t;
inline constexpr RoleMask kAllRoles = (1u << kRoleCount) - 1;

constexpr RoleMask role_bit(Role r) {
  return static_cast<RoleMask>(1u << static_cast<unsigned>(r));
}

const char* role_name(Role r);

using ContextRow = std::array<std::int32_t, kRoleCount>;

// Per-position neighbor values for one detail band, stored column-wise, plus
// the coefficient being predicted.
struct ContextMatrix {
  std::size_t band_index = 0;
  int rows = 0;
  int cols = 0;
  std::array<std::vector<std::int32_t>, kRoleCount> columns;
  std::vector<std::int32_t> dependent;

  std::size_t size() const { return dependent.size(); }
  ContextRow row(std::size_t i) const;
  const std::vector<std::int32_t>& column(Role r) const {
    return columns[static_cast<std::size_t>(r)];
  }
};

// Q15.16 fixed point.
inline constexpr int kFractionBits = 16;

struct PredictionModel {
  RoleMask mask = 0;
  std::vector<std::int32_t> coeffs;  // one per set bit, in role order

  bool is_zero() const { return mask == 0; }
  std::size_t record_bytes() const { return 2 + 4 * coeffs.size(); }

  friend bool operator==(const PredictionModel&,
                         const PredictionModel&) = default;
};

struct FitResult {
  PredictionModel model;
  std::vector<double> coefficients;  // least-squares solution, unquantized
  bool degenerate = false;           // singular system, zero model returned
};

struct ResidualPlane {
  std::size_t band_index = 0;
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> residuals;  // actual - predicted, raster order
};

// Neighbors of (r, c) in detail band `band_index`:
//   North/NorthEast/NorthWest/West  same band
//   Parent + 4-neighbors            same orientation one level coarser at
//                                   (r/2, c/2); co-located in LL for level 1
//   Aunt1, Aunt2                    the other two orientations at the parent
//                                   position, following HL -> LH -> HH -> HL;
//                                   level 1 uses the co-located sibling when
//                                   it is coded earlier, otherwise 0
// Anything outside its band reads as 0.
ContextRow context_at(const SubbandPyramid& pyr, std::size_t band_index, int r,
                      int c);

// Throws ArgumentError for the LL band or an out-of-range index.
ContextMatrix extract_context(const SubbandPyramid& pyr,
                              std::size_t band_index);

// Clamps to [-32768, 32768) and rounds to the nearest Q15.16 step.
std::int32_t quantize_coefficient(double value);

// Ordinary least squares without intercept over the masked columns, via the
// normal equations and Gaussian elimination with partial pivoting. A pivot
// below 1e-9 gives the zero model with `degenerate` set.
FitResult fit_model(const ContextMatrix& ctx, RoleMask mask);

// Sum of coeff * value over the selected roles in 64-bit, then divided by
// 2^16 rounding half away from zero.
std::int64_t predict(const PredictionModel& model, const ContextRow& row);

std::vector<std::int64_t> compute_residuals(const ContextMatrix& ctx,
                                            const PredictionModel& model);

enum class SelectionMode { kGreedy, kExhaustive };

struct Selection {
  PredictionModel model;
  RoleMask candidates = 0;  // roles surviving the correlation filters
  double objective = 0;     // bits, for the chosen model
  double empty_objective = 0;
  bool degenerate = false;
};

// Roles usable for fitting: defined correlation with the dependent, and
// |R| <= 0.95 against every role admitted before it.
RoleMask candidate_roles(const ContextMatrix& ctx);

// Estimated cost in bits: order-0 code length of the residual symbols plus
// 16 mask bits and 32 bits per coefficient.
double selection_objective(const ContextMatrix& ctx,
                           const PredictionModel& model);

// Greedy forward selection or exhaustive search over candidate_roles().
// Ties go to the smaller mask, then the earlier roles.
Selection select_predictors(const ContextMatrix& ctx, SelectionMode mode);

// Raster-order differences on the LL band; the first value is kept as is.
// Both throw ArgumentError when handed a detail band.
ResidualPlane dpcm_encode(const Subband& ll);
Subband dpcm_decode(const ResidualPlane& res, int rows, int cols);

struct BandEncoding {
  PredictionModel model;
  ResidualPlane residuals;
  Selection selection;
};

ResidualPlane encode_band_with(const SubbandPyramid& pyr,
                               std::size_t band_index,
                               const PredictionModel& model);
BandEncoding encode_band(const SubbandPyramid& pyr, std::size_t band_index,
                         SelectionMode mode);

// Pyramid under reconstruction. Bands must be filled strictly in coding
// order.
class PartialPyramid {
 public:
  explicit PartialPyramid(SubbandPyramid layout);

  const SubbandPyramid& pyramid() const { return pyr_; }
  SubbandPyramid& mutable_pyramid() { return pyr_; }
  bool ready(std::size_t band_index) const { return ready_[band_index]; }
  std::size_t next_band() const;
  bool complete() const { return next_band() == ready_.size(); }

  void decode_ll(const ResidualPlane& res);
  // Rebuilds each context row from already reconstructed values. Throws
  // SequencingError when coarser bands are missing, CorruptionError when a
  // value leaves +-kCoefficientLimit.
  const Subband& decode_band(std::size_t band_index,
                             const PredictionModel& model,
                             const ResidualPlane& res);

  SubbandPyramid release() &&;

 private:
  SubbandPyramid pyr_;
  std::vector<bool> ready_;
};

// Mask as 16-bit little-endian (high 5 bits zero), then one little-endian
// int32 per set bit.
void append_model(const PredictionModel& model, std::vector<std::uint8_t>& out);
// Advances `offset`. Throws FormatError on truncation or reserved mask bits.
PredictionModel read_model(std::span<const std::uint8_t> bytes,
                           std::size_t& offset);

}  // namespace mwp

#endif  // MWP_PREDICTION_HPP_
