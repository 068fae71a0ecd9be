// Copyright 2026 The adrt Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adrt/core.hpp"
#include "adrt/cost.hpp"
#include "adrt/detail/parallel.hpp"
#include "adrt/errors.hpp"
#include "adrt/forward.hpp"

namespace adrt {

/// Finite differences of a target-level section in the intercept variable:
/// Delta(h, s) = R(h+1, s) - R(h, s) for h in {-s-1,..,2^n-2}, one entry per
/// target support entry. Stored per slope at offset q = h + s + 1.
template <typename Scalar = double>
class DeltaBuffer {
 public:
  using Buffer = DenseBuffer<Scalar>;

  DeltaBuffer(int exponent, int level, Buffer values)
      : exponent_(exponent), level_(level), values_(std::move(values)) {
    const Eigen::Index slopes = Eigen::Index{1} << level;
    const Eigen::Index width = (Eigen::Index{1} << exponent) + slopes - 1;
    if (values_.rows() != slopes || values_.cols() != width) {
      throw StructureError("delta buffer must be " + std::to_string(slopes) + "x" +
                           std::to_string(width) + ", got " + std::to_string(values_.rows()) +
                           "x" + std::to_string(values_.cols()));
    }
  }

  int exponent() const { return exponent_; }
  /// Target level m-1; slopes range over {0,..,2^{m-1}-1}.
  int level() const { return level_; }
  Eigen::Index side() const { return Eigen::Index{1} << exponent_; }
  Eigen::Index slope_count() const { return Eigen::Index{1} << level_; }

  /// Window read; the window is exact, reads outside it are a caller bug.
  Scalar at(Eigen::Index intercept, Eigen::Index slope) const {
    const Eigen::Index q = intercept + slope + 1;
    if (slope < 0 || slope >= slope_count() || q < 0 || q >= side() + slope) {
      throw IndexError("delta read outside window: h=" + std::to_string(intercept) +
                       " s=" + std::to_string(slope));
    }
    return values_(slope, q);
  }

  const Buffer& raw() const { return values_; }

 private:
  int exponent_;
  int level_;
  Buffer values_;
};

/// Differences of both target sections of upper section l, straight from the
/// level-m data:
///   Delta_even(h, s) = R(l, h+1, 2s)   - R(l, h,   2s+1)   -> section 2l
///   Delta_odd(h, s)  = R(l, h-s, 2s+1) - R(l, h-s, 2s)     -> section 2l+1
/// In physical offsets both reads of the even rule land at column q + s, and
/// the odd rule reads columns q and q-1. One subtraction per produced entry.
template <typename Scalar>
std::pair<DeltaBuffer<Scalar>, DeltaBuffer<Scalar>> compute_deltas(
    const SectionedTransform<Scalar>& upper, Eigen::Index section,
    CostLedger* ledger = nullptr) {
  using Buffer = typename DeltaBuffer<Scalar>::Buffer;
  if (upper.level() < 1) {
    throw StructureError("level-0 transform has nothing to split");
  }
  const int n = upper.exponent();
  const int target_level = upper.level() - 1;
  const Eigen::Index side = upper.side();
  const Eigen::Index target_slopes = Eigen::Index{1} << target_level;
  const Eigen::Index width = side + target_slopes - 1;
  const Buffer& up = upper.section(section);

  Buffer even = Buffer::Zero(target_slopes, width);
  Buffer odd = Buffer::Zero(target_slopes, width);
  std::uint64_t subtractions = 0;
  for (Eigen::Index s = 0; s < target_slopes; ++s) {
    for (Eigen::Index q = 0; q < side + s; ++q) {
      even(s, q) = up(2 * s, q + s) - up(2 * s + 1, q + s);
      ++subtractions;
    }
    for (Eigen::Index q = 0; q < side + s; ++q) {
      const Scalar below = (q >= 1) ? up(2 * s, q - 1) : Scalar(0);
      odd(s, q) = up(2 * s + 1, q) - below;
      ++subtractions;
    }
  }
  if (ledger != nullptr) ledger->record(upper.level(), 0, subtractions);
  return {DeltaBuffer<Scalar>(n, target_level, std::move(even)),
          DeltaBuffer<Scalar>(n, target_level, std::move(odd))};
}

/// Rebuilds one target-level section buffer by prefix-summing the deltas:
/// R(h, s) = R(h-1, s) + Delta(h-1, s), h ascending from -s with
/// R(-s-1, s) = 0. One addition per produced entry, first step included.
template <typename Scalar>
typename SectionedTransform<Scalar>::Buffer prefix_restore(const DeltaBuffer<Scalar>& delta,
                                                           CostLedger* ledger = nullptr) {
  using Buffer = typename SectionedTransform<Scalar>::Buffer;
  const Eigen::Index side = delta.side();
  const Eigen::Index slopes = delta.slope_count();
  Buffer out = Buffer::Zero(slopes, side + slopes - 1);
  std::uint64_t additions = 0;
  for (Eigen::Index s = 0; s < slopes; ++s) {
    Scalar acc = 0;
    for (Eigen::Index q = 0; q < side + s; ++q) {
      acc += delta.raw()(s, q);
      out(s, q) = acc;
      ++additions;
    }
  }
  if (ledger != nullptr) ledger->record(delta.level() + 1, additions, 0);
  return out;
}

/// One level of section splitting, m -> m-1: the exact inverse of merge_level
/// on any support-respecting stack.
template <typename Scalar>
SectionedTransform<Scalar> split_level(const SectionedTransform<Scalar>& upper,
                                       CostLedger* ledger = nullptr, int workers = 0) {
  using Buffer = typename SectionedTransform<Scalar>::Buffer;
  if (upper.level() < 1) {
    throw StructureError("level-0 transform has nothing to split");
  }
  const int n = upper.exponent();
  const int target_level = upper.level() - 1;
  const Eigen::Index upper_sections = upper.section_count();
  const Eigen::Index target_slopes = Eigen::Index{1} << target_level;
  const Eigen::Index width = upper.side() + target_slopes - 1;

  std::vector<Buffer> buffers(std::size_t(2 * upper_sections),
                              Buffer::Zero(target_slopes, width));
  std::vector<CostLedger> section_ledgers(static_cast<std::size_t>(upper_sections));

  detail::parallel_for(upper_sections, workers, [&](Eigen::Index l) {
    CostLedger* local = ledger != nullptr ? &section_ledgers[std::size_t(l)] : nullptr;
    auto [even, odd] = compute_deltas(upper, l, local);
    buffers[std::size_t(2 * l)] = prefix_restore(even, local);
    buffers[std::size_t(2 * l + 1)] = prefix_restore(odd, local);
  });

  if (ledger != nullptr) {
    for (const CostLedger& local : section_ledgers) ledger->merge(local);
  }
  return SectionedTransform<Scalar>(n, target_level, std::move(buffers));
}

/// Exact inversion of a single-quadrant transform: n splits, then the image
/// rows are read off the level-0 stack.
template <typename Scalar>
Image<Scalar> iadrt(const SectionedTransform<Scalar>& transform, CostLedger* ledger = nullptr,
                    int workers = 0) {
  if (transform.level() != transform.exponent()) {
    throw StructureError("inversion expects a level-n transform, got level " +
                         std::to_string(transform.level()) + " of n=" +
                         std::to_string(transform.exponent()));
  }
  if (!transform.padding_is_zero()) {
    throw StructureError("transform has nonzero padding entries");
  }
  SectionedTransform<Scalar> current = transform;
  for (int m = transform.exponent(); m >= 1; --m) {
    current = split_level(current, ledger, workers);
  }
  const Eigen::Index side = current.side();
  typename Image<Scalar>::Array values(side, side);
  for (Eigen::Index j = 0; j < side; ++j) {
    values.row(j) = current.section(j).row(0);
  }
  return Image<Scalar>(values);
}

/// Reconstruction from one quadrant of a full transform; any single quadrant
/// suffices. Undoes that quadrant's symmetry at the end.
template <typename Scalar>
Image<Scalar> iadrt_from_full(const FullTransform<Scalar>& full, Quadrant q,
                              CostLedger* ledger = nullptr, int workers = 0) {
  const Image<Scalar> symmetric = iadrt(full.quadrant(q), ledger, workers);
  return apply_quadrant_symmetry_inverse(symmetric, q);
}

}  // namespace adrt
