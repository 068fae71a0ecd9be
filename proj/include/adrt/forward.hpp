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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adrt/core.hpp"
#include "adrt/cost.hpp"
#include "adrt/detail/parallel.hpp"
#include "adrt/errors.hpp"

namespace adrt {

/// Level-0 transform: 2^n single-slope sections with R(l, h, 0) = A(h, l).
template <typename Scalar>
SectionedTransform<Scalar> adrt_init(const Image<Scalar>& image) {
  using Buffer = typename SectionedTransform<Scalar>::Buffer;
  const Eigen::Index side = image.side();
  std::vector<Buffer> sections;
  sections.reserve(std::size_t(side));
  for (Eigen::Index l = 0; l < side; ++l) {
    Buffer row(1, side);
    row.row(0) = image.array().row(l);
    sections.push_back(std::move(row));
  }
  return SectionedTransform<Scalar>(image.exponent(), 0, std::move(sections));
}

/// One level of section merging, m-1 -> m. Two half-height sections combine
/// into each output section:
///   R_m(l, h, 2s)   = R_{m-1}(2l, h, s) + R_{m-1}(2l+1, h+s,   s)
///   R_m(l, h, 2s+1) = R_{m-1}(2l, h, s) + R_{m-1}(2l+1, h+s+1, s)
/// In physical offsets (p = h + slope) the second read lands at p_out and the
/// first at p_out - s - parity. Every support entry costs one addition,
/// recorded under the output level; out-of-support reads contribute 0.
template <typename Scalar>
SectionedTransform<Scalar> merge_level(const SectionedTransform<Scalar>& lower,
                                       CostLedger* ledger = nullptr, int workers = 0) {
  using Buffer = typename SectionedTransform<Scalar>::Buffer;
  const int n = lower.exponent();
  const int m = lower.level() + 1;
  if (lower.level() >= n) {
    throw StructureError("cannot merge level " + std::to_string(lower.level()) +
                         " of an n=" + std::to_string(n) + " transform");
  }
  const Eigen::Index side = lower.side();
  const Eigen::Index out_slopes = Eigen::Index{1} << m;
  const Eigen::Index out_width = side + out_slopes - 1;
  const Eigen::Index out_sections = Eigen::Index{1} << (n - m);

  std::vector<Buffer> buffers(std::size_t(out_sections), Buffer::Zero(out_slopes, out_width));
  std::vector<std::uint64_t> section_adds(std::size_t(out_sections), 0);

  detail::parallel_for(out_sections, workers, [&](Eigen::Index l) {
    const Buffer& lo_even = lower.section(2 * l);
    const Buffer& lo_odd = lower.section(2 * l + 1);
    Buffer& out = buffers[std::size_t(l)];
    std::uint64_t adds = 0;
    for (Eigen::Index s_out = 0; s_out < out_slopes; ++s_out) {
      const Eigen::Index s = s_out >> 1;
      const Eigen::Index parity = s_out & 1;
      const Eigen::Index lower_support = side + s;
      for (Eigen::Index p_out = 0; p_out < side + s_out; ++p_out) {
        const Eigen::Index p_a = p_out - s - parity;
        const Scalar a = (p_a >= 0 && p_a < lower_support) ? lo_even(s, p_a) : Scalar(0);
        const Scalar b = (p_out < lower_support) ? lo_odd(s, p_out) : Scalar(0);
        out(s_out, p_out) = a + b;
        ++adds;
      }
    }
    section_adds[std::size_t(l)] = adds;
  });

  if (ledger != nullptr) {
    std::uint64_t adds = 0;
    for (std::uint64_t a : section_adds) adds += a;
    ledger->record(m, adds, 0);
  }
  return SectionedTransform<Scalar>(n, m, std::move(buffers));
}

/// Fast single-quadrant transform: level 0 plus n merges, O(N log N) additions.
template <typename Scalar>
SectionedTransform<Scalar> adrt_single_quadrant(const Image<Scalar>& image,
                                                CostLedger* ledger = nullptr, int workers = 0) {
  SectionedTransform<Scalar> current = adrt_init(image);
  for (int m = 1; m <= image.exponent(); ++m) {
    current = merge_level(current, ledger, workers);
  }
  return current;
}

/// The four single-quadrant transforms of an image, one per symmetry.
template <typename Scalar = double>
class FullTransform {
 public:
  void set(Quadrant q, SectionedTransform<Scalar> transform) {
    quadrants_[std::size_t(quadrant_id(q))] = std::move(transform);
  }

  bool has(Quadrant q) const { return quadrants_[std::size_t(quadrant_id(q))].has_value(); }

  const SectionedTransform<Scalar>& quadrant(Quadrant q) const {
    const auto& slot = quadrants_[std::size_t(quadrant_id(q))];
    if (!slot) {
      throw StructureError("quadrant " + std::to_string(quadrant_id(q)) + " not present");
    }
    return *slot;
  }

 private:
  std::array<std::optional<SectionedTransform<Scalar>>, 4> quadrants_;
};

/// Full transform: quadrant q holds the single-quadrant transform of the
/// symmetry image apply_quadrant_symmetry(image, q).
template <typename Scalar>
FullTransform<Scalar> adrt_full(const Image<Scalar>& image, int workers = 0) {
  FullTransform<Scalar> full;
  for (Quadrant q : kQuadrants) {
    full.set(q, adrt_single_quadrant(apply_quadrant_symmetry(image, q), nullptr, workers));
  }
  return full;
}

}  // namespace adrt
