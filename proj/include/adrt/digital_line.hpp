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
#include <vector>

#include "adrt/core.hpp"
#include "adrt/errors.hpp"

namespace adrt {

struct Pixel {
  std::int64_t col = 0;  // i
  std::int64_t row = 0;  // j
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// A digital line: one pixel per row over 2^m rows, bottom pixel (h, 0), top
/// pixel (h+s, 2^m-1), column nondecreasing with per-row increments in {0,1}.
class DigitalLine {
 public:
  DigitalLine(int level, std::int64_t intercept, std::int64_t slope, std::vector<Pixel> pixels)
      : level_(level), intercept_(intercept), slope_(slope), pixels_(std::move(pixels)) {}

  int level() const { return level_; }
  std::int64_t intercept() const { return intercept_; }
  std::int64_t slope() const { return slope_; }
  /// Pixels in ascending row order, one per row.
  const std::vector<Pixel>& pixels() const { return pixels_; }

 private:
  int level_;
  std::int64_t intercept_;
  std::int64_t slope_;
  std::vector<Pixel> pixels_;
};

namespace detail {

// Two half-height lines glued together: the lower keeps the intercept, the
// upper starts at h + t (s = 2t) or h + t + 1 (s = 2t+1) and is shifted up by
// 2^{m-1} rows. Base case: a single pixel (h, 0).
inline void emit_line_pixels(int level, std::int64_t intercept, std::int64_t slope,
                             std::int64_t row_base, std::vector<Pixel>& out) {
  if (level == 0) {
    out.push_back(Pixel{intercept, row_base});
    return;
  }
  const std::int64_t half_slope = slope / 2;
  const std::int64_t parity = slope & 1;
  emit_line_pixels(level - 1, intercept, half_slope, row_base, out);
  emit_line_pixels(level - 1, intercept + half_slope + parity, half_slope,
                   row_base + (std::int64_t{1} << (level - 1)), out);
}

}  // namespace detail

inline DigitalLine digital_line(int level, std::int64_t intercept, std::int64_t slope) {
  if (level < 0) throw IndexError("negative digital-line level");
  if (level > 30) throw IndexError("digital-line level " + std::to_string(level) + " too large");
  const std::int64_t slopes = std::int64_t{1} << level;
  if (slope < 0 || slope >= slopes) {
    throw IndexError("slope " + std::to_string(slope) + " outside [0, " +
                     std::to_string(slopes) + ") at level " + std::to_string(level));
  }
  std::vector<Pixel> pixels;
  pixels.reserve(std::size_t(slopes));
  detail::emit_line_pixels(level, intercept, slope, 0, pixels);
  return DigitalLine(level, intercept, slope, std::move(pixels));
}

/// Brute-force transform entry: sums the l-th section of the image over the
/// pixels of D_m(h, s), with implicit zeros outside the image. Ground truth
/// for the fast transform; cost O(2^m) per entry.
template <typename Scalar>
Scalar adrt_direct(const Image<Scalar>& image, int level, Eigen::Index section,
                   std::int64_t intercept, std::int64_t slope) {
  const SectionView<Scalar> view = section_view(image, level, section);
  const DigitalLine line = digital_line(level, intercept, slope);
  Scalar sum = 0;
  for (const Pixel& px : line.pixels()) sum += view.at(px.col, px.row);
  return sum;
}

/// Full direct transform at one level, populated over the whole support.
template <typename Scalar>
SectionedTransform<Scalar> adrt_direct_full(const Image<Scalar>& image, int level) {
  const int n = image.exponent();
  if (level < 0 || level > n) {
    throw IndexError("level " + std::to_string(level) + " outside [0, " + std::to_string(n) + "]");
  }
  using Buffer = typename SectionedTransform<Scalar>::Buffer;
  const Eigen::Index side = image.side();
  const Eigen::Index slopes = Eigen::Index{1} << level;
  const Eigen::Index sections = Eigen::Index{1} << (n - level);
  std::vector<Buffer> buffers(std::size_t(sections), Buffer::Zero(slopes, side + slopes - 1));

  for (Eigen::Index s = 0; s < slopes; ++s) {
    for (std::int64_t h = -s; h < side; ++h) {
      const DigitalLine line = digital_line(level, h, s);
      for (Eigen::Index l = 0; l < sections; ++l) {
        const SectionView<Scalar> view = section_view(image, level, l);
        Scalar sum = 0;
        for (const Pixel& px : line.pixels()) sum += view.at(px.col, px.row);
        buffers[std::size_t(l)](s, h + s) = sum;
      }
    }
  }
  return SectionedTransform<Scalar>(n, level, std::move(buffers));
}

}  // namespace adrt
