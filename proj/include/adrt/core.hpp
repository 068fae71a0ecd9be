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

#include <Eigen/Dense>

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "adrt/errors.hpp"

// Index conventions used throughout the library (all 0-based):
//   i : column, 0..2^n-1, increasing rightward
//   j : row,    0..2^n-1, increasing upward
//   m : recursion level; a section spans 2^m consecutive rows
//   l : section index at level m, 0..2^{n-m}-1
//   s : slope (total column rise across a section), 0..2^m-1
//   h : intercept (bottom-row column of a digital line), -s..2^n-1
// Per-slope rows are stored at the physical offset p = h + s, which is
// nonnegative over the whole support.

namespace adrt {

template <typename Scalar>
using DenseBuffer =
    Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace detail {

inline bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline int log2_exact(std::uint64_t v) {
  return std::countr_zero(v);
}

}  // namespace detail

/// A real-valued 2^n x 2^n pixel grid. Immutable after construction; reads
/// outside the grid return 0. A(i, j) addresses column i, row j; storage is
/// row-major with row index j.
template <typename Scalar = double>
class Image {
  static_assert(std::is_floating_point_v<Scalar>);

 public:
  using Array = DenseBuffer<Scalar>;

  template <typename Derived>
  explicit Image(const Eigen::DenseBase<Derived>& values) : values_(values) {
    const Eigen::Index rows = values_.rows();
    if (rows != values_.cols() || !detail::is_pow2(static_cast<std::uint64_t>(rows))) {
      throw DimensionError("image must be square with a power-of-two side, got " +
                           std::to_string(rows) + "x" + std::to_string(values_.cols()));
    }
    if (!values_.allFinite()) {
      throw IngestError("image contains non-finite values");
    }
    exponent_ = detail::log2_exact(static_cast<std::uint64_t>(rows));
  }

  /// Side length exponent n (side == 2^n).
  int exponent() const { return exponent_; }
  Eigen::Index side() const { return values_.rows(); }

  /// Zero-extended read: 0 outside {0,..,2^n-1}^2.
  Scalar at(Eigen::Index i, Eigen::Index j) const {
    if (i < 0 || i >= side() || j < 0 || j >= side()) return Scalar(0);
    return values_(j, i);
  }

  /// Raw storage, indexed (row j, column i).
  const Array& array() const { return values_; }

 private:
  Array values_;
  int exponent_;
};

using ImageD = Image<double>;

/// Builds an Image from a row-major sequence of length 4^n: element
/// j*2^n + i becomes A(i, j).
template <typename Scalar = double>
Image<Scalar> image_from_values(int exponent, std::span<const Scalar> values) {
  if (exponent < 0) throw DimensionError("negative exponent");
  const std::uint64_t side = std::uint64_t{1} << exponent;
  if (values.size() != side * side) {
    throw DimensionError("expected " + std::to_string(side * side) + " values for a " +
                         std::to_string(side) + "x" + std::to_string(side) + " image, got " +
                         std::to_string(values.size()));
  }
  using Array = typename Image<Scalar>::Array;
  Eigen::Map<const Array> map(values.data(), static_cast<Eigen::Index>(side),
                              static_cast<Eigen::Index>(side));
  return Image<Scalar>(map);
}

template <typename Scalar = double>
Image<Scalar> image_from_values(int exponent, std::initializer_list<Scalar> values) {
  return image_from_values<Scalar>(exponent, std::span<const Scalar>(values.begin(), values.size()));
}

/// Read-only view of the l-th 2^n x 2^m section: value(i, j) = A(i, j + l*2^m),
/// 0 outside the section's own index range.
template <typename Scalar = double>
class SectionView {
 public:
  SectionView(const Image<Scalar>& image, int level, Eigen::Index section)
      : image_(&image), level_(level), section_(section) {
    const int n = image.exponent();
    if (level < 0 || level > n) {
      throw IndexError("section level " + std::to_string(level) + " outside [0, " +
                       std::to_string(n) + "]");
    }
    const Eigen::Index count = Eigen::Index{1} << (n - level);
    if (section < 0 || section >= count) {
      throw IndexError("section index " + std::to_string(section) + " outside [0, " +
                       std::to_string(count) + ")");
    }
    row_offset_ = section * (Eigen::Index{1} << level);
  }

  Eigen::Index rows() const { return Eigen::Index{1} << level_; }
  Eigen::Index cols() const { return image_->side(); }

  Scalar at(Eigen::Index i, Eigen::Index j) const {
    if (j < 0 || j >= rows()) return Scalar(0);
    return image_->at(i, j + row_offset_);
  }

 private:
  const Image<Scalar>* image_;
  int level_;
  Eigen::Index section_;
  Eigen::Index row_offset_;
};

template <typename Scalar>
SectionView<Scalar> section_view(const Image<Scalar>& image, int level, Eigen::Index section) {
  return SectionView<Scalar>(image, level, section);
}

/// Per-level stack of section transforms. Level m holds 2^{n-m} sections;
/// each section is a dense (slope s, physical offset p) buffer of shape
/// 2^m x (2^n + 2^m - 1) with p = h + s. Entries at p >= 2^n + s are padding
/// and stay zero. Immutable after construction.
template <typename Scalar = double>
class SectionedTransform {
 public:
  using Buffer = DenseBuffer<Scalar>;

  SectionedTransform(int exponent, int level, std::vector<Buffer> sections)
      : exponent_(exponent), level_(level), sections_(std::move(sections)) {
    if (exponent < 0 || level < 0 || level > exponent) {
      throw StructureError("invalid transform levels n=" + std::to_string(exponent) +
                           " m=" + std::to_string(level));
    }
    const auto expected = std::size_t{1} << (exponent - level);
    if (sections_.size() != expected) {
      throw StructureError("level " + std::to_string(level) + " needs " +
                           std::to_string(expected) + " sections, got " +
                           std::to_string(sections_.size()));
    }
    for (const Buffer& b : sections_) {
      if (b.rows() != slope_count() || b.cols() != width()) {
        throw StructureError("section buffer must be " + std::to_string(slope_count()) + "x" +
                             std::to_string(width()) + ", got " + std::to_string(b.rows()) +
                             "x" + std::to_string(b.cols()));
      }
    }
  }

  static SectionedTransform zeros(int exponent, int level) {
    const Eigen::Index slopes = Eigen::Index{1} << level;
    const Eigen::Index w = (Eigen::Index{1} << exponent) + slopes - 1;
    std::vector<Buffer> sections(std::size_t{1} << (exponent - level),
                                 Buffer::Zero(slopes, w));
    return SectionedTransform(exponent, level, std::move(sections));
  }

  int exponent() const { return exponent_; }
  int level() const { return level_; }
  Eigen::Index side() const { return Eigen::Index{1} << exponent_; }
  Eigen::Index section_count() const { return Eigen::Index{1} << (exponent_ - level_); }
  Eigen::Index slope_count() const { return Eigen::Index{1} << level_; }
  Eigen::Index width() const { return side() + slope_count() - 1; }
  /// Number of populated offsets for slope s: h ranges over {-s,..,2^n-1}.
  Eigen::Index support(Eigen::Index slope) const { return side() + slope; }

  /// Logical accessor R(l, h, s): 0 whenever h < -s or h > 2^n - 1.
  Scalar at(Eigen::Index section, Eigen::Index intercept, Eigen::Index slope) const {
    if (slope < 0 || slope >= slope_count()) {
      throw IndexError("slope " + std::to_string(slope) + " outside [0, " +
                       std::to_string(slope_count()) + ")");
    }
    const Eigen::Index p = intercept + slope;
    if (p < 0 || p >= support(slope)) return Scalar(0);
    return this->section(section)(slope, p);
  }

  const Buffer& section(Eigen::Index index) const {
    if (index < 0 || std::size_t(index) >= sections_.size()) {
      throw IndexError("section index " + std::to_string(index) + " outside [0, " +
                       std::to_string(sections_.size()) + ")");
    }
    return sections_[std::size_t(index)];
  }

  const std::vector<Buffer>& sections() const { return sections_; }

  /// True when every padding entry (p >= 2^n + s) is exactly zero.
  bool padding_is_zero() const {
    for (const Buffer& b : sections_) {
      for (Eigen::Index s = 0; s < slope_count(); ++s) {
        for (Eigen::Index p = support(s); p < width(); ++p) {
          if (b(s, p) != Scalar(0)) return false;
        }
      }
    }
    return true;
  }

 private:
  int exponent_;
  int level_;
  std::vector<Buffer> sections_;
};

using TransformD = SectionedTransform<double>;

/// The four image symmetries whose single-quadrant transforms cover all line
/// orientations. The id <-> symmetry assignment is a library convention.
enum class Quadrant : std::uint8_t {
  identity = 0,        // no symmetry
  transpose = 1,       // i <-> j
  flip_cols = 2,       // i -> 2^n-1-i
  transpose_flip = 3,  // transpose, then column flip
};

inline constexpr Quadrant kQuadrants[] = {Quadrant::identity, Quadrant::transpose,
                                          Quadrant::flip_cols, Quadrant::transpose_flip};

inline Quadrant quadrant_from_id(int id) {
  if (id < 0 || id > 3) throw IndexError("quadrant id " + std::to_string(id) + " outside [0, 3]");
  return static_cast<Quadrant>(id);
}

inline int quadrant_id(Quadrant q) { return static_cast<int>(q); }

template <typename Scalar>
Image<Scalar> apply_quadrant_symmetry(const Image<Scalar>& image, Quadrant q) {
  // Storage is (row j, col i), so an image transpose is a storage transpose
  // and a column flip reverses every storage row.
  const auto& a = image.array();
  switch (q) {
    case Quadrant::identity:
      return image;
    case Quadrant::transpose:
      return Image<Scalar>(a.transpose());
    case Quadrant::flip_cols:
      return Image<Scalar>(a.rowwise().reverse());
    case Quadrant::transpose_flip:
      return Image<Scalar>(a.transpose().rowwise().reverse());
  }
  throw IndexError("invalid quadrant");
}

/// Undoes apply_quadrant_symmetry: identity, transpose and flip_cols are
/// involutions; transpose_flip inverts as column flip followed by transpose.
template <typename Scalar>
Image<Scalar> apply_quadrant_symmetry_inverse(const Image<Scalar>& image, Quadrant q) {
  const auto& a = image.array();
  switch (q) {
    case Quadrant::identity:
      return image;
    case Quadrant::transpose:
      return Image<Scalar>(a.transpose());
    case Quadrant::flip_cols:
      return Image<Scalar>(a.rowwise().reverse());
    case Quadrant::transpose_flip:
      return Image<Scalar>(a.rowwise().reverse().transpose());
  }
  throw IndexError("invalid quadrant");
}

}  // namespace adrt
