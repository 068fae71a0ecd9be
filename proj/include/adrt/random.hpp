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
#include <random>

#include "adrt/core.hpp"

// Seeded image generators shared by the CLI, the benchmarks and the tests.
// Pixels come straight from raw std::mt19937_64 draws (masked or scaled by
// hand, no distribution adapters), so a given seed yields the same images on
// every platform. Pixels fill in row-major order: row j outer, column i inner.

namespace adrt {

/// Integer-valued pixels in [0, 2^bits - 1], stored as Scalar.
template <typename Scalar = double>
Image<Scalar> random_integer_image(int exponent, std::mt19937_64& gen, int bits = 16) {
  if (bits < 1 || bits > 32) throw IndexError("pixel bit width outside [1, 32]");
  const Eigen::Index side = Eigen::Index{1} << exponent;
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  typename Image<Scalar>::Array values(side, side);
  for (Eigen::Index j = 0; j < side; ++j) {
    for (Eigen::Index i = 0; i < side; ++i) {
      values(j, i) = static_cast<Scalar>(gen() & mask);
    }
  }
  return Image<Scalar>(values);
}

/// Uniform [0, 1) pixels built as 53-bit mantissas.
template <typename Scalar = double>
Image<Scalar> random_unit_image(int exponent, std::mt19937_64& gen) {
  const Eigen::Index side = Eigen::Index{1} << exponent;
  typename Image<Scalar>::Array values(side, side);
  for (Eigen::Index j = 0; j < side; ++j) {
    for (Eigen::Index i = 0; i < side; ++i) {
      values(j, i) = static_cast<Scalar>(double(gen() >> 11) * 0x1.0p-53);
    }
  }
  return Image<Scalar>(values);
}

}  // namespace adrt
