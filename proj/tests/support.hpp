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

#include <filesystem>
#include <random>
#include <string>

#include "adrt/core.hpp"
#include "adrt/random.hpp"

namespace adrt_test {

inline adrt::Image<double> random_int_image(int n, std::uint64_t seed, int bits = 16) {
  std::mt19937_64 gen(seed);
  return adrt::random_integer_image<double>(n, gen, bits);
}

inline adrt::Image<double> random_unit_image(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return adrt::random_unit_image<double>(n, gen);
}

inline bool transforms_identical(const adrt::SectionedTransform<double>& a,
                                 const adrt::SectionedTransform<double>& b) {
  if (a.exponent() != b.exponent() || a.level() != b.level()) return false;
  for (Eigen::Index l = 0; l < a.section_count(); ++l) {
    if (!(a.section(l) == b.section(l)).all()) return false;
  }
  return true;
}

inline double transform_max_abs_diff(const adrt::SectionedTransform<double>& a,
                                     const adrt::SectionedTransform<double>& b) {
  double worst = 0;
  for (Eigen::Index l = 0; l < a.section_count(); ++l) {
    worst = std::max(worst, (a.section(l) - b.section(l)).abs().maxCoeff());
  }
  return worst;
}

/// Random integer-valued stack with the proper support/padding layout.
inline adrt::SectionedTransform<double> random_stack(int n, int m, std::mt19937_64& gen) {
  using Buffer = adrt::SectionedTransform<double>::Buffer;
  const Eigen::Index slopes = Eigen::Index{1} << m;
  const Eigen::Index side = Eigen::Index{1} << n;
  std::vector<Buffer> sections;
  for (Eigen::Index l = 0; l < (Eigen::Index{1} << (n - m)); ++l) {
    Buffer b = Buffer::Zero(slopes, side + slopes - 1);
    for (Eigen::Index s = 0; s < slopes; ++s) {
      for (Eigen::Index p = 0; p < side + s; ++p) b(s, p) = double(gen() & 0xFFFF);
    }
    sections.push_back(std::move(b));
  }
  return adrt::SectionedTransform<double>(n, m, std::move(sections));
}

/// Scratch directory removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    std::mt19937_64 gen(std::random_device{}());
    path = std::filesystem::temp_directory_path() /
           (tag + "-" + std::to_string(gen() & 0xFFFFFF));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

}  // namespace adrt_test
