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
#include <vector>

#include "adrt/errors.hpp"

namespace adrt {

/// Exact count of additions and subtractions performed by a transform run,
/// broken down by recursion level. Counts only grow.
class CostLedger {
 public:
  struct LevelOps {
    std::uint64_t additions = 0;
    std::uint64_t subtractions = 0;
  };

  void record(int level, std::uint64_t additions, std::uint64_t subtractions) {
    if (level < 0) throw IndexError("negative ledger level");
    if (levels_.size() <= std::size_t(level)) levels_.resize(std::size_t(level) + 1);
    levels_[std::size_t(level)].additions += additions;
    levels_[std::size_t(level)].subtractions += subtractions;
    additions_ += additions;
    subtractions_ += subtractions;
  }

  void merge(const CostLedger& other) {
    for (std::size_t level = 0; level < other.levels_.size(); ++level) {
      record(static_cast<int>(level), other.levels_[level].additions,
             other.levels_[level].subtractions);
    }
  }

  std::uint64_t additions() const { return additions_; }
  std::uint64_t subtractions() const { return subtractions_; }
  std::uint64_t total() const { return additions_ + subtractions_; }

  /// Indexed by level; levels never touched stay zero.
  const std::vector<LevelOps>& levels() const { return levels_; }

 private:
  std::vector<LevelOps> levels_;
  std::uint64_t additions_ = 0;
  std::uint64_t subtractions_ = 0;
};

/// Additions performed by the fast forward transform of a 2^n x 2^n image:
/// one per produced support entry, sum over levels m = 1..n of
/// 2^{n-m} * sum_{s=0}^{2^m-1} (2^n + s).
inline std::uint64_t forward_add_count(int n) {
  if (n < 0) throw IndexError("negative exponent");
  const std::uint64_t side = std::uint64_t{1} << n;
  std::uint64_t total = 0;
  for (int m = 1; m <= n; ++m) {
    std::uint64_t per_section = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) per_section += side + s;
    total += (std::uint64_t{1} << (n - m)) * per_section;
  }
  return total;
}

/// Operations (additions plus subtractions) performed by a full inversion:
/// each level-m split produces 2 target sections per upper section, each
/// costing sum_{s=0}^{2^{m-1}-1} (2^n + s) subtractions for the differences
/// and the same number of additions for the prefix sweeps.
inline std::uint64_t inverse_op_count(int n) {
  if (n < 0) throw IndexError("negative exponent");
  const std::uint64_t side = std::uint64_t{1} << n;
  std::uint64_t total = 0;
  for (int m = 1; m <= n; ++m) {
    std::uint64_t per_target = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << (m - 1)); ++s) per_target += side + s;
    total += (std::uint64_t{1} << (n - m + 1)) * 2 * per_target;
  }
  return total;
}

/// Coarse analytic upper bound on the inversion cost: 2M operations per
/// section split at level m, with M = 2^{m-1}(2^{n+1} + 2^m + 1) the
/// one-based count of support entries of a level-m section.
inline std::uint64_t inverse_op_bound(int n) {
  if (n < 0) throw IndexError("negative exponent");
  std::uint64_t total = 0;
  for (int m = 1; m <= n; ++m) {
    const std::uint64_t entry_count =
        (std::uint64_t{1} << (m - 1)) *
        ((std::uint64_t{1} << (n + 1)) + (std::uint64_t{1} << m) + 1);
    total += (std::uint64_t{1} << (n - m)) * 2 * entry_count;
  }
  return total;
}

}  // namespace adrt
