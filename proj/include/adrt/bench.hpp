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

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <new>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "adrt/cost.hpp"
#include "adrt/errors.hpp"
#include "adrt/forward.hpp"
#include "adrt/inverse.hpp"
#include "adrt/random.hpp"

namespace adrt {

/// One benchmarked size. Times are medians over `repetitions` runs with one
/// warm-up discarded; the ledger columns come from a counted inversion and
/// must equal `total_expected` exactly.
struct BenchRecord {
  int n = 0;
  std::uint64_t pixel_count = 0;  // N = 4^n
  double forward_seconds = 0;
  double inverse_seconds = 0;
  std::uint64_t additions = 0;
  std::uint64_t subtractions = 0;
  std::uint64_t total_expected = 0;
  int repetitions = 0;
  double forward_seconds_serial = 0;
  double inverse_seconds_serial = 0;
  double max_abs_err = 0;
};

struct BenchRun {
  std::vector<BenchRecord> records;
  /// Set when a size could not be completed (resource exhaustion); the CSV
  /// writer appends it as an explicit trailing marker row.
  std::optional<std::string> truncation;
};

namespace detail {

inline double median(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const std::size_t k = samples.size() / 2;
  if (samples.size() % 2 == 1) return samples[k];
  return 0.5 * (samples[k - 1] + samples[k]);
}

template <typename Fn>
double median_seconds(int repetitions, Fn&& fn) {
  std::vector<double> samples;
  samples.reserve(std::size_t(repetitions));
  for (int r = 0; r < repetitions; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    samples.push_back(std::chrono::duration<double>(stop - start).count());
  }
  return median(std::move(samples));
}

}  // namespace detail

/// Benchmarks seeded random integer images for n in [min_n, max_n], in both
/// default-parallel and single-worker modes. Ledger totals must agree across
/// modes and with the closed form; roundtrips are also checked for exactness.
inline BenchRun run_bench(int min_n, int max_n, int repetitions, std::uint64_t seed) {
  if (min_n < 1 || min_n > max_n || max_n > 12) {
    throw IndexError("bench range must satisfy 1 <= min_n <= max_n <= 12");
  }
  if (repetitions < 3) {
    throw IndexError("bench needs at least 3 repetitions for a median");
  }
  std::mt19937_64 gen(seed);
  BenchRun run;
  for (int n = min_n; n <= max_n; ++n) {
    try {
      const Image<double> image = random_integer_image<double>(n, gen);

      // Counted (untimed) runs; these also provide the roundtrip check.
      CostLedger parallel_ledger;
      const SectionedTransform<double> transform = adrt_single_quadrant(image);
      const Image<double> recon = iadrt(transform, &parallel_ledger);
      CostLedger serial_ledger;
      (void)iadrt(transform, &serial_ledger, 1);
      if (serial_ledger.additions() != parallel_ledger.additions() ||
          serial_ledger.subtractions() != parallel_ledger.subtractions()) {
        throw ValidationError("ledger totals differ between worker modes at n=" +
                              std::to_string(n));
      }

      BenchRecord record;
      record.n = n;
      record.pixel_count = std::uint64_t{1} << (2 * n);
      record.additions = parallel_ledger.additions();
      record.subtractions = parallel_ledger.subtractions();
      record.total_expected = inverse_op_count(n);
      record.repetitions = repetitions;
      record.max_abs_err = (recon.array() - image.array()).abs().maxCoeff();

      record.forward_seconds =
          detail::median_seconds(repetitions, [&] { (void)adrt_single_quadrant(image); });
      record.inverse_seconds =
          detail::median_seconds(repetitions, [&] { (void)iadrt(transform); });
      record.forward_seconds_serial =
          detail::median_seconds(repetitions, [&] { (void)adrt_single_quadrant(image, nullptr, 1); });
      record.inverse_seconds_serial =
          detail::median_seconds(repetitions, [&] { (void)iadrt(transform, nullptr, 1); });
      run.records.push_back(record);
    } catch (const std::bad_alloc&) {
      run.truncation = "truncated at n=" + std::to_string(n) + ": allocation failed";
      break;
    } catch (const std::length_error&) {
      run.truncation = "truncated at n=" + std::to_string(n) + ": allocation failed";
      break;
    }
  }
  return run;
}

/// Header plus one row per record, columns in BenchRecord field order; a
/// truncated run ends with a `# truncated ...` marker row.
inline void write_bench_csv(const BenchRun& run, std::ostream& out) {
  out << "n,N,forward_seconds,inverse_seconds,additions,subtractions,total_expected,"
         "repetitions,forward_seconds_serial,inverse_seconds_serial,max_abs_err\n";
  char buf[256];
  for (const BenchRecord& r : run.records) {
    std::snprintf(buf, sizeof(buf), "%d,%llu,%.9g,%.9g,%llu,%llu,%llu,%d,%.9g,%.9g,%.17g\n", r.n,
                  (unsigned long long)r.pixel_count, r.forward_seconds, r.inverse_seconds,
                  (unsigned long long)r.additions, (unsigned long long)r.subtractions,
                  (unsigned long long)r.total_expected, r.repetitions, r.forward_seconds_serial,
                  r.inverse_seconds_serial, r.max_abs_err);
    out << buf;
  }
  if (run.truncation) out << "# " << *run.truncation << "\n";
}

struct ScalingFit {
  double forward_slope = 0;
  double inverse_slope = 0;
};

/// Least-squares slope of log(time) against log(N), separately for the
/// forward and inverse columns. Needs at least 4 records spanning at least
/// 3 octaves of N.
inline ScalingFit fit_scaling(const std::vector<BenchRecord>& records) {
  if (records.size() < 4) {
    throw AnalysisError("scaling fit needs at least 4 records, got " +
                        std::to_string(records.size()));
  }
  std::uint64_t min_pixels = records.front().pixel_count;
  std::uint64_t max_pixels = records.front().pixel_count;
  for (const BenchRecord& r : records) {
    min_pixels = std::min(min_pixels, r.pixel_count);
    max_pixels = std::max(max_pixels, r.pixel_count);
  }
  if (min_pixels == 0 || max_pixels / min_pixels < 8) {
    throw AnalysisError("scaling fit needs records spanning at least 3 octaves of N");
  }

  const Eigen::Index count = Eigen::Index(records.size());
  Eigen::ArrayXd log_n(count), log_fwd(count), log_inv(count);
  for (Eigen::Index k = 0; k < count; ++k) {
    const BenchRecord& r = records[std::size_t(k)];
    if (r.forward_seconds <= 0 || r.inverse_seconds <= 0) {
      throw AnalysisError("scaling fit needs positive times");
    }
    log_n(k) = std::log(double(r.pixel_count));
    log_fwd(k) = std::log(r.forward_seconds);
    log_inv(k) = std::log(r.inverse_seconds);
  }
  const Eigen::ArrayXd x = log_n - log_n.mean();
  const double denom = (x * x).sum();
  ScalingFit fit;
  fit.forward_slope = (x * (log_fwd - log_fwd.mean())).sum() / denom;
  fit.inverse_slope = (x * (log_inv - log_inv.mean())).sum() / denom;
  return fit;
}

}  // namespace adrt
