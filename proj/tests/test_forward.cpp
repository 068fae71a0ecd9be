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

#include "doctest.h"

#include "adrt/digital_line.hpp"
#include "adrt/forward.hpp"
#include "support.hpp"

using namespace adrt;

TEST_CASE("adrt_init copies image rows into single-slope sections") {
  const auto img = image_from_values(1, {1.0, 2.0, 3.0, 4.0});
  const auto level0 = adrt_init(img);
  REQUIRE(level0.level() == 0);
  REQUIRE(level0.section_count() == 2);
  CHECK(level0.at(0, 0, 0) == 1.0);
  CHECK(level0.at(0, 1, 0) == 2.0);
  CHECK(level0.at(1, 0, 0) == 3.0);
  CHECK(level0.at(1, 1, 0) == 4.0);
}

TEST_CASE("adrt_init of the zero image is zero") {
  const auto zero = Image<double>(DenseBuffer<double>::Zero(4, 4));
  const auto level0 = adrt_init(zero);
  for (Eigen::Index l = 0; l < 4; ++l) REQUIRE((level0.section(l) == 0.0).all());
}

TEST_CASE("adrt_init matches the direct transform at level 0") {
  const auto img = adrt_test::random_unit_image(2, 41);
  CHECK(adrt_test::transforms_identical(adrt_init(img), adrt_direct_full(img, 0)));
}

TEST_CASE("merge_level reproduces the 2x2 walkthrough") {
  const auto img = image_from_values(1, {1.0, 2.0, 3.0, 4.0});
  const auto merged = merge_level(adrt_init(img));
  REQUIRE(merged.level() == 1);
  REQUIRE(merged.section_count() == 1);
  CHECK(merged.at(0, 0, 0) == 4.0);
  CHECK(merged.at(0, 1, 0) == 6.0);
  CHECK(merged.at(0, -1, 1) == 3.0);
  CHECK(merged.at(0, 0, 1) == 5.0);
  CHECK(merged.at(0, 1, 1) == 2.0);
}

TEST_CASE("merge_level of a zero stack is zero") {
  const auto zero = SectionedTransform<double>::zeros(3, 1);
  const auto merged = merge_level(zero);
  REQUIRE(merged.level() == 2);
  for (Eigen::Index l = 0; l < merged.section_count(); ++l) {
    REQUIRE((merged.section(l) == 0.0).all());
  }
}

TEST_CASE("merge_level matches the direct transform") {
  const auto img = adrt_test::random_unit_image(2, 43);
  const auto level2 = merge_level(merge_level(adrt_init(img)));
  CHECK(adrt_test::transform_max_abs_diff(level2, adrt_direct_full(img, 2)) <= 1e-12);
}

TEST_CASE("merge_level refuses a full-height stack") {
  const auto img = adrt_test::random_unit_image(1, 44);
  const auto full = adrt_single_quadrant(img);
  CHECK_THROWS_AS(merge_level(full), StructureError);
}

TEST_CASE("adrt_single_quadrant of the 2x2 example") {
  const auto transform = adrt_single_quadrant(image_from_values(1, {1.0, 2.0, 3.0, 4.0}));
  REQUIRE(transform.level() == 1);
  CHECK(transform.at(0, 0, 0) == 4.0);
  CHECK(transform.at(0, 1, 0) == 6.0);
  CHECK(transform.at(0, -1, 1) == 3.0);
  CHECK(transform.at(0, 0, 1) == 5.0);
  CHECK(transform.at(0, 1, 1) == 2.0);
}

TEST_CASE("delta image hits each slope exactly once") {
  const int n = 3;
  const Eigen::Index side = 8;
  for (Eigen::Index i0 : {0L, 3L, 7L}) {
    for (Eigen::Index j0 : {0L, 4L, 7L}) {
      DenseBuffer<double> values = DenseBuffer<double>::Zero(side, side);
      values(j0, i0) = 1.0;
      const auto transform = adrt_single_quadrant(Image<double>(values));
      for (Eigen::Index s = 0; s < side; ++s) {
        // the unique line through (i0, j0) at slope s
        std::int64_t hit = 0;
        int hits = 0;
        for (std::int64_t h = -s; h < side; ++h) {
          for (const Pixel& px : digital_line(n, h, s).pixels()) {
            if (px.col == i0 && px.row == j0) {
              hit = h;
              ++hits;
            }
          }
        }
        REQUIRE(hits == 1);
        for (std::int64_t h = -s; h < side; ++h) {
          REQUIRE(transform.at(0, h, s) == (h == hit ? 1.0 : 0.0));
        }
      }
    }
  }
}

TEST_CASE("fast forward equals the direct oracle") {
  SUBCASE("exact on integer images") {
    for (int n = 1; n <= 5; ++n) {
      const auto img = adrt_test::random_int_image(n, 300 + std::uint64_t(n));
      REQUIRE(adrt_test::transforms_identical(adrt_single_quadrant(img),
                                              adrt_direct_full(img, n)));
    }
  }
  SUBCASE("within 1e-12 on unit floats") {
    for (int n = 1; n <= 5; ++n) {
      const auto img = adrt_test::random_unit_image(n, 400 + std::uint64_t(n));
      REQUIRE(adrt_test::transform_max_abs_diff(adrt_single_quadrant(img),
                                                adrt_direct_full(img, n)) <= 1e-12);
    }
  }
}

TEST_CASE("forward transform is linear") {
  for (int n = 1; n <= 5; ++n) {
    const auto a = adrt_test::random_unit_image(n, 500 + std::uint64_t(n));
    const auto b = adrt_test::random_unit_image(n, 600 + std::uint64_t(n));
    const double alpha = 0.75, beta = -1.25;
    const auto combined =
        adrt_single_quadrant(Image<double>(alpha * a.array() + beta * b.array()));
    const auto ta = adrt_single_quadrant(a);
    const auto tb = adrt_single_quadrant(b);
    double worst = 0;
    for (Eigen::Index l = 0; l < combined.section_count(); ++l) {
      worst = std::max(worst, (combined.section(l) - alpha * ta.section(l) -
                               beta * tb.section(l))
                                  .abs()
                                  .maxCoeff());
    }
    REQUIRE(worst <= 1e-12);
  }
}

TEST_CASE("every slope conserves the image mass") {
  for (int n = 1; n <= 8; ++n) {
    const auto img = adrt_test::random_unit_image(n, 700 + std::uint64_t(n));
    const double mass = img.array().sum();
    const auto transform = adrt_single_quadrant(img);
    for (Eigen::Index s = 0; s < transform.slope_count(); ++s) {
      const double slope_mass = transform.section(0).row(s).sum();
      REQUIRE(std::abs(slope_mass - mass) <= 1e-10 * std::abs(mass));
    }
  }
}

TEST_CASE("forward output vanishes outside the support") {
  const auto img = adrt_test::random_unit_image(4, 800);
  const auto transform = adrt_single_quadrant(img);
  CHECK(transform.padding_is_zero());
  for (Eigen::Index s = 0; s < transform.slope_count(); ++s) {
    REQUIRE(transform.at(0, -s - 1, s) == 0.0);
    REQUIRE(transform.at(0, transform.side(), s) == 0.0);
  }
}

TEST_CASE("forward addition count matches the closed form") {
  for (int n = 0; n <= 8; ++n) {
    const auto img = adrt_test::random_int_image(n, 900 + std::uint64_t(n), 8);
    CostLedger ledger;
    (void)adrt_single_quadrant(img, &ledger);
    REQUIRE(ledger.additions() == forward_add_count(n));
    REQUIRE(ledger.subtractions() == 0);
  }
  CHECK(forward_add_count(1) == 5);  // s=0 needs 2 entries, s=1 needs 3
}

TEST_CASE("merge results do not depend on the worker count") {
  const auto img = adrt_test::random_unit_image(5, 1000);
  CostLedger serial_ledger, parallel_ledger;
  const auto serial = adrt_single_quadrant(img, &serial_ledger, 1);
  const auto parallel = adrt_single_quadrant(img, &parallel_ledger, 4);
  CHECK(adrt_test::transforms_identical(serial, parallel));
  CHECK(serial_ledger.additions() == parallel_ledger.additions());
}

TEST_CASE("adrt_full computes one transform per symmetry") {
  SUBCASE("transpose-symmetric image collapses quadrants 0 and 1") {
    DenseBuffer<double> values(4, 4);
    std::mt19937_64 gen(77);
    for (Eigen::Index j = 0; j < 4; ++j) {
      for (Eigen::Index i = j; i < 4; ++i) {
        values(j, i) = double(gen() & 0xFF);
        values(i, j) = values(j, i);
      }
    }
    const auto full = adrt_full(Image<double>(values));
    CHECK(adrt_test::transforms_identical(full.quadrant(Quadrant::identity),
                                          full.quadrant(Quadrant::transpose)));
  }

  SUBCASE("slope zero rows are column sums of the symmetry image") {
    const auto img = adrt_test::random_unit_image(3, 1100);
    const auto full = adrt_full(img);
    for (Quadrant q : kQuadrants) {
      const auto symmetric = apply_quadrant_symmetry(img, q);
      const auto& transform = full.quadrant(q);
      for (Eigen::Index i = 0; i < img.side(); ++i) {
        REQUIRE(transform.at(0, i, 0) ==
                doctest::Approx(symmetric.array().col(i).sum()).epsilon(1e-12));
      }
    }
  }

  SUBCASE("each quadrant matches the oracle on its symmetry image") {
    const auto img = adrt_test::random_int_image(3, 1200, 8);
    const auto full = adrt_full(img);
    for (Quadrant q : kQuadrants) {
      const auto symmetric = apply_quadrant_symmetry(img, q);
      REQUIRE(adrt_test::transforms_identical(full.quadrant(q),
                                              adrt_direct_full(symmetric, 3)));
    }
  }
}
