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

#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "adrt/forward.hpp"
#include "adrt/io.hpp"
#include "support.hpp"

using namespace adrt;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void spit(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), std::streamsize(bytes.size()));
}

}  // namespace

TEST_CASE("csv image roundtrip is the identity") {
  adrt_test::TempDir dir("adrt-io");
  const auto path = dir.path / "img.csv";

  SUBCASE("small literal image") {
    const auto img = image_from_values(1, {1.0, 2.0, 3.0, 4.0});
    write_image(img, path, ImageFormat::csv);
    const auto back = read_image(path);
    CHECK((back.array() == img.array()).all());
    // file order is top-down: first line is image row j=1
    const std::string text = slurp(path);
    CHECK(text == "3,4\n1,2\n");
  }
  SUBCASE("random doubles survive the text format") {
    DenseBuffer<double> values(4, 4);
    std::mt19937_64 gen(5);
    for (Eigen::Index j = 0; j < 4; ++j) {
      for (Eigen::Index i = 0; i < 4; ++i) {
        values(j, i) = (double(gen() >> 11) * 0x1.0p-53 - 0.5) * 1e6;
      }
    }
    const Image<double> img(values);
    write_image(img, path, ImageFormat::csv);
    CHECK((read_image(path).array() == img.array()).all());
  }
}

TEST_CASE("csv parse errors are descriptive") {
  adrt_test::TempDir dir("adrt-io");
  const auto path = dir.path / "img.csv";

  SUBCASE("bad field") {
    spit(path, "1,2\n3,x\n");
    CHECK_THROWS_AS(read_image(path), ParseError);
  }
  SUBCASE("ragged rows") {
    spit(path, "1,2\n3\n");
    CHECK_THROWS_AS(read_image(path), DimensionError);
  }
  SUBCASE("non-square") {
    spit(path, "1,2,3\n4,5,6\n7,8,9\n");
    CHECK_THROWS_AS(read_image(path), DimensionError);
  }
  SUBCASE("non-finite value") {
    spit(path, "1,2\n3,inf\n");
    CHECK_THROWS_AS(read_image(path), IngestError);
  }
}

TEST_CASE("pgm roundtrip on integer images") {
  adrt_test::TempDir dir("adrt-io");
  const auto path = dir.path / "img.pgm";

  SUBCASE("8-bit") {
    const auto img = adrt_test::random_int_image(3, 8, 8);
    write_image(img, path, ImageFormat::pgm);
    CHECK((read_image(path).array() == img.array()).all());
  }
  SUBCASE("16-bit") {
    const auto img = adrt_test::random_int_image(3, 9, 16);
    write_image(img, path, ImageFormat::pgm);
    CHECK((read_image(path).array() == img.array()).all());
  }
  SUBCASE("file rows are top-down") {
    const auto img = image_from_values(1, {1.0, 2.0, 3.0, 4.0});
    write_image(img, path, ImageFormat::pgm);
    const std::string bytes = slurp(path);
    // header "P5\n2 2\n255\n" then rows j=1, j=0
    CHECK(bytes.substr(bytes.size() - 4) == std::string("\x03\x04\x01\x02", 4));
  }
  SUBCASE("ascii P2 reads back") {
    spit(path, "P2\n# comment\n2 2\n255\n3 4\n1 2\n");
    const auto img = read_image(path);
    CHECK(img.at(0, 0) == 1.0);
    CHECK(img.at(1, 0) == 2.0);
    CHECK(img.at(0, 1) == 3.0);
    CHECK(img.at(1, 1) == 4.0);
  }
}

TEST_CASE("pgm rejects malformed input") {
  adrt_test::TempDir dir("adrt-io");
  const auto path = dir.path / "img.pgm";

  SUBCASE("non-power-of-two size") {
    spit(path, "P2\n3 3\n255\n1 2 3 4 5 6 7 8 9\n");
    CHECK_THROWS_AS(read_image(path), DimensionError);
  }
  SUBCASE("maxval out of range") {
    spit(path, "P2\n2 2\n70000\n1 2 3 4\n");
    CHECK_THROWS_AS(read_image(path), ParseError);
  }
  SUBCASE("truncated binary payload") {
    spit(path, std::string("P5\n2 2\n255\n\x01\x02", 13));
    CHECK_THROWS_AS(read_image(path), ParseError);
  }
  SUBCASE("sample exceeding maxval") {
    spit(path, "P2\n2 2\n10\n1 2 3 40\n");
    CHECK_THROWS_AS(read_image(path), ParseError);
  }
  SUBCASE("non-integer values refuse to serialize") {
    const auto img = image_from_values(1, {1.5, 2.0, 3.0, 4.0});
    CHECK_THROWS_AS(write_image(img, path, ImageFormat::pgm), ValidationError);
  }
}

TEST_CASE("raw image roundtrip and validation") {
  adrt_test::TempDir dir("adrt-io");
  const auto path = dir.path / "img.adri";

  SUBCASE("roundtrip") {
    const auto img = adrt_test::random_unit_image(4, 10);
    write_image(img, path, ImageFormat::raw);
    CHECK((read_image(path).array() == img.array()).all());
  }
  SUBCASE("truncated payload") {
    const auto img = adrt_test::random_unit_image(2, 11);
    write_image(img, path, ImageFormat::raw);
    std::string bytes = slurp(path);
    bytes.resize(bytes.size() - 8);
    spit(path, bytes);
    CHECK_THROWS_AS(read_image(path), ParseError);
  }
  SUBCASE("bad version") {
    const auto img = adrt_test::random_unit_image(2, 12);
    write_image(img, path, ImageFormat::raw);
    std::string bytes = slurp(path);
    bytes[4] = 2;
    spit(path, bytes);
    CHECK_THROWS_AS(read_image(path), ParseError);
  }
}

TEST_CASE("image format detection sniffs magic bytes") {
  adrt_test::TempDir dir("adrt-io");
  const auto img = image_from_values(1, {1.0, 2.0, 3.0, 4.0});

  const auto pgm = dir.path / "a.pgm";
  const auto csv = dir.path / "b.csv";
  const auto raw = dir.path / "c.adri";
  write_image(img, pgm, ImageFormat::auto_detect);
  write_image(img, csv, ImageFormat::auto_detect);
  write_image(img, raw, ImageFormat::auto_detect);
  CHECK((read_image(pgm).array() == img.array()).all());
  CHECK((read_image(csv).array() == img.array()).all());
  CHECK((read_image(raw).array() == img.array()).all());
  CHECK_THROWS_AS(write_image(img, dir.path / "d.unknown", ImageFormat::auto_detect), Error);
}

TEST_CASE("transform files roundtrip bitwise") {
  adrt_test::TempDir dir("adrt-io");
  const auto path = dir.path / "t.adrt";
  const auto img = adrt_test::random_unit_image(3, 21);
  const auto transform = adrt_single_quadrant(img);

  write_transform(transform, 2, path);
  const auto result = read_transform(path);
  CHECK(result.quadrant_tag == 2);
  CHECK(result.transform.exponent() == 3);
  CHECK(result.transform.level() == 3);
  CHECK(adrt_test::transforms_identical(result.transform, transform));
}

TEST_CASE("transform payload is laid out section, slope, offset") {
  adrt_test::TempDir dir("adrt-io");
  const auto path = dir.path / "t.adrt";
  const auto transform = adrt_single_quadrant(image_from_values(1, {1.0, 2.0, 3.0, 4.0}));
  write_transform(transform, kRawQuadrantTag, path);

  const std::string bytes = slurp(path);
  REQUIRE(bytes.size() == 12 + 6 * sizeof(double));
  const double* payload = reinterpret_cast<const double*>(bytes.data() + 12);
  const std::vector<double> expected = {4.0, 6.0, 0.0, 3.0, 5.0, 2.0};
  for (std::size_t k = 0; k < expected.size(); ++k) REQUIRE(payload[k] == expected[k]);
}

TEST_CASE("transform header validation") {
  adrt_test::TempDir dir("adrt-io");
  const auto path = dir.path / "t.adrt";
  const auto transform = adrt_single_quadrant(image_from_values(1, {1.0, 2.0, 3.0, 4.0}));
  write_transform(transform, 0, path);
  std::string bytes = slurp(path);

  SUBCASE("bad magic") {
    bytes[0] = 'X';
    spit(path, bytes);
    CHECK_THROWS_AS(read_transform(path), ParseError);
  }
  SUBCASE("unsupported version") {
    bytes[4] = 2;
    spit(path, bytes);
    CHECK_THROWS_AS(read_transform(path), ParseError);
  }
  SUBCASE("bad quadrant tag") {
    bytes[7] = 9;
    spit(path, bytes);
    CHECK_THROWS_AS(read_transform(path), ParseError);
  }
  SUBCASE("nonzero reserved bytes") {
    bytes[8] = 1;
    spit(path, bytes);
    CHECK_THROWS_AS(read_transform(path), ParseError);
  }
  SUBCASE("length mismatch") {
    bytes.resize(bytes.size() - 8);
    spit(path, bytes);
    CHECK_THROWS_AS(read_transform(path), ParseError);
  }
  SUBCASE("bad tag on write") {
    CHECK_THROWS_AS(write_transform(transform, 7, path), IndexError);
  }
}

TEST_CASE("nonzero padding is an error only in strict mode") {
  adrt_test::TempDir dir("adrt-io");
  const auto path = dir.path / "t.adrt";
  const auto transform = adrt_single_quadrant(image_from_values(1, {1.0, 2.0, 3.0, 4.0}));
  write_transform(transform, 0, path);

  std::string bytes = slurp(path);
  const double poison = 1.0;
  // slope-0 row has support 2, so its third value is padding
  std::memcpy(bytes.data() + 12 + 2 * sizeof(double), &poison, sizeof(double));
  spit(path, bytes);

  CHECK_THROWS_AS(read_transform(path, /*strict=*/true), ValidationError);
  const auto lax = read_transform(path, /*strict=*/false);
  CHECK(lax.transform.section(0)(0, 2) == 1.0);
}
