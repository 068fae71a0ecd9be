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

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "adrt/core.hpp"
#include "adrt/errors.hpp"

// File formats.
//
// Images (all top-to-bottom file order; the first stored row is image row
// j = 2^n - 1, since rows count upward in transform coordinates):
//   PGM   P2 or P5, maxval <= 65535, 16-bit P5 samples big-endian.
//   CSV   one image row per line, values printed with 17 significant digits
//         so write-then-read is the identity.
//   raw   8-byte header: magic "ADRI", version 1, n, 2 zero bytes; then
//         4^n little-endian float64.
//
// Transforms:
//   12-byte header: magic "ADRT", version 1, n, m, quadrant (0-3, or 255 for
//   raw/no symmetry), 4 zero bytes; payload little-endian float64 in
//   (section l outer, slope s middle, physical offset p inner) order, each
//   section exactly 2^m * (2^n + 2^m - 1) values including padding zeros.

namespace adrt {

static_assert(std::endian::native == std::endian::little,
              "file I/O assumes a little-endian host");

enum class ImageFormat { auto_detect, pgm, csv, raw };

namespace detail {

inline constexpr int kMaxFileExponent = 24;  // header sanity bound

[[noreturn]] inline void parse_fail(const std::filesystem::path& path, const std::string& what) {
  throw ParseError(path.string() + ": " + what);
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

// Whitespace- and comment-aware token scanner for PGM headers.
inline std::string pnm_token(std::istream& in) {
  std::string token;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      if (!token.empty()) break;
    } else {
      token.push_back(static_cast<char>(c));
    }
    if (!token.empty() && (in.peek() == EOF || std::isspace(in.peek()) || in.peek() == '#')) {
      in.get();
      break;
    }
    c = in.get();
  }
  return token;
}

inline std::int64_t parse_int_token(const std::filesystem::path& path, std::istream& in,
                                    const char* what) {
  const auto offset = in.tellg();
  const std::string token = pnm_token(in);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    parse_fail(path, std::string("bad ") + what + " token '" + token + "' (offset " +
                         std::to_string(static_cast<long long>(offset)) + ")");
  }
  return value;
}

inline void require_pow2_square(const std::filesystem::path& path, std::int64_t w,
                                std::int64_t h) {
  if (w != h || w <= 0 || !is_pow2(static_cast<std::uint64_t>(w))) {
    throw DimensionError(path.string() + ": image must be square with a power-of-two side, got " +
                         std::to_string(w) + "x" + std::to_string(h));
  }
}

inline void format_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Images

inline Image<double> read_image_pgm(const std::filesystem::path& path) {
  std::ifstream in = detail::open_input(path);
  char magic[2] = {};
  in.read(magic, 2);
  const bool binary = magic[0] == 'P' && magic[1] == '5';
  if (!binary && !(magic[0] == 'P' && magic[1] == '2')) {
    detail::parse_fail(path, "expected PGM magic P2 or P5 (offset 0)");
  }
  const std::int64_t width = detail::parse_int_token(path, in, "width");
  const std::int64_t height = detail::parse_int_token(path, in, "height");
  const std::int64_t maxval = detail::parse_int_token(path, in, "maxval");
  detail::require_pow2_square(path, width, height);
  if (maxval < 1 || maxval > 65535) {
    detail::parse_fail(path, "maxval " + std::to_string(maxval) + " outside [1, 65535]");
  }

  DenseBuffer<double> values(height, width);
  if (binary) {
    const int bytes_per_sample = maxval < 256 ? 1 : 2;
    const std::int64_t data_start = in.tellg();
    std::vector<unsigned char> data(std::size_t(width * height * bytes_per_sample));
    in.read(reinterpret_cast<char*>(data.data()), std::streamsize(data.size()));
    if (std::size_t(in.gcount()) != data.size()) {
      detail::parse_fail(path, "truncated P5 payload: expected " + std::to_string(data.size()) +
                                   " bytes at offset " + std::to_string(data_start) + ", got " +
                                   std::to_string(in.gcount()));
    }
    for (std::int64_t idx = 0; idx < width * height; ++idx) {
      std::int64_t sample;
      if (bytes_per_sample == 1) {
        sample = data[std::size_t(idx)];
      } else {
        sample = std::int64_t(data[std::size_t(2 * idx)]) << 8 | data[std::size_t(2 * idx + 1)];
      }
      if (sample > maxval) {
        detail::parse_fail(path, "sample " + std::to_string(sample) + " exceeds maxval (offset " +
                                     std::to_string(data_start + idx * bytes_per_sample) + ")");
      }
      const std::int64_t file_row = idx / width;
      values(height - 1 - file_row, idx % width) = double(sample);
    }
  } else {
    for (std::int64_t idx = 0; idx < width * height; ++idx) {
      const std::int64_t sample = detail::parse_int_token(path, in, "sample");
      if (sample < 0 || sample > maxval) {
        detail::parse_fail(path, "sample " + std::to_string(sample) + " outside [0, maxval]");
      }
      const std::int64_t file_row = idx / width;
      values(height - 1 - file_row, idx % width) = double(sample);
    }
  }
  return Image<double>(values);
}

inline void write_image_pgm(const Image<double>& image, const std::filesystem::path& path) {
  const auto& a = image.array();
  double maxv = 0;
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
      const double v = a(j, i);
      if (v != std::floor(v) || v < 0 || v > 65535) {
        throw ValidationError("PGM output requires integer values in [0, 65535], got " +
                              std::to_string(v));
      }
      maxv = std::max(maxv, v);
    }
  }
  const std::int64_t maxval = maxv <= 255 ? 255 : 65535;
  std::ofstream out = detail::open_output(path);
  out << "P5\n" << image.side() << " " << image.side() << "\n" << maxval << "\n";
  const Eigen::Index side = image.side();
  std::vector<unsigned char> row(std::size_t(side) * (maxval > 255 ? 2 : 1));
  for (Eigen::Index file_row = 0; file_row < side; ++file_row) {
    const Eigen::Index j = side - 1 - file_row;
    for (Eigen::Index i = 0; i < side; ++i) {
      const auto v = std::uint16_t(a(j, i));
      if (maxval > 255) {
        row[std::size_t(2 * i)] = (unsigned char)(v >> 8);
        row[std::size_t(2 * i + 1)] = (unsigned char)(v & 0xFF);
      } else {
        row[std::size_t(i)] = (unsigned char)v;
      }
    }
    out.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size()));
  }
  if (!out) throw Error("failed writing " + path.string());
}

inline Image<double> read_image_csv(const std::filesystem::path& path) {
  std::ifstream in = detail::open_input(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() && in.peek() == EOF) break;  // trailing newline
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) comma = line.size();
      const char* begin = line.data() + pos;
      const char* end = line.data() + comma;
      while (begin < end && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
      while (end > begin && std::isspace(static_cast<unsigned char>(end[-1]))) --end;
      double value = 0;
      const auto [ptr, ec] = std::from_chars(begin, end, value);
      if (begin == end || ec != std::errc{} || ptr != end) {
        detail::parse_fail(path, "bad numeric field on line " + std::to_string(line_no));
      }
      if (!std::isfinite(value)) {
        throw IngestError(path.string() + ": non-finite value on line " + std::to_string(line_no));
      }
      row.push_back(value);
      pos = comma + 1;
      if (comma == line.size()) break;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) detail::parse_fail(path, "empty CSV image");
  const std::int64_t side = std::int64_t(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (std::int64_t(rows[r].size()) != side) {
      throw DimensionError(path.string() + ": row " + std::to_string(r + 1) + " has " +
                           std::to_string(rows[r].size()) + " fields, expected " +
                           std::to_string(side));
    }
  }
  detail::require_pow2_square(path, side, side);
  DenseBuffer<double> values(side, side);
  for (std::int64_t file_row = 0; file_row < side; ++file_row) {
    for (std::int64_t i = 0; i < side; ++i) {
      values(side - 1 - file_row, i) = rows[std::size_t(file_row)][std::size_t(i)];
    }
  }
  return Image<double>(values);
}

inline void write_image_csv(const Image<double>& image, const std::filesystem::path& path) {
  std::ofstream out = detail::open_output(path);
  const auto& a = image.array();
  const Eigen::Index side = image.side();
  std::string line;
  for (Eigen::Index file_row = 0; file_row < side; ++file_row) {
    const Eigen::Index j = side - 1 - file_row;
    line.clear();
    for (Eigen::Index i = 0; i < side; ++i) {
      if (i > 0) line += ',';
      detail::format_double(line, a(j, i));
    }
    line += '\n';
    out << line;
  }
  if (!out) throw Error("failed writing " + path.string());
}

inline Image<double> read_image_raw(const std::filesystem::path& path) {
  std::ifstream in = detail::open_input(path);
  unsigned char header[8] = {};
  in.read(reinterpret_cast<char*>(header), 8);
  if (in.gcount() != 8 || header[0] != 'A' || header[1] != 'D' || header[2] != 'R' ||
      header[3] != 'I') {
    detail::parse_fail(path, "bad raw image magic (offset 0)");
  }
  if (header[4] != 1) {
    detail::parse_fail(path, "unsupported raw image version " + std::to_string(header[4]) +
                                 " (offset 4)");
  }
  const int n = header[5];
  if (n > detail::kMaxFileExponent) {
    detail::parse_fail(path, "implausible exponent " + std::to_string(n) + " (offset 5)");
  }
  if (header[6] != 0 || header[7] != 0) {
    detail::parse_fail(path, "nonzero reserved bytes (offset 6)");
  }
  const std::uint64_t side = std::uint64_t{1} << n;
  const std::uint64_t expected = 8 + side * side * sizeof(double);
  const std::uint64_t actual = std::filesystem::file_size(path);
  if (actual != expected) {
    detail::parse_fail(path, "payload length mismatch: header implies " +
                                 std::to_string(expected) + " bytes, file has " +
                                 std::to_string(actual));
  }
  DenseBuffer<double> values(static_cast<Eigen::Index>(side), static_cast<Eigen::Index>(side));
  std::vector<double> row(side);
  for (std::uint64_t file_row = 0; file_row < side; ++file_row) {
    in.read(reinterpret_cast<char*>(row.data()), std::streamsize(side * sizeof(double)));
    for (std::uint64_t i = 0; i < side; ++i) {
      values(Eigen::Index(side - 1 - file_row), Eigen::Index(i)) = row[i];
    }
  }
  if (!values.allFinite()) throw IngestError(path.string() + ": non-finite value in payload");
  return Image<double>(values);
}

inline void write_image_raw(const Image<double>& image, const std::filesystem::path& path) {
  std::ofstream out = detail::open_output(path);
  const unsigned char header[8] = {'A', 'D', 'R', 'I', 1, (unsigned char)image.exponent(), 0, 0};
  out.write(reinterpret_cast<const char*>(header), 8);
  const auto& a = image.array();
  const Eigen::Index side = image.side();
  std::vector<double> row(static_cast<std::size_t>(side));
  for (Eigen::Index file_row = 0; file_row < side; ++file_row) {
    const Eigen::Index j = side - 1 - file_row;
    for (Eigen::Index i = 0; i < side; ++i) row[std::size_t(i)] = a(j, i);
    out.write(reinterpret_cast<const char*>(row.data()),
              std::streamsize(row.size() * sizeof(double)));
  }
  if (!out) throw Error("failed writing " + path.string());
}

inline ImageFormat sniff_image_format(const std::filesystem::path& path) {
  std::ifstream in = detail::open_input(path);
  char head[4] = {};
  in.read(head, 4);
  if (in.gcount() >= 2 && head[0] == 'P' && (head[1] == '2' || head[1] == '5')) {
    return ImageFormat::pgm;
  }
  if (in.gcount() == 4 && head[0] == 'A' && head[1] == 'D' && head[2] == 'R' && head[3] == 'I') {
    return ImageFormat::raw;
  }
  return ImageFormat::csv;
}

inline ImageFormat image_format_for_path(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".pgm") return ImageFormat::pgm;
  if (ext == ".csv") return ImageFormat::csv;
  if (ext == ".adri" || ext == ".raw" || ext == ".bin") return ImageFormat::raw;
  throw Error("cannot infer image format from extension '" + ext + "' of " + path.string() +
              "; pass the format explicitly");
}

inline Image<double> read_image(const std::filesystem::path& path,
                                ImageFormat format = ImageFormat::auto_detect) {
  if (format == ImageFormat::auto_detect) format = sniff_image_format(path);
  switch (format) {
    case ImageFormat::pgm:
      return read_image_pgm(path);
    case ImageFormat::csv:
      return read_image_csv(path);
    case ImageFormat::raw:
      return read_image_raw(path);
    default:
      throw Error("unresolved image format");
  }
}

inline void write_image(const Image<double>& image, const std::filesystem::path& path,
                        ImageFormat format = ImageFormat::auto_detect) {
  if (format == ImageFormat::auto_detect) format = image_format_for_path(path);
  switch (format) {
    case ImageFormat::pgm:
      write_image_pgm(image, path);
      return;
    case ImageFormat::csv:
      write_image_csv(image, path);
      return;
    case ImageFormat::raw:
      write_image_raw(image, path);
      return;
    default:
      throw Error("unresolved image format");
  }
}

// ---------------------------------------------------------------------------
// Transforms

inline constexpr std::uint8_t kRawQuadrantTag = 255;

struct ReadTransformResult {
  SectionedTransform<double> transform;
  std::uint8_t quadrant_tag;
};

inline void write_transform(const SectionedTransform<double>& transform,
                            std::uint8_t quadrant_tag, const std::filesystem::path& path) {
  if (quadrant_tag > 3 && quadrant_tag != kRawQuadrantTag) {
    throw IndexError("quadrant tag must be 0-3 or 255, got " + std::to_string(quadrant_tag));
  }
  std::ofstream out = detail::open_output(path);
  const unsigned char header[12] = {'A', 'D',  'R',
                                    'T', 1,    (unsigned char)transform.exponent(),
                                    (unsigned char)transform.level(), quadrant_tag,
                                    0,   0,    0,
                                    0};
  out.write(reinterpret_cast<const char*>(header), 12);
  for (const auto& section : transform.sections()) {
    out.write(reinterpret_cast<const char*>(section.data()),
              std::streamsize(std::size_t(section.size()) * sizeof(double)));
  }
  if (!out) throw Error("failed writing " + path.string());
}

inline ReadTransformResult read_transform(const std::filesystem::path& path, bool strict = false) {
  std::ifstream in = detail::open_input(path);
  unsigned char header[12] = {};
  in.read(reinterpret_cast<char*>(header), 12);
  if (in.gcount() != 12 || header[0] != 'A' || header[1] != 'D' || header[2] != 'R' ||
      header[3] != 'T') {
    detail::parse_fail(path, "bad transform magic (offset 0)");
  }
  if (header[4] != 1) {
    detail::parse_fail(path, "unsupported transform version " + std::to_string(header[4]) +
                                 " (offset 4)");
  }
  const int n = header[5];
  const int m = header[6];
  const std::uint8_t quadrant_tag = header[7];
  if (n > detail::kMaxFileExponent || m > n) {
    detail::parse_fail(path, "implausible levels n=" + std::to_string(n) + " m=" +
                                 std::to_string(m) + " (offset 5)");
  }
  if (quadrant_tag > 3 && quadrant_tag != kRawQuadrantTag) {
    detail::parse_fail(path, "bad quadrant tag " + std::to_string(quadrant_tag) + " (offset 7)");
  }
  if (header[8] != 0 || header[9] != 0 || header[10] != 0 || header[11] != 0) {
    detail::parse_fail(path, "nonzero reserved bytes (offset 8)");
  }

  const std::uint64_t slopes = std::uint64_t{1} << m;
  const std::uint64_t width = (std::uint64_t{1} << n) + slopes - 1;
  const std::uint64_t sections = std::uint64_t{1} << (n - m);
  const std::uint64_t expected = 12 + sections * slopes * width * sizeof(double);
  const std::uint64_t actual = std::filesystem::file_size(path);
  if (actual != expected) {
    detail::parse_fail(path, "payload length mismatch: header implies " +
                                 std::to_string(expected) + " bytes, file has " +
                                 std::to_string(actual));
  }

  using Buffer = SectionedTransform<double>::Buffer;
  std::vector<Buffer> buffers;
  buffers.reserve(std::size_t(sections));
  for (std::uint64_t l = 0; l < sections; ++l) {
    Buffer b(static_cast<Eigen::Index>(slopes), static_cast<Eigen::Index>(width));
    in.read(reinterpret_cast<char*>(b.data()), std::streamsize(slopes * width * sizeof(double)));
    if (!b.allFinite()) {
      throw IngestError(path.string() + ": non-finite value in section " + std::to_string(l));
    }
    buffers.push_back(std::move(b));
  }
  SectionedTransform<double> transform(n, m, std::move(buffers));
  if (!transform.padding_is_zero()) {
    if (strict) {
      throw ValidationError(path.string() + ": nonzero padding entries");
    }
    std::cerr << "warning: " << path.string() << " has nonzero padding entries\n";
  }
  return ReadTransformResult{std::move(transform), quadrant_tag};
}

}  // namespace adrt
