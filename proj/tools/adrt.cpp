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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "adrt/adrt.hpp"

// Exit codes: 0 success, 1 validation failure (oracle mismatch, strict-mode
// padding, roundtrip mismatch), 2 usage errors and malformed inputs.

namespace {

adrt::ImageFormat parse_format(const std::string& name) {
  if (name == "auto") return adrt::ImageFormat::auto_detect;
  if (name == "pgm") return adrt::ImageFormat::pgm;
  if (name == "csv") return adrt::ImageFormat::csv;
  if (name == "raw") return adrt::ImageFormat::raw;
  throw adrt::Error("unknown image format '" + name + "'");
}

std::filesystem::path quadrant_path(const std::filesystem::path& base, int id) {
  std::filesystem::path out = base;
  const std::string ext = out.extension().string();
  out.replace_extension();
  out += ".q" + std::to_string(id) + ext;
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct ForwardArgs {
  std::string input, output;
  std::string quadrant = "0";
  std::string format = "auto";
};

int run_forward(const ForwardArgs& args) {
  const adrt::Image<double> image = adrt::read_image(args.input, parse_format(args.format));
  const auto write_one = [&](adrt::Quadrant q, const std::filesystem::path& path) {
    const auto symmetric = adrt::apply_quadrant_symmetry(image, q);
    adrt::write_transform(adrt::adrt_single_quadrant(symmetric),
                          std::uint8_t(adrt::quadrant_id(q)), path);
    std::cout << "wrote " << path.string() << " (n=" << image.exponent()
              << ", quadrant=" << adrt::quadrant_id(q) << ")\n";
  };
  if (args.quadrant == "all") {
    for (adrt::Quadrant q : adrt::kQuadrants) {
      write_one(q, quadrant_path(args.output, adrt::quadrant_id(q)));
    }
  } else {
    write_one(adrt::quadrant_from_id(std::stoi(args.quadrant)), args.output);
  }
  return 0;
}

struct InverseArgs {
  std::string input, output;
  std::string format = "auto";
  bool strict = false;
};

int run_inverse(const InverseArgs& args) {
  const auto result = adrt::read_transform(args.input, args.strict);
  adrt::Image<double> image = adrt::iadrt(result.transform);
  if (result.quadrant_tag != adrt::kRawQuadrantTag) {
    image = adrt::apply_quadrant_symmetry_inverse(
        image, adrt::quadrant_from_id(result.quadrant_tag));
  }
  adrt::write_image(image, args.output, parse_format(args.format));
  std::cout << "wrote " << args.output << " (n=" << image.exponent() << ")\n";
  return 0;
}

struct RoundtripArgs {
  std::string input, report;
  std::string format = "auto";
};

int run_roundtrip(const RoundtripArgs& args) {
  const adrt::Image<double> image = adrt::read_image(args.input, parse_format(args.format));

  const auto forward_start = std::chrono::steady_clock::now();
  const auto transform = adrt::adrt_single_quadrant(image);
  const double forward_seconds = seconds_since(forward_start);

  adrt::CostLedger ledger;
  const auto inverse_start = std::chrono::steady_clock::now();
  const adrt::Image<double> recon = adrt::iadrt(transform, &ledger);
  const double inverse_seconds = seconds_since(inverse_start);

  const double max_abs_err = (recon.array() - image.array()).abs().maxCoeff();

  nlohmann::ordered_json report;
  report["n"] = image.exponent();
  report["max_abs_err"] = max_abs_err;
  report["additions"] = ledger.additions();
  report["subtractions"] = ledger.subtractions();
  report["total_expected"] = adrt::inverse_op_count(image.exponent());
  report["forward_seconds"] = forward_seconds;
  report["inverse_seconds"] = inverse_seconds;

  std::ofstream out(args.report, std::ios::trunc);
  if (!out) throw adrt::Error("cannot open " + args.report + " for writing");
  out << report.dump(2) << "\n";

  std::cout << "n=" << image.exponent() << " max_abs_err=" << max_abs_err
            << " ops=" << ledger.total() << "/" << adrt::inverse_op_count(image.exponent())
            << " forward=" << forward_seconds << "s inverse=" << inverse_seconds << "s\n";
  return 0;
}

struct OracleArgs {
  int n = 3;
  int trials = 10;
  std::uint64_t seed = 1;
};

int run_oracle(const OracleArgs& args) {
  std::mt19937_64 gen(args.seed);
  for (int trial = 0; trial < args.trials; ++trial) {
    const auto image = adrt::random_integer_image<double>(args.n, gen);
    const auto fast = adrt::adrt_single_quadrant(image);
    const auto direct = adrt::adrt_direct_full(image, args.n);
    for (Eigen::Index s = 0; s < fast.slope_count(); ++s) {
      for (Eigen::Index h = -s; h < fast.side(); ++h) {
        const double got = fast.at(0, h, s);
        const double want = direct.at(0, h, s);
        if (got != want) {
          std::cerr << "oracle mismatch: trial=" << trial << " s=" << s << " h=" << h
                    << " fast=" << got << " direct=" << want << "\n";
          return 1;
        }
      }
    }
  }
  std::cout << "oracle: " << args.trials << " trials at n=" << args.n << " OK\n";
  return 0;
}

struct LinesArgs {
  int m = 0;
  std::int64_t h = 0;
  std::int64_t s = 0;
  std::string output;
};

int run_lines(const LinesArgs& args) {
  const adrt::DigitalLine line = adrt::digital_line(args.m, args.h, args.s);
  std::string csv;
  for (const adrt::Pixel& px : line.pixels()) {
    csv += std::to_string(px.col) + "," + std::to_string(px.row) + "\n";
  }
  if (args.output.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(args.output, std::ios::trunc);
    if (!out) throw adrt::Error("cannot open " + args.output + " for writing");
    out << csv;
  }
  return 0;
}

struct BenchArgs {
  int min_n = 1;
  int max_n = 6;
  int reps = 5;
  std::uint64_t seed = 1;
  std::string output;
};

int run_bench_cmd(const BenchArgs& args) {
  const adrt::BenchRun run = adrt::run_bench(args.min_n, args.max_n, args.reps, args.seed);
  if (args.output.empty()) {
    adrt::write_bench_csv(run, std::cout);
  } else {
    std::ofstream out(args.output, std::ios::trunc);
    if (!out) throw adrt::Error("cannot open " + args.output + " for writing");
    adrt::write_bench_csv(run, out);
  }
  try {
    const adrt::ScalingFit fit = adrt::fit_scaling(run.records);
    std::cerr << "scaling: forward slope=" << fit.forward_slope
              << " inverse slope=" << fit.inverse_slope << "\n";
  } catch (const adrt::AnalysisError&) {
    // not enough span for a fit; the CSV alone is the result
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approximate discrete Radon transform of 2^n x 2^n images and its exact inverse"};
  app.require_subcommand(1);

  ForwardArgs forward_args;
  auto* forward = app.add_subcommand("forward", "transform an image, one quadrant or all four");
  forward->add_option("--input", forward_args.input, "input image (pgm/csv/raw)")->required();
  forward->add_option("--output", forward_args.output, "output transform file")->required();
  forward->add_option("--quadrant", forward_args.quadrant, "0|1|2|3|all")
      ->check(CLI::IsMember({"0", "1", "2", "3", "all"}));
  forward->add_option("--format", forward_args.format, "input format override")
      ->check(CLI::IsMember({"auto", "pgm", "csv", "raw"}));

  InverseArgs inverse_args;
  auto* inverse = app.add_subcommand("inverse", "reconstruct the image from one transform file");
  inverse->add_option("--input", inverse_args.input, "input transform file")->required();
  inverse->add_option("--output", inverse_args.output, "output image path")->required();
  inverse->add_option("--format", inverse_args.format, "output image format")
      ->check(CLI::IsMember({"auto", "pgm", "csv", "raw"}));
  inverse->add_flag("--strict", inverse_args.strict, "reject nonzero padding");

  RoundtripArgs roundtrip_args;
  auto* roundtrip = app.add_subcommand("roundtrip", "forward + inverse with an error/cost report");
  roundtrip->add_option("--input", roundtrip_args.input, "input image")->required();
  roundtrip->add_option("--report", roundtrip_args.report, "JSON report path")->required();
  roundtrip->add_option("--format", roundtrip_args.format, "input format override")
      ->check(CLI::IsMember({"auto", "pgm", "csv", "raw"}));

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "compare the fast forward against direct summation");
  oracle->add_option("--n", oracle_args.n, "image exponent")->required()->check(CLI::Range(1, 8));
  oracle->add_option("--trials", oracle_args.trials, "seeded random images to draw")
      ->check(CLI::Range(1, 100000));
  oracle->add_option("--seed", oracle_args.seed, "RNG seed (mt19937_64, 16-bit pixels)");

  LinesArgs lines_args;
  auto* lines = app.add_subcommand("lines", "dump digital-line pixels as i,j CSV rows");
  lines->add_option("--m", lines_args.m, "level (2^m rows)")->required()->check(CLI::Range(0, 20));
  lines->add_option("--h", lines_args.h, "intercept")->required();
  lines->add_option("--s", lines_args.s, "slope")->required();
  lines->add_option("--output", lines_args.output, "output CSV path (default stdout)");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "time forward/inverse and verify operation counts");
  bench->add_option("--min-n", bench_args.min_n, "smallest exponent")->check(CLI::Range(1, 12));
  bench->add_option("--max-n", bench_args.max_n, "largest exponent")->check(CLI::Range(1, 12));
  bench->add_option("--reps", bench_args.reps, "timed repetitions per size (median)")
      ->check(CLI::Range(3, 1000));
  bench->add_option("--seed", bench_args.seed, "RNG seed");
  bench->add_option("--output", bench_args.output, "output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (forward->parsed()) return run_forward(forward_args);
    if (inverse->parsed()) return run_inverse(inverse_args);
    if (roundtrip->parsed()) return run_roundtrip(roundtrip_args);
    if (oracle->parsed()) return run_oracle(oracle_args);
    if (lines->parsed()) return run_lines(lines_args);
    if (bench->parsed()) return run_bench_cmd(bench_args);
  } catch (const adrt::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
