#include <gtest/gtest.h>

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace sinegap::cli {
namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "sinegap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

double to_double(const std::string& text) {
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  EXPECT_EQ(result.ec, std::errc()) << text;
  EXPECT_EQ(result.ptr, text.data() + text.size()) << text;
  return value;
}

const std::vector<std::string> kTwoIntervalScan{"converge", "--x", "0,0.7,1.2", "--u", "-1.1,-2.4",
                                              "--r-range", "5:40:8"};

TEST(Cli, FredholmUnitWeightsGiveZeroRow) {
  const auto result = invoke({"fredholm", "--x", "0,0.5,1.1", "--s", "1,1", "--r", "3"});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const auto rows = parse_csv(result.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"r", "log_f", "arg_f", "error_estimate", "n"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"3", "0", "0", "0", "64"}));
}

TEST(Cli, PmfColumnSumsToOne) {
  const auto result = invoke({"pmf", "--x", "0,0.5", "--r", "1", "--max-counts", "6"});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const auto rows = parse_csv(result.out);
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"kind", "k1", "probability"}));
  double mass = 0.0;
  for (std::size_t i = 1; i <= 7; ++i) {
    EXPECT_EQ(rows[i][0], "point");
    EXPECT_EQ(rows[i][1], std::to_string(i - 1));
    mass += to_double(rows[i][2]);
  }
  EXPECT_NEAR(mass, 1.0, 1e-8);
  EXPECT_EQ(rows[8][0], "residual");
  EXPECT_EQ(rows[8][1], "");
  EXPECT_NEAR(mass + to_double(rows[8][2]), 1.0, 1e-15);
}

TEST(Cli, PmfTwoIntervalsRowMajor) {
  const auto result = invoke({"pmf", "--x", "0,0.4,1", "--r", "2", "--max-counts", "2,3", "--n", "32"});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const auto rows = parse_csv(result.out);
  ASSERT_EQ(rows.size(), 1u + 12u + 1u);
  EXPECT_EQ(rows[1][1], "0");
  EXPECT_EQ(rows[1][2], "0");
  EXPECT_EQ(rows[2][2], "1");
  EXPECT_EQ(rows[4][2], "3");
  EXPECT_EQ(rows[5][1], "1");
  EXPECT_EQ(rows[5][2], "0");
}

TEST(Cli, ConvergeTwoIntervalsIsBounded) {
  const auto result = invoke(kTwoIntervalScan);
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const auto rows = parse_csv(result.out);
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"r", "log_F_numeric", "log_F_asym", "delta"}));
  double previous_r = 0.0;
  const double first = std::abs(to_double(rows[1][3]));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double r = to_double(rows[i][0]);
    const double numeric = to_double(rows[i][1]);
    const double asym = to_double(rows[i][2]);
    const double delta = to_double(rows[i][3]);
    EXPECT_GT(r, previous_r);
    previous_r = r;
    EXPECT_DOUBLE_EQ(delta, r * (numeric - asym));
    EXPECT_LE(std::abs(delta), 2.0 * first + 1.0) << r;
  }
  EXPECT_EQ(to_double(rows[1][0]), 5.0);
  EXPECT_EQ(to_double(rows.back()[0]), 40.0);
}

TEST(Cli, IdenticalJobsAreByteIdentical) {
  for (const auto& format : {"csv", "json"}) {
    auto args = kTwoIntervalScan;
    args.insert(args.end(), {"--format", format});
    const auto a = invoke(args);
    const auto b = invoke(args);
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out) << format;
  }
}

TEST(Cli, CsvUsesSeventeenSignificantDigits) {
  const auto result = invoke({"stats", "--x", "0,1", "--r", "1"});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const auto rows = parse_csv(result.out);
  EXPECT_EQ(rows[1][4], "0.31830988618379069");
}

TEST(Cli, JsonRoundTripsExactly) {
  JobSpec job;
  job.command = Command::kConverge;
  job.x = {0.0, 0.5, 1.1, 1.7};
  job.u = std::vector<double>{0.8, -1.32};
  job.p = 2;
  job.r_range = RRange{5.0, 20.0, 5};
  job.format = Format::kJson;
  validate(job);
  const Table table = run(job);
  const auto document = nlohmann::json::parse(render_json(job, table));

  EXPECT_EQ(document["jobspec"]["command"], "converge");
  EXPECT_EQ(document["jobspec"]["x"].get<std::vector<double>>(), job.x);
  EXPECT_EQ(document["jobspec"]["u"].get<std::vector<double>>(), *job.u);
  EXPECT_EQ(document["jobspec"]["p"], 2);
  EXPECT_EQ(document["jobspec"]["r_range"]["count"], 5);
  EXPECT_TRUE(document["jobspec"]["s"].is_null());

  const auto& rows = document["rows"];
  ASSERT_EQ(rows.size(), table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      EXPECT_EQ(rows[i][table.columns[c]].get<double>(), std::get<double>(table.rows[i][c]));
    }
  }
}

TEST(Cli, CsvRoundTripsExactly) {
  JobSpec job;
  job.command = Command::kAsym1;
  job.x = {0.0, 0.7, 1.2};
  job.u = std::vector<double>{-1.1, -2.4};
  job.r_range = RRange{3.0, 300.0, 7};
  const Table table = run(job);
  const auto rows = parse_csv(render_csv(table));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      EXPECT_EQ(to_double(rows[i + 1][c]), std::get<double>(table.rows[i][c]));
    }
  }
}

TEST(Cli, JsonNullForMissingCells) {
  const auto result = invoke({"pmf", "--x", "0,0.5", "--r", "1", "--max-counts", "2", "--format", "json"});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const auto document = nlohmann::json::parse(result.out);
  const auto& last = document["rows"].back();
  EXPECT_EQ(last["kind"], "residual");
  EXPECT_TRUE(last["k1"].is_null());
  EXPECT_EQ(document["rows"][1]["k1"], 1);
}

TEST(Cli, StatsWithGapEmitsHattedQuantities) {
  const auto result = invoke({"stats", "--x", "0,0.5,1.1,1.7", "--p", "2", "--r", "10"});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const auto rows = parse_csv(result.out);
  ASSERT_GT(rows.size(), 1u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_NE(rows[i][1].find("_hat"), std::string::npos);
    EXPECT_NE(rows[i][2], "1");
    EXPECT_NE(rows[i][2], "2");
  }
}

TEST(Cli, AsymTwoMatchesLibraryBreakdown) {
  const auto result = invoke({"asym2", "--x", "0,0.5,1.1,1.7", "--p", "2", "--u", "0.8,-1.32", "--r", "20"});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const auto rows = parse_csv(result.out);
  EXPECT_NEAR(to_double(rows[1][5]), -29.438871918348976, 1e-11);
  const auto via_s = invoke({"asym2", "--x", "0,0.5,1.1,1.7", "--p", "2", "--s",
                             "0.44932896411722156,0,0.26713530196585034", "--r", "20"});
  ASSERT_EQ(via_s.code, kExitOk) << via_s.err;
  EXPECT_NEAR(to_double(parse_csv(via_s.out)[1][5]), to_double(rows[1][5]), 1e-12);
}

TEST(Cli, OutWritesTheSameBytes) {
  const auto path = std::filesystem::temp_directory_path() / "sinegap_cli_test.csv";
  std::vector<std::string> args{"fredholm", "--x", "0,1", "--s", "0", "--r-range", "1:4:3"};
  const auto to_stdout = invoke(args);
  args.insert(args.end(), {"--out", path.string()});
  const auto to_file = invoke(args);
  ASSERT_EQ(to_file.code, kExitOk) << to_file.err;
  EXPECT_TRUE(to_file.out.empty());
  std::ifstream in(path, std::ios::binary);
  const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(written, to_stdout.out);
  std::filesystem::remove(path);
}

TEST(Cli, ValidationFailuresExitTwo) {
  EXPECT_EQ(invoke({"asym2", "--x", "0,1,2", "--u", "0.5", "--r", "5"}).code, kExitValidation);
  EXPECT_EQ(invoke({"converge", "--x", "0,1", "--u", "0.5", "--r", "5"}).code, kExitValidation);
  EXPECT_EQ(invoke({"fredholm", "--x", "0,1", "--s", "0", "--u", "0", "--r", "5"}).code, kExitValidation);
  EXPECT_EQ(invoke({"fredholm", "--x", "0,1", "--s", "0", "--r", "5", "--r-range", "1:2:2"}).code,
            kExitValidation);
  EXPECT_EQ(invoke({"fredholm", "--x", "1,0", "--s", "0", "--r", "5"}).code, kExitValidation);
  EXPECT_EQ(invoke({"fredholm", "--x", "0,1", "--s", "-0.5", "--r", "5"}).code, kExitValidation);
  EXPECT_EQ(invoke({"asym1", "--x", "0,1", "--s", "0", "--r", "5"}).code, kExitValidation);
  EXPECT_EQ(invoke({"pmf", "--x", "0,1,2,3,4", "--r", "1", "--max-counts", "1"}).code, kExitValidation);
  EXPECT_EQ(invoke({"pmf", "--x", "0,1", "--r", "1", "--max-counts", "6", "--grid", "13"}).code,
            kExitValidation);
  EXPECT_EQ(invoke({"stats", "--x", "0,1", "--r-range", "5:1:3"}).code, kExitValidation);
  EXPECT_EQ(invoke({"stats", "--x", "0,1", "--r", "1", "--format", "xml"}).code, kExitValidation);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitValidation);
  EXPECT_EQ(invoke({}).code, kExitValidation);
}

TEST(Cli, ValidationReportsEveryProblemBeforeComputing) {
  const auto result = invoke({"fredholm", "--x", "1,0", "--s", "2", "--n", "3"});
  EXPECT_EQ(result.code, kExitValidation);
  EXPECT_TRUE(result.out.empty());
  EXPECT_NE(result.err.find("--x"), std::string::npos);
  EXPECT_NE(result.err.find("--n"), std::string::npos);
  EXPECT_NE(result.err.find("--r"), std::string::npos);
}

TEST(Cli, NumericalFailureExitsThree) {
  const auto result = invoke({"pmf", "--x", "0,1", "--r", "40", "--max-counts", "12", "--n", "8"});
  EXPECT_EQ(result.code, kExitNumerical);
  EXPECT_TRUE(result.out.empty());
  EXPECT_NE(result.err.find("numerical"), std::string::npos);
}

TEST(Cli, IoFailureExitsFour) {
  const auto result = invoke({"fredholm", "--x", "0,1", "--s", "0", "--r", "1", "--out",
                              "/nonexistent-directory/out.csv"});
  EXPECT_EQ(result.code, kExitIo);
}

TEST(Cli, HelpExitsZero) {
  const auto result = invoke({"--help"});
  EXPECT_EQ(result.code, kExitOk);
  EXPECT_NE(result.out.find("converge"), std::string::npos);
}

TEST(RRangeParsing, GeometricGrid) {
  const RRange range = parse_r_range("5:40:4");
  EXPECT_EQ(range.lo, 5.0);
  EXPECT_EQ(range.hi, 40.0);
  EXPECT_EQ(range.count, 4);
  JobSpec job;
  job.r_range = range;
  const auto r = radii(job);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(r.front(), 5.0);
  EXPECT_EQ(r.back(), 40.0);
  EXPECT_NEAR(r[1], 10.0, 1e-12);
  EXPECT_NEAR(r[2], 20.0, 1e-12);
  EXPECT_THROW(parse_r_range("5:40"), ValidationError);
  EXPECT_THROW(parse_r_range("5:40:x"), ValidationError);
  EXPECT_THROW(parse_r_range("a:40:3"), ValidationError);
  EXPECT_THROW(parse_r_range("1:2:3:4"), ValidationError);
}

}  // namespace
}  // namespace sinegap::cli
