#include "choice_attach/cli.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace choice_attach;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Table sample_table() {
  Table t;
  t.command_line = "choice_attach pk --r 2 --s 2";
  t.config = {{"command", "pk"}, {"r", "2"}};
  t.columns = {"k", "p", "label", "note"};
  t.rows.push_back({std::int64_t{0}, 0.0, std::string("direct"), Cell{}});
  t.rows.push_back({std::int64_t{-7}, 0.1, std::string("a,b \"q\""), real_cell(1e-300)});
  t.rows.push_back({std::int64_t{3}, real_cell(std::nan("")), real_cell(INFINITY), std::string("12")});
  return t;
}

}  // namespace

TEST_CASE("cell formatting") {
  CHECK(format_cell(Cell{}) == "");
  CHECK(format_cell(Cell{std::int64_t{42}}) == "42");
  CHECK(format_cell(Cell{0.1}) == "0.10000000000000001");
  CHECK(format_cell(Cell{std::string("log")}) == "\"log\"");
  CHECK(format_cell(real_cell(-INFINITY)) == "\"-inf\"");
  CHECK(std::get<std::string>(real_cell(std::nan(""))) == "nan");
}

TEST_CASE("csv round trip") {
  const Table t = sample_table();
  const std::string text = to_csv(t);
  CHECK(text.rfind("# schema_version=1\n# command_line=choice_attach pk --r 2 --s 2\n# config.command=pk\n", 0) == 0);
  const Table back = parse_csv(text);
  CHECK(to_csv(back) == text);
  CHECK(back.config == t.config);
  CHECK(back.rows[1] == t.rows[1]);
  CHECK(back.rows[2] == t.rows[2]);
  // CSV carries no types: an integral real reads back as an integer and
  // re-emits the same bytes.
  CHECK(std::get<std::int64_t>(back.rows[0][1]) == 0);
}

TEST_CASE("json round trip") {
  const Table t = sample_table();
  const std::string text = to_json(t);
  const Table back = parse_json(text);
  CHECK(back == t);
  CHECK(to_json(back) == text);
}

TEST_CASE("reals survive the text round trip exactly") {
  Table t;
  t.columns = {"x"};
  for (double x : {0.77611556486869859, 1e-320, 0.99994723347405057, -2.5e300, 1.0 / 3.0}) t.rows.push_back({x});
  const Table a = parse_csv(to_csv(t));
  const Table b = parse_json(to_json(t));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(std::get<double>(a.rows[i][0]) == std::get<double>(t.rows[i][0]));
    CHECK(std::get<double>(b.rows[i][0]) == std::get<double>(t.rows[i][0]));
  }
}

TEST_CASE("pk output") {
  const Result r = run_cli({"pk", "--r", "2", "--s", "2", "--kmax", "4"});
  REQUIRE(r.code == 0);
  const Table t = parse_csv(r.out);
  CHECK(t.columns == std::vector<std::string>{"k", "p_k", "q_k", "repr", "log_q", "residual"});
  REQUIRE(t.rows.size() == 5);
  CHECK(std::get<std::int64_t>(t.rows[4][0]) == 4);
  CHECK(std::abs(std::get<double>(t.rows[4][1]) - 0.7761155642) <= 1e-8);
  CHECK(std::get<std::string>(t.rows[4][3]) == "direct");
  CHECK(t.command_line.find("choice_attach pk --r 2 --s 2") == 0);

  // The recorded command line regenerates the same bytes.
  std::istringstream words(t.command_line);
  std::vector<std::string> args;
  for (std::string w; words >> w;) args.push_back(w);
  args.erase(args.begin());
  CHECK(run_cli(args).out == r.out);
}

TEST_CASE("log-space entries leave the residual empty") {
  const Result r = run_cli({"pk", "--r", "2", "--s", "2", "--kmax", "20", "--format", "json"});
  REQUIRE(r.code == 0);
  const Table t = parse_json(r.out);
  const auto& last = t.rows.back();
  CHECK(std::get<std::string>(last[3]) == "log");
  CHECK(std::holds_alternative<std::monostate>(last[5]));
  CHECK(std::get<double>(last[4]) < -1000);
}

TEST_CASE("pstar, threshold, classify, cutoff outputs") {
  const Table ps = parse_csv(run_cli({"pstar", "--r", "3", "--s", "1"}).out);
  CHECK(std::get<std::string>(ps.rows[0][2]) == "root");
  CHECK(std::abs(std::get<double>(ps.rows[0][3]) - 0.6180339887) < 1e-9);

  const Table th = parse_csv(run_cli({"threshold", "--s", "3"}).out);
  CHECK(std::get<std::int64_t>(th.rows[0][1]) == 10);

  const Table cl = parse_csv(run_cli({"classify", "--r", "2", "--s", "1"}).out);
  CHECK(std::get<std::string>(cl.rows[0][2]) == "greedy-log-corrected");

  const Table cu = parse_csv(run_cli({"cutoff", "--r", "3", "--s", "2"}).out);
  CHECK(std::get<std::int64_t>(cu.rows[0][2]) == 18);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"pk", "--r", "1", "--s", "2"}).code == cli::kConfigError);
  CHECK(run_cli({"pk", "--r", "65", "--s", "2"}).code == cli::kConfigError);
  CHECK(run_cli({"pk", "--r", "2", "--s", "2", "--mode", "sideways"}).code == cli::kConfigError);
  CHECK(run_cli({"frobnicate"}).code == cli::kConfigError);
  CHECK(run_cli({"pk", "--s", "2"}).code == cli::kConfigError);
  CHECK(run_cli({"cutoff", "--r", "6", "--s", "2", "--k-search-max", "100"}).code == cli::kAnalyticFailure);
  CHECK(run_cli({"threshold", "--s", "2", "--r-cap", "6"}).code == cli::kAnalyticFailure);
  CHECK(run_cli({"simulate", "--r", "2", "--s", "2", "--steps", "100000001"}).code == cli::kResourceCap);
  CHECK(run_cli({"classify", "--r", "2", "--s", "2"}).code == cli::kSuccess);
}

TEST_CASE("simulate is deterministic per seed") {
  const std::vector<std::string> args{"simulate", "--r", "2", "--s", "2", "--steps", "2000", "--seeds", "3",
                                      "--base-seed", "9", "--kmax", "5"};
  const Result a = run_cli(args);
  const Result b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Table t = parse_csv(a.out);
  // Checkpoints 10, 100, 1000, 2001 with k = 1..5 for each of three seeds.
  CHECK(t.rows.size() == 3 * 4 * 5);
  CHECK(std::get<std::int64_t>(t.rows.back()[6]) == 11);
  CHECK(std::get<std::int64_t>(t.rows.back()[0]) == 2001);
}

TEST_CASE("output directory from the environment") {
  const auto dir = std::filesystem::temp_directory_path() / "choice_attach_cli_test";
  std::filesystem::remove_all(dir);
  ::setenv(cli::kOutDirEnv, dir.c_str(), 1);
  const Result a = run_cli({"pstar", "--r", "7", "--s", "2"});
  const Result b = run_cli({"pstar", "--r", "7", "--s", "2", "--format", "json", "--out", "nested/p.json"});
  ::unsetenv(cli::kOutDirEnv);
  CHECK(a.code == 0);
  CHECK(a.out.empty());
  CHECK(b.code == 0);
  const Table ta = parse_csv(slurp(dir / "pstar.csv"));
  const Table tb = parse_json(slurp(dir / "p.json"));
  CHECK(ta.rows == tb.rows);
  CHECK(std::get<std::string>(ta.rows[0][2]) == "root");
  std::filesystem::remove_all(dir);
}
