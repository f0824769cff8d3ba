#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "berezin/cli.hpp"
#include "berezin/operand_file.hpp"

using namespace berezin;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "berezin-lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "cli_test_" + name;
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

}  // namespace

TEST_CASE("bounds subcommand") {
  const Run r = run({"bounds", "--rho", "0.5"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["r1"].get<double>() == doctest::Approx(0.317581170275222).epsilon(1e-14));
  CHECK(j["r2"].get<double>() == doctest::Approx(0.5));
  CHECK(j["r3"].get<double>() == doctest::Approx(0.853553390593274).epsilon(1e-14));
  CHECK(j["norm"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("exit codes for bad input") {
  CHECK(run({}).code == kExitInput);
  CHECK(run({"bounds", "--rho", "2"}).code == kExitInput);
  CHECK(run({"bounds", "--bogus"}).code == kExitInput);
  CHECK(run({"verify", "--theorem", "cor_abba", "--operands", "does_not_exist.json"}).code == kExitInput);
  CHECK(run({"verify", "--theorem", "no_such", "--operands", "x.json"}).code == kExitInput);
  const std::string bad = write_temp("bad.json", R"({"S": {"kind": "matrix", "entries": [[[1,0]]], "extra": 1}})");
  const Run r = run({"verify", "--theorem", "lemma_main", "--operands", bad});
  CHECK(r.code == kExitInput);
  CHECK(r.err.find("extra") != std::string::npos);
}

TEST_CASE("verify on the second worked example") {
  const std::string ops = write_temp("ex2.json", R"({
    "S": {"kind": "matrix", "entries": [[[1, 0.2], [0, 0]], [[0, 0], [2, 0.5]]]},
    "T": {"kind": "matrix", "entries": [[[0.7, 0], [0, 0]], [[0, 0], [0, 0]]]}})");
  const Run r = run({"verify", "--theorem", "cor_abba", "--operands", ops, "--theta", "0.2617993878"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["theorem"] == "COR_ABBA");
  CHECK(j["satisfied"] == true);
  CHECK(j["rhs"].get<double>() == doctest::Approx(2.9098).epsilon(1e-3));
  CHECK(j["hypotheses"].size() >= 1);
}

TEST_CASE("vector lemma through the CLI") {
  const std::string v = write_temp("vec.json", R"({"x": [[1, 0], [0, 1]], "y": [[0.5, 0.5], [2, 0]], "t": 0.3})");
  const Run r = run({"verify", "--theorem", "lemma_last30", "--operands", v});
  CHECK(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["satisfied"] == true);
}

TEST_CASE("CSV output is fixed-format and repeatable") {
  const Run a = run({"range", "--rho", "0.5", "--shift-re", "0.41", "--grid-r", "5", "--grid-k", "8"});
  const Run b = run({"range", "--rho", "0.5", "--shift-re", "0.41", "--grid-r", "5", "--grid-k", "8"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("re,im,kind\n", 0) == 0);
  CHECK(a.out.find('\r') == std::string::npos);
  CHECK(a.out.find("circle_r3") != std::string::npos);
  const Run n = run({"nrange", "--trunc", "16", "--angles", "32"});
  CHECK(n.out.find("nrange_boundary") != std::string::npos);
  std::istringstream lines(n.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 33);
}

TEST_CASE("output file") {
  const Run r = run({"bounds", "--rho", "0.3", "--out", "cli_test_bounds.json"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in("cli_test_bounds.json");
  std::stringstream s;
  s << in.rdbuf();
  CHECK(nlohmann::json::parse(s.str())["rho"].get<double>() == doctest::Approx(0.3));
}

TEST_CASE("operand files round trip") {
  const std::string text = R"({
    "A": {"kind": "dphi", "rho": 0.5, "shift": [0.41, 0]},
    "B": {"kind": "dirichlet_shift", "rule": "c_over_n", "c": [0.5, 0]},
    "C": {"kind": "dirichlet_shift", "rule": "imaginary_list", "values": [1, 2]},
    "D": {"kind": "finite_rank", "pairs": [{"g": [[0, 0], [1, 0]], "h": [[0, 0], [1, 0]]}]},
    "E": {"kind": "toeplitz", "alpha": 0, "analytic": [[0, 0], [1, 0]], "coanalytic": [[0.5, 0]]},
    "F": {"kind": "matrix", "entries": [[[1, 0.2], [0, 0]], [[0, 0], [2, 0.5]]]}})";
  const Operands ops = parse_operands_text(text);
  REQUIRE(ops.size() == 6);
  const Operands again = parse_operands(operands_to_json(ops));
  for (const auto& [name, op] : ops) {
    const int n = op.space().is_finite() ? 1 : 16;
    CHECK(max_abs(truncate(op, n) - truncate(again.at(name), n)) == 0.0);
  }
  // conj(z) enters the Toeplitz symbol through the first coanalytic entry
  const auto& e = ops.at("E");
  CHECK(std::abs(truncate(e, 4)(0, 1) - Complex(0.5 * std::sqrt(0.5), 0)) < 1e-15);
  CHECK_THROWS_AS(parse_operands_text(R"({"X": {"kind": "wavelet"}})"), Error);
  CHECK_THROWS_AS(parse_operands_text(R"({"X": {"kind": "dphi"}})"), Error);
  CHECK_THROWS_AS(parse_operands_text("[1, 2"), Error);
  CHECK_THROWS_AS(parse_operands_text(R"({"X": {"kind": "matrix", "entries": [[[1, 0], [2, 0]]]}})"), Error);
}
