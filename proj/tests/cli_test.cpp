#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = permrex::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json report(const Result& r) { return nlohmann::json::parse(r.out).at("report"); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("permrex_cli_test_" + name);
}

}  // namespace

TEST_CASE("gen prints the divide-and-conquer expression") {
  Result r = run({"gen", "dnc", "--n", "4", "--format", "compact"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "(12+21)(34+43)+(13+31)(24+42)+(23+32)(14+41)+(14+41)(23+32)+(24+42)(13+31)+(34+43)(12+21)\n");
  CHECK(run({"gen", "flat", "--n", "3", "--format", "compact"}).out == "123+132+213+231+312+321\n");
  CHECK(run({"gen", "tail", "--n", "2"}).out == "1 2 + 2 1\n");
}

TEST_CASE("table csv") {
  Result r = run({"table", "--max-n", "10", "--format", "csv"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line, last;
  std::getline(lines, line);
  CHECK(line == "n,f,t,flat");
  while (std::getline(lines, line)) last = line;
  CHECK(last == "10,95760,9864100,36288000");
}

TEST_CASE("table json uses exact strings") {
  Result r = run({"table", "--max-n", "40"});
  CHECK(r.code == 0);
  auto rows = report(r).at("rows");
  CHECK(rows.size() == 40);
  CHECK(rows[9].at("f") == "95760");
  CHECK(rows[39].at("f").get<std::string>().find('e') == std::string::npos);
}

TEST_CASE("oracle report") {
  Result r = run({"oracle", "--n", "3", "--k", "2"});
  CHECK(r.code == 0);
  auto rep = report(r);
  CHECK(rep.at("cost_Pn") == 15);
  CHECK(rep.at("matches_f") == true);
  CHECK(rep.at("ell_k").at("value") == 5);
  CHECK(run({"oracle", "--n", "4"}).code == 2);
}

TEST_CASE("verify by builder and by file") {
  Result r = run({"verify", "--builder", "tail", "--n", "5"});
  CHECK(r.code == 0);
  CHECK(report(r).at("certificate").at("accepted") == 120);

  for (const char* builder : {"dnc", "tail", "flat"}) {
    for (const char* format : {"compact", "spaced"}) {
      auto path = temp_file(std::string(builder) + format + ".txt");
      CHECK(run({"gen", builder, "--n", "5", "--format", format, "--output", path.string()}).code == 0);
      Result v = run({"verify", "--regex-file", path.string()});
      CHECK(v.code == 0);
      CHECK(report(v).at("certificate").at("passed") == true);
      std::filesystem::remove(path);
    }
  }

  auto bad = temp_file("bad.txt");
  std::ofstream(bad) << "12+21+11\n";
  Result v = run({"verify", "--regex-file", bad.string()});
  CHECK(v.code == 1);
  CHECK(report(v).at("certificate").at("passed") == false);
  std::filesystem::remove(bad);

  CHECK(run({"verify", "--builder", "dnc", "--n", "8"}).code == 2);
  CHECK(run({"verify", "--builder", "dnc", "--n", "8", "--verify-cap", "8"}).code == 0);
}

TEST_CASE("lemmas, bounds and estimate exit cleanly") {
  CHECK(run({"lemmas", "--max-n", "64"}).code == 0);
  Result b = run({"bounds", "--max-n", "32", "--stirling-n", "10", "--grid", "1:0.5:10"});
  CHECK(b.code == 0);
  CHECK(report(b).at("passed") == true);
  Result e = run({"estimate", "--max-m", "8", "--format", "csv"});
  CHECK(e.code == 0);
  CHECK(e.out.rfind("m,f,estimate,ratio,abs_ln_ratio,anomalous\n", 0) == 0);
  Result len = run({"len", "--max-n", "6"});
  CHECK(len.code == 0);
  CHECK(report(len).at("passed") == true);
}

TEST_CASE("report bodies are deterministic") {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"oracle", "--n", "2"}, {"bounds", "--max-n", "16", "--grid", "1:1:4"},
        {"estimate", "--max-m", "4"}, {"verify", "--builder", "dnc", "--n", "4"}}) {
    auto a = nlohmann::json::parse(run(args).out);
    auto b = nlohmann::json::parse(run(args).out);
    CHECK(a.at("report") == b.at("report"));
    CHECK(a.contains("metadata"));
    args.push_back("--no-metadata");
    CHECK(!nlohmann::json::parse(run(args).out).contains("metadata"));
  }
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"gen", "dnc"}).code == 2);
  CHECK(run({"gen", "nope", "--n", "3"}).code == 2);
  CHECK(run({"gen", "dnc", "--n", "3", "--unknown"}).code == 2);
  CHECK(run({"gen", "dnc", "--n", "12", "--format", "compact"}).code == 2);
  CHECK(run({"gen", "dnc", "--n", "20"}).code == 2);
  CHECK(run({"gen", "dnc", "--n", "5", "--max-symbols", "0"}).code == 2);
  CHECK(run({"bounds", "--grid", "1:0:3"}).code == 2);
  CHECK(run({"estimate", "--max-m", "11"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"verify", "--regex-file", "/nonexistent/file"}).code == 2);
  Result r = run({"gen", "dnc"});
  CHECK(!r.err.empty());
  CHECK(run({"--help"}).code == 0);
}
