// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "permrex/bounds.hpp"
#include "permrex/construct.hpp"
#include "permrex/length.hpp"
#include "permrex/oracle.hpp"
#include "permrex/regex.hpp"
#include "permrex/verify.hpp"
#include "random_regex.hpp"

using namespace permrex;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct CliResult {
  int code;
  std::string out;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str() + err.str()};
}

std::string strip_ws(const std::string& s) {
  std::string r;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) r += c;
  }
  return r;
}

Outcome f_table() {
  CliResult r = cli({"table", "--max-n", "10", "--format", "csv"});
  const char* expected[] = {"1", "4", "15", "48", "190", "600", "2205", "6720", "29988", "95760"};
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  std::vector<std::string> got;
  while (std::getline(lines, line)) {
    auto a = line.find(',');
    auto b = line.find(',', a + 1);
    got.push_back(line.substr(a + 1, b - a - 1));
  }
  bool ok = r.code == 0 && got.size() == 10;
  for (std::size_t i = 0; ok && i < 10; ++i) ok = got[i] == expected[i];
  std::string joined;
  for (const auto& g : got) joined += (joined.empty() ? "" : ",") + g;
  return {ok, "f(1..10) = " + joined};
}

Outcome r4_string() {
  CliResult r = cli({"gen", "dnc", "--n", "4", "--format", "compact"});
  const std::string expected =
      "(12+21)(34+43)+(13+31)(24+42)+(23+32)(14+41)+(14+41)(23+32)+(24+42)(13+31)+(34+43)(12+21)";
  return {r.code == 0 && strip_ws(r.out) == expected, "R_4 has " + std::to_string(strip_ws(r.out).size()) + " chars"};
}

Outcome language() {
  std::size_t certified = 0, total = 0;
  std::string failures;
  for (const char* b : {"flat", "tail", "dnc"}) {
    for (int n = 1; n <= 7; ++n) {
      ++total;
      CliResult r = cli({"verify", "--builder", b, "--n", std::to_string(n), "--no-metadata"});
      auto cert = nlohmann::json::parse(r.out).at("report").at("certificate");
      const bool ok = r.code == 0 && cert.at("passed") == true &&
                      cert.at("accepted").get<std::uint64_t>() == factorial(n).get_ui();
      if (ok) {
        ++certified;
      } else {
        failures += std::string(" ") + b + "/" + std::to_string(n);
      }
    }
  }
  return {certified == total,
          std::to_string(certified) + "/" + std::to_string(total) + " certificates" + failures};
}

Outcome optimality() {
  bool ok = true;
  std::string costs;
  for (std::size_t n = 1; n <= 3; ++n) {
    MainOptReport r = check_main_opt(n);
    ok = ok && r.passed && r.cost_matches_f;
    costs += (costs.empty() ? "" : ",") + std::to_string(r.cost_pn);
  }
  ok = ok && costs == "1,4,15";
  return {ok, "cost(P_1..3) = " + costs + " (star-free)"};
}

Outcome split_sweep() {
  OptChoiceSweep s = sweep_opt_choice(512);
  return {s.passed, std::to_string(s.pairs_checked) + " (n,k) pairs, " +
                        std::to_string(s.violating_n.size()) + " violations"};
}

Outcome triple_growth() {
  TripleGrowthReport r = check_triple_growth(1024);
  std::string detail = "n < 1024";
  if (r.min_ratio) {
    detail += ", min f(n+1)/f(n) = " + ErrReal::from_mpq(*r.min_ratio, 64).mid_string(8) + " at n=" +
              std::to_string(*r.argmin);
  }
  return {r.passed, detail};
}

std::string tally(const BoundSummary& s) {
  return std::to_string(s.certified) + " certified, " + std::to_string(s.undecided) + " undecided, " +
         std::to_string(s.violated) + " violated";
}

Outcome fn_sandwich() {
  PrecisionPolicy policy;
  policy.max = 2000;
  auto reports = check_fn_bounds(1024, policy);
  std::size_t pow2 = 0;
  for (const auto& r : reports) pow2 += r.inequality == "fn_upper_pow2" && r.status == BoundStatus::Certified;
  BoundSummary s = summarize(reports);
  return {s.all_certified() && pow2 == 11, tally(s) + " (" + std::to_string(pow2) + " power-of-two)"};
}

Outcome analytic() {
  PrecisionPolicy policy;
  policy.max = 2000;
  const auto grid = make_grid(mpq_class(1), mpq_class(1, 4), mpq_class(100));
  const RealConstant low = alpha_low;
  const RealConstant high = alpha_high;
  std::vector<BoundReport> all;
  auto add = [&all](std::vector<BoundReport> r) { all.insert(all.end(), r.begin(), r.end()); };
  add(check_stirling_sandwich(100, policy));
  add(check_lemma_sa(grid, policy));
  add(check_lemma_ga(filter_at_least_four_pow(grid, low), low, policy));
  add(check_lemma_ga(filter_at_least_four_pow(grid, high), high, policy));
  add(check_lemma_gaS(grid, mpq_class(2), policy, 1e-30));
  add(check_lemma_gaS(grid, mpq_class(5, 2), policy, 1e-30));
  BoundSummary s = summarize(all);
  return {s.all_certified(), tally(s)};
}

Outcome estimate() {
  CliResult r = cli({"estimate", "--max-m", "8", "--no-metadata"});
  if (r.code != 0) return {false, "exit " + std::to_string(r.code)};
  auto rows = nlohmann::json::parse(r.out).at("report").at("rows");
  bool ok = rows.size() == 8;
  std::string ratios;
  for (const auto& row : rows) {
    const unsigned m = row.at("m");
    ok = ok && row.at("f") == f(std::size_t{1} << m).get_str();
    ok = ok && std::isfinite(std::stod(row.at("abs_ln_ratio").get<std::string>()));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", std::stod(row.at("ratio").get<std::string>()));
    ratios += (ratios.empty() ? "" : ",") + std::string(buf);
  }
  return {ok, "ratios " + ratios};
}

Outcome properties() {
  std::size_t checked = 0;
  bool ok = true;
  for (Builder b : {Builder::DivideAndConquer, Builder::TailRecursive, Builder::FlatUnion}) {
    for (std::size_t n = 1; n <= 7; ++n) {
      Regex e = build(b, AlphabetSet::first_n(n));
      ok = ok && BigCount(static_cast<unsigned long>(glushkov(e).position_count())) == e.alphabetic_length();
      ok = ok && parse(render(e, RenderFormat::Spaced), static_cast<Symbol>(n)) == e;
      ++checked;
    }
  }
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 200; ++i) {
    Regex e = parse(render(testing::random_regex(rng, 12, 6), RenderFormat::Spaced), 12);
    ok = ok && BigCount(static_cast<unsigned long>(glushkov(e).position_count())) == e.alphabetic_length();
    ok = ok && parse(render(e, RenderFormat::Spaced), 12) == e;
    ++checked;
  }
  // Enclosures at doubled precision stay inside the coarser ball.
  std::uniform_int_distribution<long> num(1, 100000);
  for (int i = 0; i < 200; ++i) {
    mpq_class x(num(rng), num(rng) % 997 + 1);
    x.canonicalize();
    ErrReal coarse = g_alpha(ErrReal::from_mpq(x, 128), alpha_low(128));
    ErrReal fine = g_alpha(ErrReal::from_mpq(x, 256), alpha_low(256));
    ok = ok && coarse.contains(fine.mid().get()) && coarse.overlaps(fine);
    ErrReal s1 = stirling_S(ErrReal::from_mpq(x, 128));
    ErrReal s2 = stirling_S(ErrReal::from_mpq(x, 256));
    ok = ok && s1.contains(s2.mid().get());
    ++checked;
  }
  return {ok, std::to_string(checked) + " property cases"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"f-table reproduction", f_table},
      {"R_4 string reproduction", r4_string},
      {"language correctness n <= 7", language},
      {"optimality oracle n <= 3", optimality},
      {"split-choice sweep n <= 512", split_sweep},
      {"triple-growth sweep n < 1024", triple_growth},
      {"f(n) bounds n <= 1024", fn_sandwich},
      {"supporting analytic checks", analytic},
      {"power-of-two estimate report", estimate},
      {"property suites", properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu: %s (%.2f s) -- %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].name,
                secs, o.detail.c_str());
    failed += !o.passed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
