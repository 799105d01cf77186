#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "permrex/bounds.hpp"
#include "permrex/construct.hpp"
#include "permrex/error.hpp"
#include "permrex/length.hpp"
#include "permrex/oracle.hpp"
#include "permrex/regex.hpp"
#include "permrex/verify.hpp"

namespace permrex::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Decimal or p/q string to an exact rational.
mpq_class parse_rational(const std::string& text) {
  if (text.empty()) throw UsageError("empty number");
  if (text.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw UsageError("bad rational '" + text + "'");
    q.canonicalize();
    return q;
  }
  std::string digits;
  std::size_t frac = 0;
  bool seen_dot = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '-' && i == 0) {
      digits += c;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (seen_dot) ++frac;
    } else {
      throw UsageError("bad number '" + text + "'");
    }
  }
  mpz_class num(digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::vector<mpq_class> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("grid must be start:step:stop, got '" + spec + "'");
  mpq_class step = parse_rational(parts[1]);
  if (step <= 0) throw UsageError("grid step must be positive");
  return make_grid(parse_rational(parts[0]), step, parse_rational(parts[2]));
}

std::string decimal(const ErrReal& x, int digits = 20) { return x.mid_string(digits); }

json ball(const ErrReal& x) { return json{{"mid", x.mid_string(20)}, {"rad", x.rad_string(3)}}; }

/// Output sink: the named file, or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

struct Common {
  std::string output;
  bool no_metadata = false;
};

void emit_json(Sink& sink, const Common& common, const std::string& command, json report,
               std::chrono::steady_clock::time_point started) {
  json doc;
  doc["command"] = command;
  doc["report"] = std::move(report);
  if (!common.no_metadata) {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
    doc["metadata"] = {{"tool", "permrex"}, {"version", kVersion}, {"elapsed_ms", ms.count()}};
  }
  sink.stream() << doc.dump(2) << '\n';
}

mpfr_prec_t precision_or_default(int bits) {
  if (bits <= 0) return default_precision();
  if (bits < MPFR_PREC_MIN) throw UsageError("precision too small");
  return static_cast<mpfr_prec_t>(bits);
}

json bound_group(const std::vector<BoundReport>& reports, bool details) {
  BoundSummary s = summarize(reports);
  json items = json::array();
  for (const auto& r : reports) {
    if (!details && r.status == BoundStatus::Certified) continue;
    items.push_back({{"inequality", r.inequality},
                     {"at", r.at},
                     {"status", to_string(r.status)},
                     {"margin", ball(r.margin)},
                     {"precision_bits", r.precision}});
  }
  mpfr_prec_t max_prec = 0;
  for (const auto& r : reports) max_prec = std::max(max_prec, r.precision);
  return json{{"checked", reports.size()},
              {"certified", s.certified},
              {"undecided", s.undecided},
              {"violated", s.violated},
              {"max_precision_bits", max_prec},
              {"items", std::move(items)}};
}

json certificate_json(const Certificate& c) {
  return json{{"n", c.n},
              {"words_tested", c.words_tested},
              {"accepted", c.accepted},
              {"permutations_rejected", c.permutations_rejected},
              {"non_permutations_accepted", c.non_permutations_accepted},
              {"shorter_words_accepted", c.shorter_words_accepted},
              {"positions", c.positions},
              {"uniform_length", c.uniform_length},
              {"alphabet_ok", c.alphabet_ok},
              {"passed", c.passed}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  CLI::App app{"Optimal regular expressions for permutation languages", "permrex"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("-o,--output", common.output, "Write the report to this file");
    sub->add_flag("--no-metadata", common.no_metadata, "Omit the timing metadata block");
  };

  BuildLimits limits;
  long long max_symbols = 10'000'000;
  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--max-symbols", max_symbols, "Symbol budget for building expressions")
        ->check(CLI::PositiveNumber);
    sub->add_option("--flat-cap", limits.flat_cap, "Largest n for the flat union")
        ->check(CLI::PositiveNumber);
  };

  // gen
  std::string gen_builder;
  std::size_t gen_n = 0;
  std::string gen_format = "spaced";
  auto* gen = app.add_subcommand("gen", "Print the expression produced by a builder");
  gen->add_option("builder", gen_builder, "dnc | tail | flat")
      ->required()
      ->check(CLI::IsMember({"dnc", "tail", "flat"}));
  gen->add_option("--n", gen_n, "Alphabet size")->required()->check(CLI::PositiveNumber);
  gen->add_option("--format", gen_format, "compact | spaced")
      ->check(CLI::IsMember({"compact", "spaced"}));
  add_caps(gen);
  add_common(gen);

  // len
  std::size_t len_max = 0;
  auto* len = app.add_subcommand("len", "Build every expression and compare its length with the formula");
  len->add_option("--max-n", len_max, "Largest alphabet size")->required()->check(CLI::PositiveNumber);
  add_caps(len);
  add_common(len);

  // table
  std::size_t table_max = 0;
  std::string table_format = "json";
  auto* table = app.add_subcommand("table", "Exact lengths f(n), t(n), n*n!");
  table->add_option("--max-n", table_max, "Largest n")->required()->check(CLI::PositiveNumber);
  table->add_option("--format", table_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  add_common(table);

  // verify
  std::string verify_builder;
  std::string verify_file;
  std::size_t verify_n = 0;
  VerifyLimits verify_limits;
  auto* verify = app.add_subcommand("verify", "Certify that an expression denotes all permutations");
  auto* vb = verify->add_option("--builder", verify_builder, "dnc | tail | flat")
                 ->check(CLI::IsMember({"dnc", "tail", "flat"}));
  auto* vf = verify->add_option("--regex-file", verify_file, "Expression text (compact or spaced)")
                 ->check(CLI::ExistingFile);
  vb->excludes(vf);
  verify->add_option("--n", verify_n, "Alphabet size")->check(CLI::PositiveNumber);
  verify->add_option("--verify-cap", verify_limits.exhaustive_cap, "Largest n for enumeration")
      ->check(CLI::PositiveNumber);
  verify->add_option("--threads", verify_limits.threads, "Worker threads (0 = all cores)");
  add_caps(verify);
  add_common(verify);

  // lemmas
  std::size_t lemmas_max = 0;
  std::size_t lemma_cap = 512;
  auto* lemmas = app.add_subcommand("lemmas", "Exact checks of the split-optimality and growth lemmas");
  lemmas->add_option("--max-n", lemmas_max, "Largest n")->required()->check(CLI::PositiveNumber);
  lemmas->add_option("--lemma-cap", lemma_cap, "Largest n for the split-optimality sweep")
      ->check(CLI::PositiveNumber);
  add_common(lemmas);

  // bounds
  std::size_t bounds_max = 1024;
  std::size_t stirling_n = 100;
  int bounds_bits = 0;
  int bounds_max_bits = 2000;
  std::string grid_spec = "1:0.25:100";
  bool bounds_details = false;
  auto* bounds = app.add_subcommand("bounds", "Certify the growth bounds with error-tracked arithmetic");
  bounds->add_option("--max-n", bounds_max, "Largest n for the f(n) bounds")->check(CLI::NonNegativeNumber);
  bounds->add_option("--stirling-n", stirling_n, "Largest n for the factorial sandwich")
      ->check(CLI::NonNegativeNumber);
  bounds->add_option("--precision-bits", bounds_bits, "Initial working precision");
  bounds->add_option("--max-precision-bits", bounds_max_bits, "Precision ceiling for retries")
      ->check(CLI::PositiveNumber);
  bounds->add_option("--grid", grid_spec, "start:step:stop for the analytic lemmas");
  bounds->add_flag("--details", bounds_details, "List every item, not only failures");
  add_common(bounds);

  // estimate
  unsigned est_max = 0;
  std::string est_format = "json";
  int est_bits = 0;
  auto* estimate = app.add_subcommand("estimate", "Compare f(2^m) with the Stirling-based estimate");
  estimate->add_option("--max-m", est_max, "Largest m (<= 10)")->required()->check(CLI::Range(0U, 10U));
  estimate->add_option("--format", est_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  estimate->add_option("--precision-bits", est_bits, "Working precision");
  add_common(estimate);

  // oracle
  std::size_t oracle_n = 0;
  std::optional<std::size_t> oracle_k;
  auto* oracle = app.add_subcommand("oracle", "Brute-force minimal lengths for n <= 3");
  oracle->add_option("--n", oracle_n, "Alphabet size (1..3)")->required()->check(CLI::Range(1, 3));
  oracle->add_option("--k", oracle_k, "Report ell(n, k) for this k");
  add_common(oracle);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "permrex: " << e.what() << '\n';
    if (!app.get_subcommands().empty()) err << app.get_subcommands().front()->help();
    return kUsage;
  }

  limits.max_symbols = BigCount(std::to_string(max_symbols));

  try {
    Sink sink(common.output, out);

    if (gen->parsed()) {
      Builder b = *parse_builder(gen_builder);
      Regex e = build(b, AlphabetSet::first_n(gen_n), limits);
      render(e, gen_format == "compact" ? RenderFormat::Compact : RenderFormat::Spaced,
             sink.stream());
      sink.stream() << '\n';
      return kOk;
    }

    if (table->parsed()) {
      FTable ft(table_max);
      if (table_format == "csv") {
        sink.stream() << "n,f,t,flat\n";
        for (std::size_t n = 1; n <= table_max; ++n) {
          sink.stream() << n << ',' << ft(n).get_str() << ',' << t(n).get_str() << ','
                        << flat_length(n).get_str() << '\n';
        }
        return kOk;
      }
      json rows = json::array();
      for (std::size_t n = 1; n <= table_max; ++n) {
        rows.push_back({{"n", n},
                        {"f", ft(n).get_str()},
                        {"t", t(n).get_str()},
                        {"flat", flat_length(n).get_str()}});
      }
      emit_json(sink, common, "table", json{{"max_n", table_max}, {"rows", std::move(rows)}},
                started);
      return kOk;
    }

    if (len->parsed()) {
      bool ok = true;
      json rows = json::array();
      for (std::size_t n = 1; n <= len_max; ++n) {
        for (Builder b : {Builder::DivideAndConquer, Builder::TailRecursive, Builder::FlatUnion}) {
          BigCount predicted = predicted_length(b, n);
          std::optional<Regex> e;
          try {
            e = build(b, AlphabetSet::first_n(n), limits);
          } catch (const Error& ex) {
            if (ex.code() != ErrorCode::SizeCap) throw;
          }
          json row{{"n", n}, {"builder", to_string(b)}, {"predicted", predicted.get_str()}};
          if (e) {
            bool match = e->alphabetic_length() == predicted;
            ok = ok && match;
            row["built"] = e->alphabetic_length().get_str();
            row["node_count"] = e->node_count().get_str();
            row["height"] = e->height();
            row["match"] = match;
          } else {
            row["built"] = nullptr;
            row["skipped"] = "size cap";
          }
          rows.push_back(std::move(row));
        }
      }
      emit_json(sink, common, "len", json{{"max_n", len_max}, {"rows", std::move(rows)}, {"passed", ok}},
                started);
      return ok ? kOk : kCheckFailed;
    }

    if (verify->parsed()) {
      json report;
      Regex expr = Regex::epsilon();
      std::size_t n = verify_n;
      if (!verify_builder.empty()) {
        if (n == 0) throw UsageError("verify --builder needs --n");
        Builder b = *parse_builder(verify_builder);
        expr = build(b, AlphabetSet::first_n(n), limits);
        report["source"] = {{"builder", verify_builder}, {"n", n}};
      } else if (!verify_file.empty()) {
        std::ifstream in(verify_file, std::ios::binary);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (n == 0) {
          // Whitespace-free text is compact; otherwise tokens are decimal.
          bool spaced = std::any_of(text.begin(), text.end(),
                                    [](unsigned char c) { return std::isspace(c) && c != '\n' && c != '\r'; });
          ParseFormat fmt = spaced ? ParseFormat::Spaced : ParseFormat::Compact;
          expr = parse(text, 0xffffffffU, fmt);
          n = expr.max_symbol();
          if (n == 0) throw UsageError("expression has no symbols; pass --n");
          expr = parse(text, static_cast<Symbol>(n), fmt);
        } else {
          expr = parse(text, static_cast<Symbol>(n));
        }
        report["source"] = {{"regex_file", verify_file}, {"n", n}};
      } else {
        throw UsageError("verify needs --builder or --regex-file");
      }
      Certificate cert = language_equals_permutations(expr, n, verify_limits);
      report["certificate"] = certificate_json(cert);
      emit_json(sink, common, "verify", std::move(report), started);
      return cert.passed ? kOk : kCheckFailed;
    }

    if (lemmas->parsed()) {
      std::size_t opt_n = std::min(lemmas_max, lemma_cap);
      OptChoiceSweep sweep = sweep_opt_choice(opt_n);
      TripleGrowthReport growth = check_triple_growth(lemmas_max);
      json viol = json::array();
      for (auto v : sweep.violating_n) viol.push_back(v);
      json growth_json{{"max_n", growth.max_n}, {"checked", growth.max_n - 1}};
      if (growth.min_ratio) {
        growth_json["min_ratio"] = growth.min_ratio->get_str();
        growth_json["min_ratio_decimal"] =
            ErrReal::from_mpq(*growth.min_ratio, 64).mid_string(12);
        growth_json["argmin_n"] = *growth.argmin;
      } else {
        growth_json["min_ratio"] = nullptr;
      }
      growth_json["violations"] = growth.violations;
      growth_json["passed"] = growth.passed;
      json report{{"opt_choice",
                   {{"max_n", sweep.max_n},
                    {"pairs_checked", sweep.pairs_checked},
                    {"violating_n", std::move(viol)},
                    {"passed", sweep.passed}}},
                  {"triple_growth", std::move(growth_json)},
                  {"passed", sweep.passed && growth.passed}};
      emit_json(sink, common, "lemmas", std::move(report), started);
      return sweep.passed && growth.passed ? kOk : kCheckFailed;
    }

    if (bounds->parsed()) {
      PrecisionPolicy policy;
      policy.initial = precision_or_default(bounds_bits);
      policy.max = std::max<mpfr_prec_t>(policy.initial, bounds_max_bits);
      std::vector<mpq_class> grid = parse_grid(grid_spec);
      const RealConstant low = alpha_low;
      const RealConstant high = alpha_high;

      std::vector<std::pair<std::string, std::vector<BoundReport>>> groups;
      groups.emplace_back("fn_bounds", check_fn_bounds(bounds_max, policy));
      groups.emplace_back("stirling_sandwich", check_stirling_sandwich(stirling_n, policy));
      groups.emplace_back("lemma_sa", check_lemma_sa(grid, policy));
      groups.emplace_back("lemma_ga_alpha_low",
                          check_lemma_ga(filter_at_least_four_pow(grid, low, policy.initial), low, policy));
      groups.emplace_back("lemma_ga_alpha_high",
                          check_lemma_ga(filter_at_least_four_pow(grid, high, policy.initial), high, policy));
      groups.emplace_back("lemma_gaS_beta_2", check_lemma_gaS(grid, mpq_class(2), policy));
      groups.emplace_back("lemma_gaS_beta_5/2", check_lemma_gaS(grid, mpq_class(5, 2), policy));

      bool ok = true;
      json checks;
      for (auto& [name, reports] : groups) {
        ok = ok && summarize(reports).all_certified();
        checks[name] = bound_group(reports, bounds_details);
      }
      json report{{"max_n", bounds_max},
                  {"stirling_n", stirling_n},
                  {"grid", grid_spec},
                  {"initial_precision_bits", policy.initial},
                  {"max_precision_bits", policy.max},
                  {"alpha_low", decimal(alpha_low(policy.initial))},
                  {"alpha_high", decimal(alpha_high(policy.initial))},
                  {"checks", std::move(checks)},
                  {"passed", ok}};
      emit_json(sink, common, "bounds", std::move(report), started);
      return ok ? kOk : kCheckFailed;
    }

    if (estimate->parsed()) {
      auto rows = estimate_power_of_two(est_max, precision_or_default(est_bits));
      if (est_format == "csv") {
        sink.stream() << "m,f,estimate,ratio,abs_ln_ratio,anomalous\n";
        for (const auto& r : rows) {
          sink.stream() << r.m << ',' << r.f_value.get_str() << ',' << decimal(r.estimate) << ','
                        << decimal(r.ratio) << ',' << decimal(r.abs_log_ratio) << ','
                        << (r.anomalous ? "true" : "false") << '\n';
        }
        return kOk;
      }
      json out_rows = json::array();
      for (const auto& r : rows) {
        out_rows.push_back({{"m", r.m},
                            {"n", std::size_t{1} << r.m},
                            {"f", r.f_value.get_str()},
                            {"estimate", decimal(r.estimate)},
                            {"ratio", decimal(r.ratio)},
                            {"abs_ln_ratio", decimal(r.abs_log_ratio)},
                            {"anomalous", r.anomalous}});
      }
      emit_json(sink, common, "estimate", json{{"max_m", est_max}, {"rows", std::move(out_rows)}},
                started);
      return kOk;
    }

    if (oracle->parsed()) {
      CostTable tbl = minimal_cost_table(build_universe(oracle_n));
      MainOptReport rep = check_main_opt(oracle_n);
      json report{{"n", oracle_n},
                  {"universe_size", tbl.universe().words.size()},
                  {"operators", "union, concatenation (star-free, epsilon-free)"},
                  {"cost_Pn", rep.cost_pn},
                  {"f_n", rep.f_n.get_str()},
                  {"matches_f", rep.cost_matches_f},
                  {"ell", rep.ell},
                  {"main_opt", {{"tightest_k", rep.tightest_k}, {"passed", rep.ratios_ok}}}};
      if (oracle_k) report["ell_k"] = {{"k", *oracle_k}, {"value", ell(tbl, *oracle_k)}};
      report["passed"] = rep.passed;
      emit_json(sink, common, "oracle", std::move(report), started);
      return rep.passed ? kOk : kCheckFailed;
    }
  } catch (const UsageError& e) {
    err << "permrex: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "permrex: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace permrex::cli
