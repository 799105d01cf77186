#include "permrex/bounds.hpp"

#include <algorithm>
#include <limits>
#include <tuple>
#include <utility>

#include "permrex/error.hpp"
#include "permrex/length.hpp"

namespace permrex {

namespace {

ErrReal exact(long v, mpfr_prec_t prec) { return ErrReal::from_int(v, prec); }

ErrReal rational(long num, long den, mpfr_prec_t prec) {
  return exact(num, prec) / exact(den, prec);
}

void require_positive(const ErrReal& x, const char* what) {
  if (mpfr_sgn(x.lower().get()) <= 0) {
    throw Error(ErrorCode::DomainError, std::string(what) + " needs a positive argument");
  }
}

ErrReal abs(const ErrReal& x) { return mpfr_sgn(x.mid().get()) < 0 ? -x : x; }

// Relative width of a ball, rounded up; +inf when the midpoint is zero.
double relative_radius(const ErrReal& x) {
  if (x.is_exact()) return 0.0;
  Mpfr q(64);
  mpfr_abs(q.get(), x.mid().get(), MPFR_RNDD);
  if (mpfr_zero_p(q.get())) return std::numeric_limits<double>::infinity();
  mpfr_div(q.get(), x.rad().get(), q.get(), MPFR_RNDU);
  return mpfr_get_d(q.get(), MPFR_RNDU);
}

std::string exact_decimal(const mpq_class& q) {
  mpz_class den = q.get_den();
  unsigned twos = 0;
  unsigned fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
  if (den != 1) return q.get_str();
  unsigned digits = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class scaled = q.get_num() * scale / q.get_den();
  std::string s = mpz_class(abs(scaled)).get_str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return (scaled < 0 ? "-" : "") + s;
}

BoundStatus from_certainty(Certainty c) {
  switch (c) {
    case Certainty::Certified: return BoundStatus::Certified;
    case Certainty::Violated: return BoundStatus::Violated;
    case Certainty::Undecided: return BoundStatus::Undecided;
  }
  return BoundStatus::Undecided;
}

ErrReal relative_gap(const ErrReal& lhs, const ErrReal& rhs) {
  try {
    return (rhs - lhs) / rhs;
  } catch (const Error&) {
    return rhs - lhs;
  }
}

mpfr_prec_t next_precision(mpfr_prec_t p, const PrecisionPolicy& policy) {
  return std::min(p * 2, policy.max);
}

/// Evaluates lhs <= rhs, doubling the precision while the outcome is undecided.
template <class Eval>
BoundReport certify_inequality(std::string name, std::string at, const PrecisionPolicy& policy,
                               Eval&& eval) {
  mpfr_prec_t prec = policy.initial;
  for (;;) {
    auto [lhs, rhs] = eval(prec);
    BoundStatus status = from_certainty(certify_le(lhs, rhs));
    if (status != BoundStatus::Undecided || prec >= policy.max) {
      return BoundReport{std::move(name), std::move(at), status, relative_gap(lhs, rhs), prec};
    }
    prec = next_precision(prec, policy);
  }
}

}  // namespace

// ---------------------------------------------------------------------------

ErrReal stirling_S(const ErrReal& x) {
  require_positive(x, "S(x)");
  mpfr_prec_t p = x.precision();
  ErrReal root = sqrt(exact(2, p) * ErrReal::pi(p) * x);
  return root * exp(x * (log(x) - exact(1, p)));
}

ErrReal g_alpha(const ErrReal& x, const ErrReal& alpha) {
  require_positive(x, "g_alpha(x)");
  mpfr_prec_t p = std::max(x.precision(), alpha.precision());
  ErrReal ln_x = log(x);
  ErrReal exponent = alpha - lg(x) / exact(4, p);
  return pow(exact(4, p), x) * exp(exponent * ln_x);
}

ErrReal alpha_low(mpfr_prec_t prec) {
  return rational(5, 4, prec) - lg(ErrReal::pi(prec)) / exact(2, prec);
}

ErrReal alpha_high(mpfr_prec_t prec) {
  return lg(exact(5, prec)) - rational(3, 4, prec) - lg(ErrReal::pi(prec)) / exact(2, prec);
}

ErrReal alpha_for_beta(const mpq_class& beta, mpfr_prec_t prec) {
  return lg(ErrReal::from_mpq(beta, prec)) + rational(1, 4, prec) -
         lg(ErrReal::pi(prec)) / exact(2, prec);
}

RealConstant rational_constant(const mpq_class& q) {
  return [q](mpfr_prec_t prec) { return ErrReal::from_mpq(q, prec); };
}

const char* to_string(BoundStatus s) noexcept {
  switch (s) {
    case BoundStatus::Certified: return "certified";
    case BoundStatus::Undecided: return "undecided";
    case BoundStatus::Violated: return "violated";
  }
  return "?";
}

BoundSummary summarize(const std::vector<BoundReport>& reports) {
  BoundSummary s;
  for (const auto& r : reports) {
    switch (r.status) {
      case BoundStatus::Certified: ++s.certified; break;
      case BoundStatus::Undecided: ++s.undecided; break;
      case BoundStatus::Violated: ++s.violated; break;
    }
  }
  return s;
}

std::vector<BoundReport> check_stirling_sandwich(std::size_t max_n, const PrecisionPolicy& policy) {
  std::vector<BoundReport> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const long ln = static_cast<long>(n);
    const BigCount fact = factorial(n);
    out.push_back(certify_inequality("stirling_lower", std::to_string(n), policy, [&](mpfr_prec_t p) {
      ErrReal lhs = exp(rational(1, 12 * ln + 1, p)) * stirling_S(exact(ln, p));
      return std::pair{lhs, ErrReal::from_mpz(fact, p)};
    }));
    out.push_back(certify_inequality("stirling_upper", std::to_string(n), policy, [&](mpfr_prec_t p) {
      ErrReal rhs = exp(rational(1, 12 * ln, p)) * stirling_S(exact(ln, p));
      return std::pair{ErrReal::from_mpz(fact, p), rhs};
    }));
  }
  return out;
}

std::vector<BoundReport> check_lemma_sa(const std::vector<mpq_class>& grid,
                                        const PrecisionPolicy& policy) {
  for (const auto& x : grid) {
    if (x < 1) throw Error(ErrorCode::DomainError, "S(x)S(x+1) bounds need x >= 1, got " + x.get_str());
  }
  std::vector<BoundReport> out;
  const mpq_class half(1, 2);
  for (const auto& x : grid) {
    std::string at = exact_decimal(x);
    auto parts = [&](mpfr_prec_t p) {
      ErrReal xv = ErrReal::from_mpq(x, p);
      ErrReal mid = stirling_S(ErrReal::from_mpq(x + half, p));
      ErrReal mid_sq = mid * mid;
      ErrReal prod = stirling_S(xv) * stirling_S(ErrReal::from_mpq(x + 1, p));
      return std::tuple{xv, mid_sq, prod};
    };
    out.push_back(certify_inequality("lemma_sa_lower", at, policy, [&](mpfr_prec_t p) {
      auto [xv, mid_sq, prod] = parts(p);
      return std::pair{mid_sq, prod};
    }));
    out.push_back(certify_inequality("lemma_sa_upper", at, policy, [&](mpfr_prec_t p) {
      auto [xv, mid_sq, prod] = parts(p);
      ErrReal rhs = exp(exact(1, p) / (exact(2, p) * xv)) * mid_sq;
      return std::pair{prod, rhs};
    }));
  }
  return out;
}

std::vector<mpq_class> filter_at_least_four_pow(const std::vector<mpq_class>& grid,
                                                const RealConstant& alpha, mpfr_prec_t prec) {
  ErrReal threshold = pow(exact(4, prec), alpha(prec));
  std::vector<mpq_class> out;
  for (const auto& x : grid) {
    if (certify_le(threshold, ErrReal::from_mpq(x, prec)) == Certainty::Certified) out.push_back(x);
  }
  return out;
}

std::vector<BoundReport> check_lemma_ga(const std::vector<mpq_class>& grid,
                                        const RealConstant& alpha,
                                        const PrecisionPolicy& policy) {
  {
    ErrReal a = alpha(policy.initial);
    if (certify_lt(exact(0, policy.initial), a) != Certainty::Certified) {
      throw Error(ErrorCode::DomainError, "g_alpha sum bounds need alpha > 0");
    }
    ErrReal threshold = pow(exact(4, policy.initial), a);
    for (const auto& x : grid) {
      if (certify_le(threshold, ErrReal::from_mpq(x, policy.initial)) != Certainty::Certified) {
        throw Error(ErrorCode::DomainError,
                    "x = " + exact_decimal(x) + " is below 4^alpha = " + threshold.mid_string(8));
      }
    }
  }
  std::vector<BoundReport> out;
  const mpq_class half(1, 2);
  for (const auto& x : grid) {
    std::string at = exact_decimal(x);
    auto parts = [&](mpfr_prec_t p) {
      ErrReal a = alpha(p);
      ErrReal xv = ErrReal::from_mpq(x, p);
      ErrReal sum = g_alpha(xv, a) + g_alpha(ErrReal::from_mpq(x + 1, p), a);
      ErrReal centre = rational(5, 2, p) * g_alpha(ErrReal::from_mpq(x + half, p), a);
      ErrReal slack = exact(1, p) / (exact(2, p) * sqrt(xv));
      return std::tuple{sum, centre, slack};
    };
    out.push_back(certify_inequality("lemma_ga_lower", at, policy, [&](mpfr_prec_t p) {
      auto [sum, centre, slack] = parts(p);
      return std::pair{exp(-slack) * centre, sum};
    }));
    out.push_back(certify_inequality("lemma_ga_upper", at, policy, [&](mpfr_prec_t p) {
      auto [sum, centre, slack] = parts(p);
      return std::pair{sum, exp(slack) * centre};
    }));
  }
  return out;
}

std::vector<BoundReport> check_lemma_gaS(const std::vector<mpq_class>& grid, const mpq_class& beta,
                                         const PrecisionPolicy& policy, double tightness) {
  if (beta <= 0) throw Error(ErrorCode::DomainError, "beta must be positive");
  for (const auto& x : grid) {
    if (x <= 0) throw Error(ErrorCode::DomainError, "identity needs x > 0");
  }
  std::vector<BoundReport> out;
  for (const auto& x : grid) {
    mpfr_prec_t prec = policy.initial;
    for (;;) {
      ErrReal a = alpha_for_beta(beta, prec);
      ErrReal xv = ErrReal::from_mpq(x, prec);
      ErrReal two_x = ErrReal::from_mpq(2 * x, prec);
      ErrReal s = stirling_S(xv);
      ErrReal lhs = ErrReal::from_mpq(beta, prec) * stirling_S(two_x) / (s * s) * g_alpha(xv, a);
      ErrReal rhs = g_alpha(two_x, a);
      BoundStatus status;
      if (!lhs.overlaps(rhs)) {
        status = BoundStatus::Violated;
      } else if (relative_radius(lhs) < tightness && relative_radius(rhs) < tightness) {
        status = BoundStatus::Certified;
      } else {
        status = BoundStatus::Undecided;
      }
      if (status != BoundStatus::Undecided || prec >= policy.max) {
        out.push_back(BoundReport{"lemma_gaS_identity[beta=" + exact_decimal(beta) + "]",
                                  exact_decimal(x), status, (lhs - rhs) / rhs, prec});
        break;
      }
      prec = next_precision(prec, policy);
    }
  }
  return out;
}

std::vector<BoundReport> check_fn_bounds(std::size_t max_n, const PrecisionPolicy& policy) {
  std::vector<BoundReport> out;
  if (max_n == 0) return out;
  FTable table(max_n);
  for (std::size_t n = 1; n <= max_n; ++n) {
    const long ln = static_cast<long>(n);
    const BigCount& fn = table(n);
    // Convert f(n) exactly when its bit length allows.
    auto f_ball = [&fn](mpfr_prec_t p) {
      auto bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(fn.get_mpz_t(), 2));
      return ErrReal::from_mpz(fn, std::max(p, bits));
    };
    const std::string at = std::to_string(n);
    out.push_back(certify_inequality("fn_lower", at, policy, [&](mpfr_prec_t p) {
      ErrReal lhs = rational(195, 1000, p) * g_alpha(exact(ln, p), alpha_low(p));
      return std::pair{lhs, f_ball(p)};
    }));
    out.push_back(certify_inequality("fn_upper", at, policy, [&](mpfr_prec_t p) {
      ErrReal rhs = g_alpha(exact(ln, p), alpha_high(p)) / exact(4, p);
      return std::pair{f_ball(p), rhs};
    }));
    if ((n & (n - 1)) == 0) {
      out.push_back(certify_inequality("fn_upper_pow2", at, policy, [&](mpfr_prec_t p) {
        ErrReal rhs = g_alpha(exact(ln, p), alpha_low(p)) / exact(4, p);
        return std::pair{f_ball(p), rhs};
      }));
    }
  }
  return out;
}

std::vector<mpq_class> make_grid(const mpq_class& start, const mpq_class& step,
                                 const mpq_class& stop) {
  if (step <= 0) throw Error(ErrorCode::InvalidArgs, "grid step must be positive");
  std::vector<mpq_class> out;
  for (mpq_class x = start; x <= stop; x += step) out.push_back(x);
  return out;
}

std::vector<EstimateRow> estimate_power_of_two(unsigned m_max, mpfr_prec_t prec) {
  if (m_max > 10) throw Error(ErrorCode::InvalidArgs, "estimate supports m <= 10");
  std::vector<EstimateRow> rows;
  for (unsigned m = 1; m <= m_max; ++m) {
    const long lm = static_cast<long>(m);
    EstimateRow row;
    row.m = m;
    row.f_value = f(std::size_t{1} << m);
    ErrReal est = pow(exact(4, prec), exact(1L << m, prec)) / exp(exact(1, prec)) *
                  pow(ErrReal::pi(prec), rational(1 - lm, 2, prec)) *
                  pow(exact(2, prec), rational(-(lm * lm - 5 * lm + 6), 4, prec));
    row.ratio = ErrReal::from_mpz(row.f_value, prec) / est;
    row.abs_log_ratio = abs(log(row.ratio));
    row.estimate = std::move(est);
    if (!rows.empty() &&
        certify_lt(row.abs_log_ratio, rows.back().abs_log_ratio) == Certainty::Certified) {
      row.anomalous = true;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace permrex
