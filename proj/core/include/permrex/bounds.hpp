#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "permrex/err_real.hpp"
#include "permrex/regex.hpp"

namespace permrex {

/// S(x) = sqrt(2 pi x) (x/e)^x. DomainError unless x is certainly positive.
ErrReal stirling_S(const ErrReal& x);

/// g_alpha(x) = 4^x x^(alpha - lg(x)/4). DomainError unless x is certainly positive.
ErrReal g_alpha(const ErrReal& x, const ErrReal& alpha);

/// A real constant evaluated on demand at the requested precision.
using RealConstant = std::function<ErrReal(mpfr_prec_t)>;

/// 5/4 - lg(pi)/2, the exponent of the lower bound.
ErrReal alpha_low(mpfr_prec_t prec);
/// lg 5 - 3/4 - lg(pi)/2, the exponent of the general upper bound.
ErrReal alpha_high(mpfr_prec_t prec);
/// lg beta + 1/4 - lg(pi)/2
ErrReal alpha_for_beta(const mpq_class& beta, mpfr_prec_t prec);
RealConstant rational_constant(const mpq_class& q);

struct PrecisionPolicy {
  mpfr_prec_t initial = default_precision();
  /// Precision doubles on undecided outcomes until it would exceed this.
  mpfr_prec_t max = 2000;
};

enum class BoundStatus { Certified, Undecided, Violated };
const char* to_string(BoundStatus s) noexcept;

/// One inequality (or identity) checked at one argument.
struct BoundReport {
  std::string inequality;
  /// Argument as an exact decimal or fraction string (n, x, or m).
  std::string at;
  BoundStatus status = BoundStatus::Undecided;
  /// (rhs - lhs) / rhs for inequalities lhs <= rhs; lhs - rhs relative to
  /// rhs for identities.
  ErrReal margin{64};
  mpfr_prec_t precision = 0;
};

struct BoundSummary {
  std::size_t certified = 0;
  std::size_t undecided = 0;
  std::size_t violated = 0;
  bool all_certified() const noexcept { return undecided == 0 && violated == 0; }
};

BoundSummary summarize(const std::vector<BoundReport>& reports);

/// e^(1/(12n+1)) S(n) <= n! <= e^(1/(12n)) S(n) for 1 <= n <= max_n.
std::vector<BoundReport> check_stirling_sandwich(std::size_t max_n,
                                                 const PrecisionPolicy& policy = {});

/// S(x+1/2)^2 <= S(x) S(x+1) <= e^(1/(2x)) S(x+1/2)^2. Requires x >= 1.
std::vector<BoundReport> check_lemma_sa(const std::vector<mpq_class>& grid,
                                        const PrecisionPolicy& policy = {});

/// e^(-1/(2 sqrt x)) (5/2) g(x+1/2) <= g(x) + g(x+1) <= e^(1/(2 sqrt x)) (5/2) g(x+1/2).
/// Requires alpha > 0 and every x >= 4^alpha (DomainError otherwise).
std::vector<BoundReport> check_lemma_ga(const std::vector<mpq_class>& grid,
                                        const RealConstant& alpha,
                                        const PrecisionPolicy& policy = {});

/// beta S(2x)/S(x)^2 g_alpha(x) = g_alpha(2x) with alpha = alpha_for_beta(beta).
/// Certified when the two balls overlap and both relative radii are below
/// `tightness`.
std::vector<BoundReport> check_lemma_gaS(const std::vector<mpq_class>& grid,
                                         const mpq_class& beta,
                                         const PrecisionPolicy& policy = {},
                                         double tightness = 1e-30);

/// 0.195 g_low(n) <= f(n) <= g_high(n)/4 for 1 <= n <= max_n, plus
/// f(n) <= g_low(n)/4 when n is a power of two.
std::vector<BoundReport> check_fn_bounds(std::size_t max_n, const PrecisionPolicy& policy = {});

/// x in {start, start+step, ..., <= stop}
std::vector<mpq_class> make_grid(const mpq_class& start, const mpq_class& step,
                                 const mpq_class& stop);
/// Keeps grid points x with x >= 4^alpha certified at `prec`.
std::vector<mpq_class> filter_at_least_four_pow(const std::vector<mpq_class>& grid,
                                                const RealConstant& alpha,
                                                mpfr_prec_t prec = 200);

struct EstimateRow {
  unsigned m = 0;
  BigCount f_value;
  ErrReal estimate{64};
  ErrReal ratio{64};
  ErrReal abs_log_ratio{64};
  bool anomalous = false;
};

/// f(2^m) against 4^(2^m) e^-1 pi^((1-m)/2) 2^(-(m^2-5m+6)/4) for 1 <= m <= m_max (<= 10).
/// Rows whose |ln ratio| is smaller than the previous row's are flagged.
std::vector<EstimateRow> estimate_power_of_two(unsigned m_max,
                                               mpfr_prec_t prec = default_precision());

}  // namespace permrex
