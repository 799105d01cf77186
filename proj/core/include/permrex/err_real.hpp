#pragma once

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace permrex {

/// Owning MPFR value.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec);
  Mpfr(const Mpfr& other);
  Mpfr(Mpfr&& other) noexcept;
  Mpfr& operator=(const Mpfr& other);
  Mpfr& operator=(Mpfr&& other) noexcept;
  ~Mpfr();

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

 private:
  mpfr_t value_;
};

/// Ball [mid - rad, mid + rad] that is guaranteed to contain the exact value.
///
/// The midpoint carries the working precision; the radius is kept at 64 bits
/// and every operation rounds it upward, adding one ulp of the midpoint
/// whenever MPFR reports an inexact result.
class ErrReal {
 public:
  static constexpr mpfr_prec_t kRadiusBits = 64;

  explicit ErrReal(mpfr_prec_t prec);

  static ErrReal from_int(long v, mpfr_prec_t prec);
  static ErrReal from_mpz(const mpz_class& v, mpfr_prec_t prec);
  static ErrReal from_mpq(const mpq_class& v, mpfr_prec_t prec);
  static ErrReal pi(mpfr_prec_t prec);

  mpfr_prec_t precision() const noexcept { return mid_.precision(); }
  const Mpfr& mid() const noexcept { return mid_; }
  const Mpfr& rad() const noexcept { return rad_; }
  bool is_exact() const noexcept { return mpfr_zero_p(rad_.get()) != 0; }

  /// mid - rad rounded down / mid + rad rounded up, at the working precision.
  Mpfr lower() const;
  Mpfr upper() const;

  bool contains(const ErrReal& other) const;
  bool contains(mpfr_srcptr point) const;
  bool overlaps(const ErrReal& other) const;

  double to_double() const { return mpfr_get_d(mid_.get(), MPFR_RNDN); }
  /// Midpoint in scientific notation with `digits` significant digits.
  std::string mid_string(int digits = 25) const;
  std::string rad_string(int digits = 6) const;

  friend ErrReal operator+(const ErrReal& a, const ErrReal& b);
  friend ErrReal operator-(const ErrReal& a, const ErrReal& b);
  friend ErrReal operator*(const ErrReal& a, const ErrReal& b);
  /// Throws DomainError when the divisor ball contains zero.
  friend ErrReal operator/(const ErrReal& a, const ErrReal& b);
  friend ErrReal operator-(const ErrReal& a);

 private:
  friend ErrReal exp(const ErrReal& x);
  friend ErrReal log(const ErrReal& x);
  friend ErrReal sqrt(const ErrReal& x);
  friend ErrReal pow(const ErrReal& base, const ErrReal& exponent);

  // Adds the rounding error of the last midpoint operation to the radius.
  void account(int ternary);

  Mpfr mid_;
  Mpfr rad_;
};

ErrReal exp(const ErrReal& x);
/// Natural logarithm; DomainError unless the ball is strictly positive.
ErrReal log(const ErrReal& x);
/// Base-2 logarithm.
ErrReal lg(const ErrReal& x);
/// DomainError when the ball reaches below zero.
ErrReal sqrt(const ErrReal& x);
/// base^exponent for a strictly positive base. Exact operands whose power is
/// representable (4^1, 1^y) give an exact result.
ErrReal pow(const ErrReal& base, const ErrReal& exponent);

enum class Certainty { Certified, Undecided, Violated };

/// a <= b is certified when upper(a) <= lower(b) and violated when
/// lower(a) > upper(b). Exact equal points certify.
Certainty certify_le(const ErrReal& a, const ErrReal& b);
/// a < b is certified when upper(a) < lower(b).
Certainty certify_lt(const ErrReal& a, const ErrReal& b);

const char* to_string(Certainty c) noexcept;

/// Default working precision: 200 bits unless PERMREX_PRECISION_BITS is set.
mpfr_prec_t default_precision();

}  // namespace permrex
