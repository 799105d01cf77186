#include "permrex/err_real.hpp"

#include <cstdlib>
#include <string>
#include <vector>

#include "permrex/error.hpp"

namespace permrex {

Mpfr::Mpfr(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Mpfr::Mpfr(const Mpfr& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

Mpfr& Mpfr::operator=(const Mpfr& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Mpfr::~Mpfr() { mpfr_clear(value_); }

namespace {

constexpr mpfr_prec_t kRad = ErrReal::kRadiusBits;

// |v| rounded up to radius precision.
Mpfr abs_up(mpfr_srcptr v) {
  Mpfr r(kRad);
  mpfr_abs(r.get(), v, MPFR_RNDU);
  return r;
}

Mpfr abs_down(mpfr_srcptr v) {
  Mpfr r(kRad);
  mpfr_abs(r.get(), v, MPFR_RNDD);
  return r;
}

}  // namespace

ErrReal::ErrReal(mpfr_prec_t prec) : mid_(prec), rad_(kRad) {}

void ErrReal::account(int ternary) {
  if (ternary == 0) return;
  Mpfr ulp(kRad);
  if (mpfr_zero_p(mid_.get())) {
    mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_emin(), MPFR_RNDU);
  } else {
    mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(mid_.get()) - precision(), MPFR_RNDU);
  }
  mpfr_add(rad_.get(), rad_.get(), ulp.get(), MPFR_RNDU);
}

ErrReal ErrReal::from_int(long v, mpfr_prec_t prec) {
  ErrReal r(prec);
  r.account(mpfr_set_si(r.mid_.get(), v, MPFR_RNDN));
  return r;
}

ErrReal ErrReal::from_mpz(const mpz_class& v, mpfr_prec_t prec) {
  ErrReal r(prec);
  r.account(mpfr_set_z(r.mid_.get(), v.get_mpz_t(), MPFR_RNDN));
  return r;
}

ErrReal ErrReal::from_mpq(const mpq_class& v, mpfr_prec_t prec) {
  return from_mpz(v.get_num(), prec) / from_mpz(v.get_den(), prec);
}

ErrReal ErrReal::pi(mpfr_prec_t prec) {
  ErrReal r(prec);
  r.account(mpfr_const_pi(r.mid_.get(), MPFR_RNDN));
  return r;
}

Mpfr ErrReal::lower() const {
  Mpfr r(precision());
  mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return r;
}

Mpfr ErrReal::upper() const {
  Mpfr r(precision());
  mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return r;
}

bool ErrReal::contains(const ErrReal& other) const {
  return mpfr_lessequal_p(lower().get(), other.lower().get()) &&
         mpfr_lessequal_p(other.upper().get(), upper().get());
}

bool ErrReal::contains(mpfr_srcptr point) const {
  return mpfr_lessequal_p(lower().get(), point) && mpfr_lessequal_p(point, upper().get());
}

bool ErrReal::overlaps(const ErrReal& other) const {
  return mpfr_lessequal_p(lower().get(), other.upper().get()) &&
         mpfr_lessequal_p(other.lower().get(), upper().get());
}

std::string ErrReal::mid_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, mid_.get());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string ErrReal::rad_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*RUe", digits - 1, rad_.get());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

ErrReal operator+(const ErrReal& a, const ErrReal& b) {
  ErrReal r(std::max(a.precision(), b.precision()));
  int t = mpfr_add(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  r.account(t);
  return r;
}

ErrReal operator-(const ErrReal& a, const ErrReal& b) {
  ErrReal r(std::max(a.precision(), b.precision()));
  int t = mpfr_sub(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  r.account(t);
  return r;
}

ErrReal operator-(const ErrReal& a) {
  ErrReal r = a;
  mpfr_neg(r.mid_.get(), r.mid_.get(), MPFR_RNDN);
  return r;
}

ErrReal operator*(const ErrReal& a, const ErrReal& b) {
  ErrReal r(std::max(a.precision(), b.precision()));
  int t = mpfr_mul(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  Mpfr term(kRad);
  // |a| rb + |b| ra + ra rb
  mpfr_mul(term.get(), abs_up(a.mid_.get()).get(), b.rad_.get(), MPFR_RNDU);
  mpfr_add(r.rad_.get(), r.rad_.get(), term.get(), MPFR_RNDU);
  mpfr_mul(term.get(), abs_up(b.mid_.get()).get(), a.rad_.get(), MPFR_RNDU);
  mpfr_add(r.rad_.get(), r.rad_.get(), term.get(), MPFR_RNDU);
  mpfr_mul(term.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_add(r.rad_.get(), r.rad_.get(), term.get(), MPFR_RNDU);
  r.account(t);
  return r;
}

ErrReal operator/(const ErrReal& a, const ErrReal& b) {
  Mpfr b_abs_lo = abs_down(b.mid_.get());
  Mpfr gap(kRad);
  mpfr_sub(gap.get(), b_abs_lo.get(), b.rad_.get(), MPFR_RNDD);
  if (mpfr_sgn(gap.get()) <= 0) {
    throw Error(ErrorCode::DomainError, "division by a ball containing zero");
  }
  ErrReal r(std::max(a.precision(), b.precision()));
  int t = mpfr_div(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  // (|a| rb + |b| ra) / (|b| (|b| - rb))
  Mpfr num(kRad);
  Mpfr term(kRad);
  mpfr_mul(num.get(), abs_up(a.mid_.get()).get(), b.rad_.get(), MPFR_RNDU);
  mpfr_mul(term.get(), abs_up(b.mid_.get()).get(), a.rad_.get(), MPFR_RNDU);
  mpfr_add(num.get(), num.get(), term.get(), MPFR_RNDU);
  Mpfr den(kRad);
  mpfr_mul(den.get(), b_abs_lo.get(), gap.get(), MPFR_RNDD);
  mpfr_div(r.rad_.get(), num.get(), den.get(), MPFR_RNDU);
  r.account(t);
  return r;
}

ErrReal exp(const ErrReal& x) {
  ErrReal r(x.precision());
  int t = mpfr_exp(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
  if (!x.is_exact()) {
    // |e^y - e^m| <= e^(m + r) r
    Mpfr top(kRad);
    mpfr_add(top.get(), x.mid_.get(), x.rad_.get(), MPFR_RNDU);
    mpfr_exp(top.get(), top.get(), MPFR_RNDU);
    mpfr_mul(r.rad_.get(), top.get(), x.rad_.get(), MPFR_RNDU);
  }
  r.account(t);
  return r;
}

ErrReal log(const ErrReal& x) {
  Mpfr lo(kRad);
  mpfr_sub(lo.get(), x.mid_.get(), x.rad_.get(), MPFR_RNDD);
  if (mpfr_sgn(lo.get()) <= 0) throw Error(ErrorCode::DomainError, "log of a nonpositive ball");
  ErrReal r(x.precision());
  int t = mpfr_log(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
  mpfr_div(r.rad_.get(), x.rad_.get(), lo.get(), MPFR_RNDU);
  r.account(t);
  return r;
}

ErrReal lg(const ErrReal& x) { return log(x) / log(ErrReal::from_int(2, x.precision())); }

ErrReal sqrt(const ErrReal& x) {
  ErrReal r(x.precision());
  if (x.is_exact()) {
    if (mpfr_sgn(x.mid_.get()) < 0) throw Error(ErrorCode::DomainError, "sqrt of a negative value");
    r.account(mpfr_sqrt(r.mid_.get(), x.mid_.get(), MPFR_RNDN));
    return r;
  }
  Mpfr lo(kRad);
  mpfr_sub(lo.get(), x.mid_.get(), x.rad_.get(), MPFR_RNDD);
  if (mpfr_sgn(lo.get()) <= 0) throw Error(ErrorCode::DomainError, "sqrt of a ball reaching zero");
  int t = mpfr_sqrt(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
  // |sqrt(y) - sqrt(m)| <= r / (2 sqrt(lo))
  mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_mul_2ui(lo.get(), lo.get(), 1, MPFR_RNDD);
  mpfr_div(r.rad_.get(), x.rad_.get(), lo.get(), MPFR_RNDU);
  r.account(t);
  return r;
}

ErrReal pow(const ErrReal& base, const ErrReal& exponent) {
  if (base.is_exact() && exponent.is_exact()) {
    if (mpfr_sgn(base.mid_.get()) <= 0) {
      throw Error(ErrorCode::DomainError, "pow needs a positive base");
    }
    ErrReal r(std::max(base.precision(), exponent.precision()));
    r.account(mpfr_pow(r.mid_.get(), base.mid_.get(), exponent.mid_.get(), MPFR_RNDN));
    return r;
  }
  return exp(exponent * log(base));
}

Certainty certify_le(const ErrReal& a, const ErrReal& b) {
  if (mpfr_lessequal_p(a.upper().get(), b.lower().get())) return Certainty::Certified;
  if (mpfr_greater_p(a.lower().get(), b.upper().get())) return Certainty::Violated;
  return Certainty::Undecided;
}

Certainty certify_lt(const ErrReal& a, const ErrReal& b) {
  if (mpfr_less_p(a.upper().get(), b.lower().get())) return Certainty::Certified;
  if (mpfr_greaterequal_p(a.lower().get(), b.upper().get())) return Certainty::Violated;
  return Certainty::Undecided;
}

const char* to_string(Certainty c) noexcept {
  switch (c) {
    case Certainty::Certified: return "certified";
    case Certainty::Undecided: return "undecided";
    case Certainty::Violated: return "violated";
  }
  return "?";
}

mpfr_prec_t default_precision() {
  if (const char* env = std::getenv("PERMREX_PRECISION_BITS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= MPFR_PREC_MIN && v <= 1'000'000) {
      return static_cast<mpfr_prec_t>(v);
    }
  }
  return 200;
}

}  // namespace permrex
