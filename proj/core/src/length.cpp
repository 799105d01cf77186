#include "permrex/length.hpp"

#include <map>

#include "permrex/error.hpp"

namespace permrex {

FTable::FTable(std::size_t max_n) : values_(max_n + 1) {
  if (max_n < 1) throw Error(ErrorCode::InvalidArgs, "FTable needs max_n >= 1");
  values_[1] = 1;
  for (std::size_t n = 2; n <= max_n; ++n) {
    std::size_t lo = n / 2;
    std::size_t hi = n - lo;
    values_[n] = binomial(n, lo) * (values_[lo] + values_[hi]);
  }
}

const BigCount& FTable::operator()(std::size_t n) const {
  if (n < 1 || n >= values_.size()) {
    throw Error(ErrorCode::InvalidArgs, "f(" + std::to_string(n) + ") outside table");
  }
  return values_[n];
}

namespace {

const BigCount& f_memo(std::size_t n, std::map<std::size_t, BigCount>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  BigCount value;
  if (n == 1) {
    value = 1;
  } else {
    std::size_t lo = n / 2;
    BigCount sum = f_memo(lo, memo) + f_memo(n - lo, memo);
    value = binomial(n, lo) * sum;
  }
  return memo.emplace(n, std::move(value)).first->second;
}

}  // namespace

BigCount f(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgs, "f is defined for n >= 1");
  std::map<std::size_t, BigCount> memo;
  return f_memo(n, memo);
}

BigCount t(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgs, "t is defined for n >= 1");
  BigCount acc = 1;
  for (std::size_t m = 2; m <= n; ++m) acc = BigCount(static_cast<unsigned long>(m)) * (acc + 1);
  return acc;
}

BigCount binomial(std::size_t n, std::size_t k) {
  if (k > n) {
    throw Error(ErrorCode::InvalidArgs,
                "binomial(" + std::to_string(n) + ", " + std::to_string(k) + ")");
  }
  BigCount r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigCount factorial(std::size_t n) {
  BigCount r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigCount flat_length(std::size_t n) {
  return BigCount(static_cast<unsigned long>(n)) * factorial(n);
}

OptChoiceReport check_opt_choice(std::size_t n, const FTable& table) {
  if (n < 1) throw Error(ErrorCode::InvalidArgs, "check_opt_choice needs n >= 1");
  if (table.max_n() < n) throw Error(ErrorCode::InvalidArgs, "FTable too small");
  OptChoiceReport rep;
  rep.n = n;
  rep.delta.reserve(n > 0 ? n - 1 : 0);
  const BigCount& fn = table(n);
  BigCount c = n;  // C(n, 1), advanced by the row recurrence
  for (std::size_t k = 1; k < n; ++k) {
    BigCount d = c * (table(k) + table(n - k)) - fn;
    bool balanced = k == n / 2 || k == n - n / 2;
    int s = sgn(d);
    if (!rep.violation && (s < 0 || (s == 0) != balanced)) {
      rep.violation = k;
      rep.passed = false;
    }
    rep.delta.push_back(std::move(d));
    c *= static_cast<unsigned long>(n - k);
    c /= static_cast<unsigned long>(k + 1);
  }
  return rep;
}

OptChoiceReport check_opt_choice(std::size_t n) { return check_opt_choice(n, FTable(n)); }

OptChoiceSweep sweep_opt_choice(std::size_t max_n) {
  if (max_n < 1) throw Error(ErrorCode::InvalidArgs, "sweep needs max_n >= 1");
  FTable table(max_n);
  OptChoiceSweep sweep;
  sweep.max_n = max_n;
  for (std::size_t n = 1; n <= max_n; ++n) {
    OptChoiceReport rep = check_opt_choice(n, table);
    sweep.pairs_checked += rep.delta.size();
    if (!rep.passed) {
      sweep.violating_n.push_back(n);
      sweep.passed = false;
    }
  }
  return sweep;
}

TripleGrowthReport check_triple_growth(std::size_t max_n) {
  if (max_n < 1) throw Error(ErrorCode::InvalidArgs, "check_triple_growth needs N >= 1");
  FTable table(max_n);
  TripleGrowthReport rep;
  rep.max_n = max_n;
  for (std::size_t n = 1; n < max_n; ++n) {
    if (table(n + 1) < 3 * table(n)) {
      rep.violations.push_back(n);
      rep.passed = false;
    }
    mpq_class ratio(table(n + 1), table(n));
    ratio.canonicalize();
    if (!rep.min_ratio || ratio < *rep.min_ratio) {
      rep.min_ratio = ratio;
      rep.argmin = n;
    }
  }
  return rep;
}

}  // namespace permrex
