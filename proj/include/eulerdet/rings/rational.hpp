#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "eulerdet/rings/integer.hpp"

namespace eulerdet {

// Exact rational number in lowest terms with positive denominator.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long v) : v_(v) {}  // NOLINT
  BigRational(int v) : v_(v) {}   // NOLINT
  BigRational(const Integer& v) : v_(v.mpz()) {}  // NOLINT
  BigRational(const Integer& num, const Integer& den);
  explicit BigRational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Accepts "a", "-a", "a/b".
  static BigRational parse(std::string_view text);

  const mpq_class& mpq() const { return v_; }
  Integer numerator() const { return Integer(mpz_class(v_.get_num())); }
  Integer denominator() const { return Integer(mpz_class(v_.get_den())); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }
  BigRational inverse() const;
  std::string to_string() const { return v_.get_str(); }
  // Double approximation; only used for diagnostics, never for decisions.
  double to_double() const { return v_.get_d(); }

  BigRational operator-() const { return BigRational(mpq_class(-v_)); }
  friend BigRational operator+(const BigRational& a, const BigRational& b) { return BigRational(mpq_class(a.v_ + b.v_)); }
  friend BigRational operator-(const BigRational& a, const BigRational& b) { return BigRational(mpq_class(a.v_ - b.v_)); }
  friend BigRational operator*(const BigRational& a, const BigRational& b) { return BigRational(mpq_class(a.v_ * b.v_)); }
  friend BigRational operator/(const BigRational& a, const BigRational& b);
  friend bool operator==(const BigRational& a, const BigRational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRational& x);

 private:
  mpq_class v_;
};

BigRational pow(const BigRational& base, long e);
// v_p of a rational; kInfiniteValuation for zero. May be negative.
int valuation(const BigRational& x, long p);
bool is_p_integral(const BigRational& x, long p);

struct RationalField {
  friend bool operator==(const RationalField&, const RationalField&) = default;
};

template <>
struct ring_traits<BigRational> {
  using context_type = RationalField;
  static constexpr SnfKind snf_kind = SnfKind::Local;
  static context_type context_of(const BigRational&) { return {}; }
  static BigRational zero(const context_type&) { return BigRational(0); }
  static BigRational one(const context_type&) { return BigRational(1); }
  static BigRational from_int(const context_type&, long v) { return BigRational(v); }
  static bool is_zero(const BigRational& x) { return x.is_zero(); }
  static bool is_unit(const BigRational& x) { return !x.is_zero(); }
  static BigRational inverse(const BigRational& x) { return x.inverse(); }
  static bool is_field(const context_type&) { return true; }
  static std::string name(const context_type&) { return "Q"; }

  static int content_valuation(const BigRational& x) { return x.is_zero() ? kInfiniteValuation : 0; }
  static bool is_pivot(const BigRational& x) { return !x.is_zero(); }
  static BigRational exact_quotient(const BigRational& x, const BigRational& d) { return x / d; }
  static BigRational unit_part(const BigRational& x) { return x; }
  static std::optional<std::pair<BigRational, BigRational>> annihilator(const BigRational& d) {
    if (d.is_zero()) return std::make_pair(BigRational(1), BigRational(0));
    return std::nullopt;
  }
};

}  // namespace eulerdet
