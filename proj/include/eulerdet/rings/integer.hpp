#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "eulerdet/errors.hpp"
#include "eulerdet/rings/ring_traits.hpp"

namespace eulerdet {

// Arbitrary-precision integer. Thin value wrapper over mpz_class that keeps
// GMP expression templates out of generic code.
class Integer {
 public:
  Integer() = default;
  Integer(long v) : v_(v) {}  // NOLINT: implicit by design of literal use
  Integer(int v) : v_(v) {}   // NOLINT
  explicit Integer(const mpz_class& v) : v_(v) {}
  explicit Integer(mpz_class&& v) : v_(std::move(v)) {}

  static Integer parse(std::string_view decimal);

  const mpz_class& mpz() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  bool fits_long() const { return v_.fits_slong_p(); }
  long to_long() const;
  std::string to_string() const { return v_.get_str(); }

  Integer operator-() const { return Integer(mpz_class(-v_)); }
  Integer& operator+=(const Integer& o) { v_ += o.v_; return *this; }
  Integer& operator-=(const Integer& o) { v_ -= o.v_; return *this; }
  Integer& operator*=(const Integer& o) { v_ *= o.v_; return *this; }

  friend Integer operator+(const Integer& a, const Integer& b) { return Integer(mpz_class(a.v_ + b.v_)); }
  friend Integer operator-(const Integer& a, const Integer& b) { return Integer(mpz_class(a.v_ - b.v_)); }
  friend Integer operator*(const Integer& a, const Integer& b) { return Integer(mpz_class(a.v_ * b.v_)); }
  friend bool operator==(const Integer& a, const Integer& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Integer& x);

 private:
  mpz_class v_;
};

Integer abs(const Integer& x);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer pow(const Integer& base, unsigned long e);
// Floor division and the matching non-negative remainder (for b > 0).
std::pair<Integer, Integer> floor_divmod(const Integer& a, const Integer& b);
// Quotient rounded toward zero; used by the Euclidean Smith form.
Integer trunc_div(const Integer& a, const Integer& b);
bool divides(const Integer& d, const Integer& x);
// Largest k with p^k | x, or kInfiniteValuation for x == 0.
int valuation(const Integer& x, long p);
bool is_prime(long n);
long mod_long(const Integer& x, long m);  // in [0, m)

struct IntegerRing {
  friend bool operator==(const IntegerRing&, const IntegerRing&) = default;
};

template <>
struct ring_traits<Integer> {
  using context_type = IntegerRing;
  static constexpr SnfKind snf_kind = SnfKind::Euclidean;
  static context_type context_of(const Integer&) { return {}; }
  static Integer zero(const context_type&) { return Integer(0); }
  static Integer one(const context_type&) { return Integer(1); }
  static Integer from_int(const context_type&, long v) { return Integer(v); }
  static bool is_zero(const Integer& x) { return x.is_zero(); }
  static bool is_unit(const Integer& x) { return x == Integer(1) || x == Integer(-1); }
  static Integer inverse(const Integer& x) {
    if (!is_unit(x)) throw Error(ErrorCode::DomainMismatch, "integer " + x.to_string() + " is not a unit");
    return x;
  }
  static bool is_field(const context_type&) { return false; }
  static std::string name(const context_type&) { return "Z"; }
};

}  // namespace eulerdet
