#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "eulerdet/rings/integer.hpp"
#include "eulerdet/rings/rational.hpp"

namespace eulerdet {

// Element of Z/p^n, read as a p-adic integer known to precision n. Binary
// operations between elements of different precision return the lower one.
class PAdic {
 public:
  PAdic(long p, int precision, const Integer& value);
  static PAdic from_rational(long p, int precision, const BigRational& value);

  long prime() const { return p_; }
  int precision() const { return n_; }
  Integer residue() const { return Integer(residue_); }
  Integer modulus() const { return Integer(modulus_); }
  const mpz_class& residue_mpz() const { return residue_; }

  bool is_zero() const { return sgn(residue_) == 0; }
  // Largest k <= precision with p^k | residue; equals precision for zero.
  int valuation() const;
  bool is_unit() const { return valuation() == 0; }
  PAdic inverse() const;
  PAdic reduce_to(int precision) const;
  std::string to_string() const;

  PAdic operator-() const;
  friend PAdic operator+(const PAdic& a, const PAdic& b);
  friend PAdic operator-(const PAdic& a, const PAdic& b);
  friend PAdic operator*(const PAdic& a, const PAdic& b);
  // Equality at the smaller of the two precisions.
  friend bool operator==(const PAdic& a, const PAdic& b);

  friend std::ostream& operator<<(std::ostream& os, const PAdic& x);

 private:
  PAdic(long p, int n, mpz_class modulus, mpz_class residue)
      : p_(p), n_(n), modulus_(std::move(modulus)), residue_(std::move(residue)) {}
  static void check_compatible(const PAdic& a, const PAdic& b);

  long p_;
  int n_;
  mpz_class modulus_;
  mpz_class residue_;
};

struct PAdicRing {
  long p = 2;
  int precision = 1;
  friend bool operator==(const PAdicRing&, const PAdicRing&) = default;
};

template <>
struct ring_traits<PAdic> {
  using context_type = PAdicRing;
  static constexpr SnfKind snf_kind = SnfKind::Local;
  static context_type context_of(const PAdic& x) { return {x.prime(), x.precision()}; }
  static PAdic zero(const context_type& c) { return PAdic(c.p, c.precision, Integer(0)); }
  static PAdic one(const context_type& c) { return PAdic(c.p, c.precision, Integer(1)); }
  static PAdic from_int(const context_type& c, long v) { return PAdic(c.p, c.precision, Integer(v)); }
  static bool is_zero(const PAdic& x) { return x.is_zero(); }
  static bool is_unit(const PAdic& x) { return x.is_unit(); }
  static PAdic inverse(const PAdic& x) { return x.inverse(); }
  static bool is_field(const context_type& c) { return c.precision == 1; }
  static std::string name(const context_type& c) {
    return c.precision == 1 ? "F_" + std::to_string(c.p)
                            : "Z/" + std::to_string(c.p) + "^" + std::to_string(c.precision);
  }

  static int content_valuation(const PAdic& x) { return x.is_zero() ? kInfiniteValuation : x.valuation(); }
  static bool is_pivot(const PAdic& x) { return !x.is_zero(); }
  static PAdic exact_quotient(const PAdic& x, const PAdic& d);
  static PAdic unit_part(const PAdic& x);
  static std::optional<std::pair<PAdic, PAdic>> annihilator(const PAdic& d);
};

}  // namespace eulerdet
