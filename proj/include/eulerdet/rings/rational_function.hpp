#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "eulerdet/rings/polynomial.hpp"

namespace eulerdet {

// Element of the fraction field K(T) stored as a coprime pair with monic
// denominator. K must be a field.
template <class K>
class RationalFunction {
 public:
  using poly = Polynomial<K>;
  using base_context = ring_context_t<K>;

  explicit RationalFunction(base_context ctx)
      : num_(ctx), den_(poly::constant(ring_traits<K>::one(ctx))) {}
  RationalFunction(poly num)  // NOLINT: polynomials embed in their fraction field
      : num_(std::move(num)), den_(poly::constant(ring_traits<K>::one(num_.base()))) {}
  RationalFunction(poly num, poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RationalFunction constant(const K& c) { return RationalFunction(poly::constant(c)); }
  static RationalFunction variable(const base_context& ctx) { return RationalFunction(poly::variable(ctx)); }

  const poly& numerator() const { return num_; }
  const poly& denominator() const { return den_; }
  const base_context& base() const { return num_.base(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  // Degree of T in the constant-term sense: true when the value is in K.
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  // Value at T = t; nullopt when the denominator vanishes there.
  std::optional<K> try_evaluate(const K& t) const {
    K d = den_.evaluate(t);
    if (ring_traits<K>::is_zero(d)) return std::nullopt;
    return num_.evaluate(t) * ring_traits<K>::inverse(d);
  }
  K evaluate(const K& t) const {
    auto v = try_evaluate(t);
    if (!v) throw Error(ErrorCode::DomainMismatch, "rational function has a pole at the evaluation point");
    return *v;
  }

  RationalFunction inverse() const {
    if (is_zero()) throw Error(ErrorCode::DomainMismatch, "inverse of zero rational function");
    return RationalFunction(den_, num_);
  }

  RationalFunction operator-() const { return RationalFunction(-num_, den_, Normalized{}); }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunction(a.base());
    if (a.is_polynomial() && b.is_polynomial()) return RationalFunction(a.num_ * b.num_, poly::constant(ring_traits<K>::one(a.base())), Normalized{});
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string(const std::string& var = "T") const {
    if (is_polynomial()) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const RationalFunction& x) { return os << x.to_string(); }

 private:
  struct Normalized {};
  RationalFunction(poly num, poly den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    if (den_.is_zero()) throw Error(ErrorCode::InvalidArgument, "rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = poly::constant(ring_traits<K>::one(num_.base()));
      return;
    }
    if (den_.degree() > 0) {
      poly g = poly_gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = poly_exact_div(num_, g);
        den_ = poly_exact_div(den_, g);
      }
    }
    K lead_inv = ring_traits<K>::inverse(den_.leading());
    num_ = lead_inv * num_;
    den_ = lead_inv * den_;
  }

  poly num_;
  poly den_;
};

template <class K>
struct ring_traits<RationalFunction<K>> {
  using context_type = PolynomialRing<K>;
  static constexpr SnfKind snf_kind = SnfKind::Local;
  static context_type context_of(const RationalFunction<K>& x) { return {x.base()}; }
  static RationalFunction<K> zero(const context_type& c) { return RationalFunction<K>(c.base); }
  static RationalFunction<K> one(const context_type& c) {
    return RationalFunction<K>::constant(ring_traits<K>::one(c.base));
  }
  static RationalFunction<K> from_int(const context_type& c, long v) {
    return RationalFunction<K>::constant(ring_traits<K>::from_int(c.base, v));
  }
  static bool is_zero(const RationalFunction<K>& x) { return x.is_zero(); }
  static bool is_unit(const RationalFunction<K>& x) { return !x.is_zero(); }
  static RationalFunction<K> inverse(const RationalFunction<K>& x) { return x.inverse(); }
  static bool is_field(const context_type&) { return true; }
  static std::string name(const context_type& c) { return ring_traits<K>::name(c.base) + "(T)"; }

  static int content_valuation(const RationalFunction<K>& x) { return x.is_zero() ? kInfiniteValuation : 0; }
  static bool is_pivot(const RationalFunction<K>& x) { return !x.is_zero(); }
  static RationalFunction<K> exact_quotient(const RationalFunction<K>& x, const RationalFunction<K>& d) { return x / d; }
  static RationalFunction<K> unit_part(const RationalFunction<K>& x) { return x; }
  static std::optional<std::pair<RationalFunction<K>, RationalFunction<K>>> annihilator(const RationalFunction<K>& d) {
    if (d.is_zero()) return std::make_pair(one(context_of(d)), zero(context_of(d)));
    return std::nullopt;
  }
};

}  // namespace eulerdet
