#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eulerdet/rings/integer.hpp"
#include "eulerdet/rings/padic.hpp"
#include "eulerdet/rings/polynomial.hpp"

namespace eulerdet {

// Element of Z_p[[T]] known modulo (p^a, T^b): exactly b coefficients, each
// reduced mod p^a. Mixed-precision operations return the smaller (a, b).
class IwasawaElement {
 public:
  IwasawaElement(long p, int p_precision, int t_precision, const std::vector<Integer>& coeffs);
  static IwasawaElement from_polynomial(long p, int p_precision, int t_precision, std::initializer_list<long> coeffs);
  static IwasawaElement variable(long p, int p_precision, int t_precision);

  long prime() const { return p_; }
  int p_precision() const { return a_; }
  int t_precision() const { return b_; }
  const std::vector<mpz_class>& raw() const { return c_; }
  Integer coefficient(std::size_t i) const { return i < c_.size() ? Integer(c_[i]) : Integer(0); }
  PAdic padic_coefficient(std::size_t i) const { return PAdic(p_, a_, coefficient(i)); }

  bool is_zero() const;
  bool is_unit() const;
  // min_i v_p(c_i); p_precision() for zero.
  int content_valuation() const;
  IwasawaElement inverse() const;
  IwasawaElement truncate(int p_precision, int t_precision) const;
  // Substitute T = value. Precision of the result is min(a, b * v_p(value))
  // when value != 0, since the unknown tail is divisible by value^b.
  PAdic evaluate(const Integer& value) const;
  std::string to_string() const;

  IwasawaElement operator-() const;
  friend IwasawaElement operator+(const IwasawaElement& x, const IwasawaElement& y);
  friend IwasawaElement operator-(const IwasawaElement& x, const IwasawaElement& y);
  friend IwasawaElement operator*(const IwasawaElement& x, const IwasawaElement& y);
  friend bool operator==(const IwasawaElement& x, const IwasawaElement& y);
  friend std::ostream& operator<<(std::ostream& os, const IwasawaElement& x);

 private:
  IwasawaElement(long p, int a, int b, std::vector<mpz_class> c, mpz_class modulus)
      : p_(p), a_(a), b_(b), c_(std::move(c)), modulus_(std::move(modulus)) {}
  friend struct ring_traits<IwasawaElement>;

  long p_;
  int a_;
  int b_;
  std::vector<mpz_class> c_;
  mpz_class modulus_;
};

struct IwasawaRing {
  long p = 2;
  int p_precision = 1;
  int t_precision = 1;
  friend bool operator==(const IwasawaRing&, const IwasawaRing&) = default;
};

template <>
struct ring_traits<IwasawaElement> {
  using context_type = IwasawaRing;
  static constexpr SnfKind snf_kind = SnfKind::Local;
  static context_type context_of(const IwasawaElement& x) { return {x.p_, x.a_, x.b_}; }
  static IwasawaElement zero(const context_type& c);
  static IwasawaElement one(const context_type& c);
  static IwasawaElement from_int(const context_type& c, long v);
  static bool is_zero(const IwasawaElement& x) { return x.is_zero(); }
  static bool is_unit(const IwasawaElement& x) { return x.is_unit(); }
  static IwasawaElement inverse(const IwasawaElement& x) { return x.inverse(); }
  static bool is_field(const context_type&) { return false; }
  static std::string name(const context_type& c);

  static int content_valuation(const IwasawaElement& x) {
    return x.is_zero() ? kInfiniteValuation : x.content_valuation();
  }
  // Pivots are elements p^k * unit.
  static bool is_pivot(const IwasawaElement& x);
  static IwasawaElement exact_quotient(const IwasawaElement& x, const IwasawaElement& d);
  static IwasawaElement unit_part(const IwasawaElement& x);
  static std::optional<std::pair<IwasawaElement, IwasawaElement>> annihilator(const IwasawaElement& d);
};

struct WeierstrassFactorization {
  int mu = 0;
  int lambda = 0;
  IwasawaElement unit;
  // Monic, non-leading coefficients divisible by p; coefficients mod p^(a - mu).
  Polynomial<PAdic> distinguished;
};

// f = p^mu * unit * distinguished modulo (p^a, T^b), with f read as the
// polynomial of its b known coefficients.
WeierstrassFactorization weierstrass_prepare(const IwasawaElement& f);

// p^mu * distinguished as an element at the precision of `like`.
IwasawaElement normalized_generator(const WeierstrassFactorization& w, const IwasawaElement& like);

// True when x lies in the principal ideal (g) of Z/p^a[T]/(T^b).
bool ideal_contains(const IwasawaElement& g, const IwasawaElement& x);

}  // namespace eulerdet
