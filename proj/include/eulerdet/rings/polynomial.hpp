#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eulerdet/errors.hpp"
#include "eulerdet/rings/ring_traits.hpp"

namespace eulerdet {

template <class R>
struct PolynomialRing {
  ring_context_t<R> base;
  friend bool operator==(const PolynomialRing&, const PolynomialRing&) = default;
};

// Dense univariate polynomial, lowest degree first. The zero polynomial has
// an empty coefficient vector and degree -1.
template <class R>
class Polynomial {
 public:
  using coefficient_type = R;
  using base_context = ring_context_t<R>;

  explicit Polynomial(base_context ctx) : ctx_(std::move(ctx)) {}
  Polynomial(base_context ctx, std::vector<R> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const R& c) { return Polynomial(ring_traits<R>::context_of(c), {c}); }
  static Polynomial monomial(const base_context& ctx, const R& c, std::size_t k) {
    std::vector<R> v(k + 1, ring_traits<R>::zero(ctx));
    v[k] = c;
    return Polynomial(ctx, std::move(v));
  }
  static Polynomial variable(const base_context& ctx) { return monomial(ctx, ring_traits<R>::one(ctx), 1); }
  static Polynomial from_ints(const base_context& ctx, std::initializer_list<long> lows_first) {
    std::vector<R> v;
    for (long x : lows_first) v.push_back(ring_traits<R>::from_int(ctx, x));
    return Polynomial(ctx, std::move(v));
  }

  const base_context& base() const { return ctx_; }
  const std::vector<R>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  R coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : ring_traits<R>::zero(ctx_); }
  const R& leading() const {
    if (c_.empty()) throw Error(ErrorCode::InvalidArgument, "leading coefficient of zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back() == ring_traits<R>::one(ctx_); }

  R evaluate(const R& x) const {
    R acc = ring_traits<R>::zero(ctx_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    std::vector<R> d;
    for (std::size_t i = 1; i < c_.size(); ++i) {
      d.push_back(ring_traits<R>::from_int(ctx_, static_cast<long>(i)) * c_[i]);
    }
    return Polynomial(ctx_, std::move(d));
  }

  // Coefficient i of X^n p(1/X), n = max(degree, min_degree).
  Polynomial reversed(std::size_t n) const {
    std::vector<R> v(n + 1, ring_traits<R>::zero(ctx_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i > n) throw Error(ErrorCode::InvalidArgument, "reversal degree below polynomial degree");
      v[n - i] = c_[i];
    }
    return Polynomial(ctx_, std::move(v));
  }

  Polynomial operator-() const {
    std::vector<R> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(-x);
    return Polynomial(ctx_, std::move(v));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    std::vector<R> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(a.coefficient(i) + b.coefficient(i));
    return Polynomial(a.ctx_, std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ctx_);
    std::vector<R> v(a.c_.size() + b.c_.size() - 1, ring_traits<R>::zero(a.ctx_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (ring_traits<R>::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    }
    return Polynomial(a.ctx_, std::move(v));
  }
  friend Polynomial operator*(const R& s, const Polynomial& a) {
    std::vector<R> v;
    v.reserve(a.c_.size());
    for (const auto& x : a.c_) v.push_back(s * x);
    return Polynomial(a.ctx_, std::move(v));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!(a.c_[i] == b.c_[i])) return false;
    }
    return true;
  }

  // Division with remainder by a polynomial whose leading coefficient is a unit.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
    if (!ring_traits<R>::is_unit(d.leading())) {
      throw Error(ErrorCode::UnsupportedRing, "divisor leading coefficient is not a unit");
    }
    R inv = ring_traits<R>::inverse(d.leading());
    std::vector<R> rem = c_;
    int dd = d.degree();
    int qd = degree() - dd;
    if (qd < 0) return {Polynomial(ctx_), *this};
    std::vector<R> q(static_cast<std::size_t>(qd) + 1, ring_traits<R>::zero(ctx_));
    for (int k = qd; k >= 0; --k) {
      R coef = rem[static_cast<std::size_t>(k + dd)] * inv;
      q[static_cast<std::size_t>(k)] = coef;
      if (ring_traits<R>::is_zero(coef)) continue;
      for (int j = 0; j <= dd; ++j) {
        auto idx = static_cast<std::size_t>(k + j);
        rem[idx] = rem[idx] - coef * d.c_[static_cast<std::size_t>(j)];
      }
    }
    rem.resize(static_cast<std::size_t>(dd), ring_traits<R>::zero(ctx_));
    return {Polynomial(ctx_, std::move(q)), Polynomial(ctx_, std::move(rem))};
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return ring_traits<R>::inverse(leading()) * *this;
  }

  std::string to_string(const std::string& var = "X") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (ring_traits<R>::is_zero(c_[i])) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c_[i] << ")";
      if (i == 1) os << "*" << var;
      if (i > 1) os << "*" << var << "^" << i;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

 private:
  void trim() {
    while (!c_.empty() && ring_traits<R>::is_zero(c_.back())) c_.pop_back();
  }

  base_context ctx_;
  std::vector<R> c_;
};

template <class R>
Polynomial<R> poly_pow(const Polynomial<R>& base, unsigned e) {
  Polynomial<R> acc = Polynomial<R>::constant(ring_traits<R>::one(base.base()));
  for (unsigned i = 0; i < e; ++i) acc = acc * base;
  return acc;
}

// Monic gcd over a field.
template <class R>
Polynomial<R> poly_gcd(Polynomial<R> a, Polynomial<R> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Exact quotient; throws when the division leaves a remainder.
template <class R>
Polynomial<R> poly_exact_div(const Polynomial<R>& a, const Polynomial<R>& b) {
  auto [q, r] = a.divmod(b);
  if (!r.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division is not exact");
  return q;
}

// Compose p(c * X): scales coefficient i by c^i.
template <class R>
Polynomial<R> poly_scale_variable(const Polynomial<R>& p, const R& c) {
  std::vector<R> v;
  R pw = ring_traits<R>::one(p.base());
  for (const auto& x : p.coefficients()) {
    v.push_back(x * pw);
    pw = pw * c;
  }
  return Polynomial<R>(p.base(), std::move(v));
}

template <class R>
struct ring_traits<Polynomial<R>> {
  using context_type = PolynomialRing<R>;
  static constexpr SnfKind snf_kind = SnfKind::Unsupported;
  static context_type context_of(const Polynomial<R>& x) { return {x.base()}; }
  static Polynomial<R> zero(const context_type& c) { return Polynomial<R>(c.base); }
  static Polynomial<R> one(const context_type& c) { return Polynomial<R>::constant(ring_traits<R>::one(c.base)); }
  static Polynomial<R> from_int(const context_type& c, long v) {
    return Polynomial<R>::constant(ring_traits<R>::from_int(c.base, v));
  }
  static bool is_zero(const Polynomial<R>& x) { return x.is_zero(); }
  // Constant units only; nilpotent perturbations over non-reduced bases are
  // not detected.
  static bool is_unit(const Polynomial<R>& x) { return x.degree() == 0 && ring_traits<R>::is_unit(x.leading()); }
  static Polynomial<R> inverse(const Polynomial<R>& x) {
    if (!is_unit(x)) throw Error(ErrorCode::DomainMismatch, "polynomial is not a unit");
    return Polynomial<R>::constant(ring_traits<R>::inverse(x.leading()));
  }
  static bool is_field(const context_type&) { return false; }
  static std::string name(const context_type& c) { return ring_traits<R>::name(c.base) + "[T]"; }
};

}  // namespace eulerdet
