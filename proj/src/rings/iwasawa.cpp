#include "eulerdet/rings/iwasawa.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "eulerdet/linalg/smith.hpp"

namespace eulerdet {

namespace {

mpz_class prime_power(long p, int n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
  return r;
}

mpz_class reduce(const mpz_class& v, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

int mpz_valuation(const mpz_class& v, long p, int cap) {
  if (sgn(v) == 0) return cap;
  mpz_class t = v;
  mpz_class pp(p);
  int k = static_cast<int>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t()));
  return std::min(k, cap);
}

using Series = std::vector<mpz_class>;

// Product truncated to n terms, reduced mod m.
Series mul_trunc(const Series& x, const Series& y, std::size_t n, const mpz_class& m) {
  Series r(n, 0);
  for (std::size_t i = 0; i < std::min(n, x.size()); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < y.size() && i + j < n; ++j) r[i + j] += x[i] * y[j];
  }
  for (auto& c : r) c = reduce(c, m);
  return r;
}

// Inverse of a series with unit constant term, n terms, mod m.
Series inverse_trunc(const Series& x, std::size_t n, const mpz_class& m) {
  Series r(n, 0);
  mpz_class u;
  if (mpz_invert(u.get_mpz_t(), x.at(0).get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(ErrorCode::DomainMismatch, "power series with non-unit constant term is not invertible");
  }
  r[0] = u;
  for (std::size_t k = 1; k < n; ++k) {
    mpz_class s = 0;
    for (std::size_t j = 1; j <= k && j < x.size(); ++j) s += x[j] * r[k - j];
    r[k] = reduce(-u * s, m);
  }
  return r;
}

void check_same_prime(const IwasawaElement& x, const IwasawaElement& y) {
  if (x.prime() != y.prime()) {
    throw Error(ErrorCode::DomainMismatch, "Iwasawa elements over different primes " + std::to_string(x.prime()) +
                                               " and " + std::to_string(y.prime()));
  }
}

}  // namespace

IwasawaElement::IwasawaElement(long p, int p_precision, int t_precision, const std::vector<Integer>& coeffs)
    : p_(p), a_(p_precision), b_(t_precision) {
  if (p < 2) throw Error(ErrorCode::InvalidArgument, "Iwasawa prime must be >= 2");
  if (a_ < 1 || b_ < 1) throw Error(ErrorCode::InvalidArgument, "Iwasawa precisions must be >= 1");
  modulus_ = prime_power(p, a_);
  c_.assign(static_cast<std::size_t>(b_), 0);
  for (std::size_t i = 0; i < coeffs.size() && i < c_.size(); ++i) c_[i] = reduce(coeffs[i].mpz(), modulus_);
}

IwasawaElement IwasawaElement::from_polynomial(long p, int p_precision, int t_precision,
                                               std::initializer_list<long> coeffs) {
  std::vector<Integer> v(coeffs.begin(), coeffs.end());
  return IwasawaElement(p, p_precision, t_precision, v);
}

IwasawaElement IwasawaElement::variable(long p, int p_precision, int t_precision) {
  return from_polynomial(p, p_precision, t_precision, {0, 1});
}

bool IwasawaElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpz_class& c) { return sgn(c) == 0; });
}

bool IwasawaElement::is_unit() const { return mpz_valuation(c_[0], p_, a_) == 0; }

int IwasawaElement::content_valuation() const {
  int v = a_;
  for (const auto& c : c_) v = std::min(v, mpz_valuation(c, p_, a_));
  return v;
}

IwasawaElement IwasawaElement::inverse() const {
  if (!is_unit()) throw Error(ErrorCode::DomainMismatch, to_string() + " is not a unit");
  return IwasawaElement(p_, a_, b_, inverse_trunc(c_, c_.size(), modulus_), modulus_);
}

IwasawaElement IwasawaElement::truncate(int p_precision, int t_precision) const {
  int a = std::min(a_, p_precision);
  int b = std::min(b_, t_precision);
  if (a < 1 || b < 1) throw Error(ErrorCode::PrecisionExhausted, "truncation below precision 1");
  mpz_class m = prime_power(p_, a);
  Series c(c_.begin(), c_.begin() + b);
  for (auto& x : c) x = reduce(x, m);
  return IwasawaElement(p_, a, b, std::move(c), std::move(m));
}

PAdic IwasawaElement::evaluate(const Integer& value) const {
  int prec = a_;
  if (!value.is_zero()) {
    int v = valuation(value, p_);
    long bound = static_cast<long>(b_) * v;
    if (bound < prec) prec = static_cast<int>(bound);
  }
  if (prec < 1) {
    throw Error(ErrorCode::PrecisionExhausted,
                "evaluation at " + value.to_string() + " has no p-adic precision left with T-precision " +
                    std::to_string(b_));
  }
  mpz_class m = prime_power(p_, prec);
  mpz_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = reduce(acc * value.mpz() + *it, m);
  return PAdic(p_, prec, Integer(acc));
}

std::string IwasawaElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i].get_str();
    if (i == 1) os << "*T";
    if (i > 1) os << "*T^" << i;
  }
  if (first) os << "0";
  os << " + O(" << p_ << "^" << a_ << ", T^" << b_ << ")";
  return os.str();
}

IwasawaElement IwasawaElement::operator-() const {
  Series c(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = reduce(-c_[i], modulus_);
  return IwasawaElement(p_, a_, b_, std::move(c), modulus_);
}

IwasawaElement operator+(const IwasawaElement& x, const IwasawaElement& y) {
  check_same_prime(x, y);
  int a = std::min(x.a_, y.a_);
  int b = std::min(x.b_, y.b_);
  const mpz_class& m = x.a_ <= y.a_ ? x.modulus_ : y.modulus_;
  Series c(static_cast<std::size_t>(b));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = reduce(x.c_[i] + y.c_[i], m);
  return IwasawaElement(x.p_, a, b, std::move(c), m);
}

IwasawaElement operator-(const IwasawaElement& x, const IwasawaElement& y) { return x + (-y); }

IwasawaElement operator*(const IwasawaElement& x, const IwasawaElement& y) {
  check_same_prime(x, y);
  int a = std::min(x.a_, y.a_);
  int b = std::min(x.b_, y.b_);
  const mpz_class& m = x.a_ <= y.a_ ? x.modulus_ : y.modulus_;
  return IwasawaElement(x.p_, a, b, mul_trunc(x.c_, y.c_, static_cast<std::size_t>(b), m), m);
}

bool operator==(const IwasawaElement& x, const IwasawaElement& y) {
  if (x.p_ != y.p_) return false;
  const mpz_class& m = x.a_ <= y.a_ ? x.modulus_ : y.modulus_;
  std::size_t b = static_cast<std::size_t>(std::min(x.b_, y.b_));
  for (std::size_t i = 0; i < b; ++i) {
    if (reduce(x.c_[i] - y.c_[i], m) != 0) return false;
  }
  return true;
}

std::ostream& operator<<(std::ostream& os, const IwasawaElement& x) { return os << x.to_string(); }

IwasawaElement ring_traits<IwasawaElement>::zero(const context_type& c) {
  return IwasawaElement(c.p, c.p_precision, c.t_precision, {});
}

IwasawaElement ring_traits<IwasawaElement>::one(const context_type& c) { return from_int(c, 1); }

IwasawaElement ring_traits<IwasawaElement>::from_int(const context_type& c, long v) {
  return IwasawaElement(c.p, c.p_precision, c.t_precision, {Integer(v)});
}

std::string ring_traits<IwasawaElement>::name(const context_type& c) {
  return "Z/" + std::to_string(c.p) + "^" + std::to_string(c.p_precision) + "[[T]]/T^" +
         std::to_string(c.t_precision);
}

bool ring_traits<IwasawaElement>::is_pivot(const IwasawaElement& x) {
  if (x.is_zero()) return false;
  return mpz_valuation(x.c_[0], x.p_, x.a_) == x.content_valuation();
}

IwasawaElement ring_traits<IwasawaElement>::unit_part(const IwasawaElement& x) {
  if (!is_pivot(x)) throw Error(ErrorCode::UnsupportedRing, x.to_string() + " is not p^k times a unit");
  int k = x.content_valuation();
  mpz_class pk = prime_power(x.p_, k);
  Series c(x.c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) mpz_divexact(c[i].get_mpz_t(), x.c_[i].get_mpz_t(), pk.get_mpz_t());
  return IwasawaElement(x.p_, x.a_, x.b_, std::move(c), x.modulus_);
}

// Any lift of x / p^k works: q * p^k * u reproduces x modulo p^a.
IwasawaElement ring_traits<IwasawaElement>::exact_quotient(const IwasawaElement& x, const IwasawaElement& d) {
  check_same_prime(x, d);
  int k = d.content_valuation();
  if (!is_pivot(d) || x.content_valuation() < k) {
    throw Error(ErrorCode::DomainMismatch, d.to_string() + " does not divide " + x.to_string());
  }
  mpz_class pk = prime_power(x.p_, k);
  Series c(x.c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) mpz_divexact(c[i].get_mpz_t(), x.c_[i].get_mpz_t(), pk.get_mpz_t());
  IwasawaElement lifted(x.p_, x.a_, x.b_, std::move(c), x.modulus_);
  return lifted * unit_part(d).inverse();
}

std::optional<std::pair<IwasawaElement, IwasawaElement>> ring_traits<IwasawaElement>::annihilator(
    const IwasawaElement& d) {
  context_type ctx = context_of(d);
  if (d.is_zero()) return std::make_pair(one(ctx), zero(ctx));
  if (!is_pivot(d)) throw Error(ErrorCode::UnsupportedRing, "annihilator of " + d.to_string());
  int k = d.content_valuation();
  if (k == 0) return std::nullopt;
  IwasawaElement g(d.p_, d.a_, d.b_, {Integer(prime_power(d.p_, d.a_ - k))});
  IwasawaElement o(d.p_, d.a_, d.b_, {Integer(prime_power(d.p_, k))});
  return std::make_pair(g, o);
}

WeierstrassFactorization weierstrass_prepare(const IwasawaElement& f) {
  if (f.is_zero()) {
    throw Error(ErrorCode::PrecisionExhausted, "cannot prepare an element that vanishes at working precision");
  }
  const long p = f.prime();
  const int a = f.p_precision();
  const int b = f.t_precision();
  const int mu = f.content_valuation();
  const int ap = a - mu;
  const mpz_class m = prime_power(p, ap);
  const mpz_class pmu = prime_power(p, mu);

  Series g(f.raw().size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    mpz_divexact(g[i].get_mpz_t(), f.raw()[i].get_mpz_t(), pmu.get_mpz_t());
    g[i] = reduce(g[i], m);
  }
  std::size_t lambda = 0;
  while (lambda < g.size() && mpz_valuation(g[lambda], p, ap) != 0) ++lambda;
  if (lambda >= static_cast<std::size_t>(b)) {
    throw Error(ErrorCode::PrecisionExhausted, "lambda-invariant is not below the T-precision");
  }

  // g = B + T^lambda C with B = 0 mod p and C a unit. The unit inverse q
  // solves q C = 1 - shift(q B); iteration gains one power of p per step and
  // loses lambda T-coefficients, so work with N terms.
  const std::size_t N = static_cast<std::size_t>(b) + lambda * static_cast<std::size_t>(ap) + lambda;
  Series B(g.begin(), g.begin() + static_cast<long>(lambda));
  Series C(g.begin() + static_cast<long>(lambda), g.end());
  Series cinv = inverse_trunc(C, N, m);
  Series q = cinv;
  for (int it = 0; it <= ap; ++it) {
    Series qb = mul_trunc(q, B, N + lambda, m);
    Series rhs(N, 0);
    rhs[0] = 1;
    for (std::size_t i = 0; i < N; ++i) {
      if (i + lambda < qb.size()) rhs[i] = reduce(rhs[i] - qb[i + lambda], m);
    }
    q = mul_trunc(cinv, rhs, N, m);
  }
  Series qg = mul_trunc(q, g, lambda + 1, m);
  std::vector<PAdic> pc;
  for (std::size_t i = 0; i < lambda; ++i) pc.emplace_back(p, ap, Integer(qg[i]));
  pc.emplace_back(p, ap, Integer(1));
  Polynomial<PAdic> distinguished(PAdicRing{p, ap}, std::move(pc));

  Series qb(q.begin(), q.begin() + b);
  Series u = inverse_trunc(qb, static_cast<std::size_t>(b), m);
  std::vector<Integer> ui;
  for (auto& x : u) ui.emplace_back(x);
  IwasawaElement unit(p, ap, b, ui);

  WeierstrassFactorization w{mu, static_cast<int>(lambda), unit, distinguished};
  // Round trip at the precision of f.
  std::vector<Integer> lifted;
  for (auto& x : u) lifted.emplace_back(x);
  IwasawaElement check = normalized_generator(w, f) * IwasawaElement(p, a, b, lifted);
  if (!(check == f)) {
    throw Error(ErrorCode::PrecisionExhausted, "Weierstrass factorization did not reproduce " + f.to_string());
  }
  return w;
}

IwasawaElement normalized_generator(const WeierstrassFactorization& w, const IwasawaElement& like) {
  const long p = like.prime();
  mpz_class pmu = prime_power(p, w.mu);
  std::vector<Integer> c;
  for (const auto& x : w.distinguished.coefficients()) c.emplace_back(mpz_class(x.residue_mpz() * pmu));
  return IwasawaElement(p, like.p_precision(), like.t_precision(), c);
}

bool ideal_contains(const IwasawaElement& g, const IwasawaElement& x) {
  check_same_prime(g, x);
  const long p = g.prime();
  const int a = std::min(g.p_precision(), x.p_precision());
  const std::size_t b = static_cast<std::size_t>(std::min(g.t_precision(), x.t_precision()));
  PAdicRing ctx{p, a};
  // Multiplication by g on Z/p^a[T]/T^b is lower-triangular Toeplitz.
  Matrix<PAdic> M(ctx, b, b);
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j <= i; ++j) M(i, j) = PAdic(p, a, g.coefficient(i - j));
  Matrix<PAdic> rhs(ctx, b, 1);
  for (std::size_t i = 0; i < b; ++i) rhs(i, 0) = PAdic(p, a, x.coefficient(i));
  auto s = smith_normal_form(M);
  Matrix<PAdic> y = s.U * rhs;
  for (std::size_t i = 0; i < b; ++i) {
    const PAdic& d = s.D(i, i);
    int vd = d.is_zero() ? a : d.valuation();
    int vy = y(i, 0).is_zero() ? a : y(i, 0).valuation();
    if (vy < vd) return false;
  }
  return true;
}

}  // namespace eulerdet
