#include "eulerdet/rings/padic.hpp"

#include <ostream>

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

}  // namespace

PAdic::PAdic(long p, int precision, const Integer& value) : p_(p), n_(precision) {
  if (p < 2) throw Error(ErrorCode::InvalidArgument, "p-adic prime must be >= 2");
  if (precision < 1) throw Error(ErrorCode::InvalidArgument, "p-adic precision must be >= 1");
  modulus_ = prime_power(p, precision);
  residue_ = reduce(value.mpz(), modulus_);
}

PAdic PAdic::from_rational(long p, int precision, const BigRational& value) {
  if (!is_p_integral(value, p)) {
    throw Error(ErrorCode::DomainMismatch, value.to_string() + " is not " + std::to_string(p) + "-integral");
  }
  PAdic num(p, precision, value.numerator());
  PAdic den(p, precision, value.denominator());
  return num * den.inverse();
}

int PAdic::valuation() const {
  if (is_zero()) return n_;
  mpz_class t = residue_;
  mpz_class pp(p_);
  return static_cast<int>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t()));
}

PAdic PAdic::inverse() const {
  if (!is_unit()) {
    throw Error(ErrorCode::DomainMismatch, to_string() + " is not a unit in Z/" + std::to_string(p_) + "^" +
                                               std::to_string(n_));
  }
  mpz_class r;
  mpz_invert(r.get_mpz_t(), residue_.get_mpz_t(), modulus_.get_mpz_t());
  return PAdic(p_, n_, modulus_, r);
}

PAdic PAdic::reduce_to(int precision) const {
  if (precision >= n_) return *this;
  if (precision < 1) throw Error(ErrorCode::PrecisionExhausted, "precision dropped below 1");
  mpz_class m = prime_power(p_, precision);
  return PAdic(p_, precision, m, reduce(residue_, m));
}

std::string PAdic::to_string() const {
  return residue_.get_str() + " mod " + std::to_string(p_) + "^" + std::to_string(n_);
}

void PAdic::check_compatible(const PAdic& a, const PAdic& b) {
  if (a.p_ != b.p_) {
    throw Error(ErrorCode::DomainMismatch,
                "mixing primes " + std::to_string(a.p_) + " and " + std::to_string(b.p_));
  }
}

PAdic PAdic::operator-() const { return PAdic(p_, n_, modulus_, reduce(mpz_class(-residue_), modulus_)); }

PAdic operator+(const PAdic& a, const PAdic& b) {
  PAdic::check_compatible(a, b);
  const PAdic& lo = a.n_ <= b.n_ ? a : b;
  return PAdic(lo.p_, lo.n_, lo.modulus_, reduce(mpz_class(a.residue_ + b.residue_), lo.modulus_));
}

PAdic operator-(const PAdic& a, const PAdic& b) {
  PAdic::check_compatible(a, b);
  const PAdic& lo = a.n_ <= b.n_ ? a : b;
  return PAdic(lo.p_, lo.n_, lo.modulus_, reduce(mpz_class(a.residue_ - b.residue_), lo.modulus_));
}

PAdic operator*(const PAdic& a, const PAdic& b) {
  PAdic::check_compatible(a, b);
  const PAdic& lo = a.n_ <= b.n_ ? a : b;
  return PAdic(lo.p_, lo.n_, lo.modulus_, reduce(mpz_class(a.residue_ * b.residue_), lo.modulus_));
}

bool operator==(const PAdic& a, const PAdic& b) {
  if (a.p_ != b.p_) return false;
  const PAdic& lo = a.n_ <= b.n_ ? a : b;
  return reduce(a.residue_, lo.modulus_) == reduce(b.residue_, lo.modulus_);
}

std::ostream& operator<<(std::ostream& os, const PAdic& x) { return os << x.to_string(); }

PAdic ring_traits<PAdic>::exact_quotient(const PAdic& x, const PAdic& d) {
  int k = d.valuation();
  if (d.is_zero()) throw Error(ErrorCode::DomainMismatch, "exact quotient by zero");
  if (!x.is_zero() && x.valuation() < k) throw Error(ErrorCode::DomainMismatch, "divisor does not divide");
  mpz_class pk = prime_power(x.prime(), k);
  mpz_class xs = x.residue_mpz() / pk;
  mpz_class ds = d.residue_mpz() / pk;
  PAdic unit(x.prime(), std::min(x.precision(), d.precision()), Integer(ds));
  return PAdic(x.prime(), unit.precision(), Integer(xs)) * unit.inverse();
}

PAdic ring_traits<PAdic>::unit_part(const PAdic& x) {
  if (x.is_zero()) return one(context_of(x));
  mpz_class pk = prime_power(x.prime(), x.valuation());
  return PAdic(x.prime(), x.precision(), Integer(mpz_class(x.residue_mpz() / pk)));
}

std::optional<std::pair<PAdic, PAdic>> ring_traits<PAdic>::annihilator(const PAdic& d) {
  auto ctx = context_of(d);
  if (d.is_zero()) return std::make_pair(one(ctx), zero(ctx));
  int k = d.valuation();
  if (k == 0) return std::nullopt;
  return std::make_pair(PAdic(ctx.p, ctx.precision, Integer(prime_power(ctx.p, ctx.precision - k))),
                        PAdic(ctx.p, ctx.precision, Integer(prime_power(ctx.p, k))));
}

}  // namespace eulerdet
