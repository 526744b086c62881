#include "eulerdet/rings/rational.hpp"

#include <ostream>

namespace eulerdet {

BigRational::BigRational(const Integer& num, const Integer& den) {
  if (den.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  v_ = mpq_class(num.mpz(), den.mpz());
  v_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(Integer::parse(text));
  Integer num = Integer::parse(text.substr(0, slash));
  Integer den = Integer::parse(text.substr(slash + 1));
  return BigRational(num, den);
}

BigRational BigRational::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DomainMismatch, "inverse of zero rational");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
  return BigRational(r);
}

BigRational operator/(const BigRational& a, const BigRational& b) {
  if (b.is_zero()) throw Error(ErrorCode::DomainMismatch, "division by zero rational");
  return BigRational(mpq_class(a.v_ / b.v_));
}

std::ostream& operator<<(std::ostream& os, const BigRational& x) { return os << x.to_string(); }

BigRational pow(const BigRational& base, long e) {
  if (e < 0) return pow(base.inverse(), -e);
  Integer n = pow(base.numerator(), static_cast<unsigned long>(e));
  Integer d = pow(base.denominator(), static_cast<unsigned long>(e));
  return BigRational(n, d);
}

int valuation(const BigRational& x, long p) {
  if (x.is_zero()) return kInfiniteValuation;
  return valuation(x.numerator(), p) - valuation(x.denominator(), p);
}

bool is_p_integral(const BigRational& x, long p) { return valuation(x.denominator(), p) == 0; }

}  // namespace eulerdet
