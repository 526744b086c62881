#include "eulerdet/rings/integer.hpp"

#include <cctype>
#include <ostream>


namespace eulerdet {

namespace {

bool valid_decimal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Integer Integer::parse(std::string_view decimal) {
  std::string text(decimal);
  if (!text.empty() && text[0] == '+') text.erase(0, 1);
  if (!valid_decimal(text)) throw Error(ErrorCode::InvalidArgument, "not a decimal integer: '" + text + "'");
  return Integer(mpz_class(text, 10));
}

long Integer::to_long() const {
  if (!v_.fits_slong_p()) throw Error(ErrorCode::InvalidArgument, "integer does not fit in a machine word: " + to_string());
  return v_.get_si();
}

std::ostream& operator<<(std::ostream& os, const Integer& x) { return os << x.to_string(); }

Integer abs(const Integer& x) { return Integer(mpz_class(::abs(x.mpz()))); }

Integer gcd(const Integer& a, const Integer& b) {
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return Integer(std::move(r));
}

Integer lcm(const Integer& a, const Integer& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return Integer(std::move(r));
}

Integer pow(const Integer& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.mpz().get_mpz_t(), e);
  return Integer(std::move(r));
}

std::pair<Integer, Integer> floor_divmod(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return {Integer(std::move(q)), Integer(std::move(r))};
}

Integer trunc_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return Integer(std::move(q));
}

bool divides(const Integer& d, const Integer& x) {
  if (d.is_zero()) return x.is_zero();
  return mpz_divisible_p(x.mpz().get_mpz_t(), d.mpz().get_mpz_t()) != 0;
}

int valuation(const Integer& x, long p) {
  if (p < 2) throw Error(ErrorCode::InvalidArgument, "valuation needs p >= 2");
  if (x.is_zero()) return kInfiniteValuation;
  mpz_class t = x.mpz();
  mpz_class pp(p);
  return static_cast<int>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t()));
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

long mod_long(const Integer& x, long m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.mpz().get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_si();
}

}  // namespace eulerdet
