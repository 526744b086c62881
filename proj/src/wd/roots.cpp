#include "eulerdet/wd/roots.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>

namespace eulerdet {

namespace {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<kRootDigits>>;

struct Cx {
  Real re, im;
};

Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Cx operator/(const Cx& a, const Cx& b) {
  Real d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Real norm2(const Cx& a) { return a.re * a.re + a.im * a.im; }

Real to_real(const BigRational& x) {
  Real num(x.numerator().to_string());
  Real den(x.denominator().to_string());
  return num / den;
}

std::vector<Cx> aberth(const std::vector<Real>& c) {
  const std::size_t m = c.size() - 1;
  std::vector<Cx> z(m);
  if (m == 0) return z;
  Real bound = 0;
  for (std::size_t i = 0; i < m; ++i) bound = std::max<Real>(bound, abs(c[i] / c[m]));
  Real radius = 1 + bound;
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  for (std::size_t k = 0; k < m; ++k) {
    Real theta = two_pi * k / m + Real("0.4");
    z[k] = {radius * cos(theta), radius * sin(theta)};
  }
  auto eval = [&](const Cx& x, Cx& p, Cx& dp) {
    p = {c[m], 0};
    dp = {0, 0};
    for (std::size_t i = m; i-- > 0;) {
      dp = dp * x + p;
      p = p * x + Cx{c[i], 0};
    }
  };
  const Real eps = pow(Real(10), -static_cast<int>(kRootDigits) + 10);
  for (int iter = 0; iter < 2000; ++iter) {
    Real worst = 0;
    for (std::size_t k = 0; k < m; ++k) {
      Cx p, dp;
      eval(z[k], p, dp);
      if (norm2(p) == 0) continue;
      Cx w = p / dp;
      Cx s{0, 0};
      for (std::size_t j = 0; j < m; ++j)
        if (j != k) s = s + Cx{1, 0} / (z[k] - z[j]);
      Cx step = w / (Cx{1, 0} - w * s);
      z[k] = z[k] - step;
      worst = std::max<Real>(worst, sqrt(norm2(step)) / (1 + sqrt(norm2(z[k]))));
    }
    if (worst < eps) break;
  }
  return z;
}

}  // namespace

Polynomial<BigRational> squarefree_part(const Polynomial<BigRational>& p) {
  if (p.degree() <= 0) return p.is_zero() ? p : p.monic();
  auto g = poly_gcd(p, p.derivative());
  return poly_exact_div(p, g).monic();
}

RootModulusCheck check_root_moduli(const Polynomial<BigRational>& p, const BigRational& target, double tolerance) {
  RootModulusCheck out;
  auto s = squarefree_part(p);
  if (s.degree() <= 0) return out;
  std::vector<Real> c;
  for (const auto& x : s.coefficients()) c.push_back(to_real(x));
  Real t = to_real(target);
  for (const auto& z : aberth(c)) {
    Real m2 = norm2(z);
    Real err = abs(m2 / t - 1);
    out.modulus_squared.push_back(m2.str(20));
    double e = static_cast<double>(err);
    out.max_relative_error = std::max(out.max_relative_error, e);
    if (!(err <= Real(tolerance))) out.pass = false;
  }
  return out;
}

}  // namespace eulerdet
