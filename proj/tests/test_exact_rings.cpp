#include "doctest.h"

#include "eulerdet/linalg/linalg.hpp"
#include "eulerdet/linalg/smith.hpp"
#include "eulerdet/rings/ring_hom.hpp"
#include "eulerdet/util/rng.hpp"

using namespace eulerdet;

namespace {

// Laplace expansion along the first row; independent of Berkowitz.
template <class R>
R cofactor_det(const Matrix<R>& m) {
  const std::size_t n = m.rows();
  if (n == 0) return ring_traits<R>::one(m.context());
  if (n == 1) return m(0, 0);
  R acc = ring_traits<R>::zero(m.context());
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) cols.push_back(k);
    R minor = cofactor_det(m.select_rows(rows).select_columns(cols));
    R term = m(0, j) * minor;
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

template <class R>
Polynomial<R> charpoly_oracle(const Matrix<R>& a) {
  using P = Polynomial<R>;
  const auto& ctx = a.context();
  PolynomialRing<R> pctx{ctx};
  Matrix<P> xm(pctx, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      P entry = P::constant(-a(i, j));
      if (i == j) entry = entry + P::variable(ctx);
      xm(i, j) = entry;
    }
  return cofactor_det(xm);
}

template <class R, class Gen>
Matrix<R> random_matrix(const ring_context_t<R>& ctx, std::size_t r, std::size_t c, Gen&& gen) {
  Matrix<R> m(ctx, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = gen();
  return m;
}

template <class R>
bool is_diagonal(const Matrix<R>& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && !ring_traits<R>::is_zero(d(i, j))) return false;
  return true;
}

IwasawaElement iw(std::initializer_list<long> c) { return IwasawaElement::from_polynomial(5, 3, 8, c); }

}  // namespace

TEST_CASE("char_poly examples") {
  IntegerRing z;
  auto zero = Matrix<Integer>::from_ints(z, {{0, 0}, {0, 0}});
  CHECK(char_poly(zero) == Polynomial<Integer>::from_ints(z, {0, 0, 1}));
  auto d = Matrix<Integer>::from_ints(z, {{1, 0}, {0, 7}});
  CHECK(char_poly(d) == Polynomial<Integer>::from_ints(z, {7, -8, 1}));
  CHECK(reversed_char_poly(d) == Polynomial<Integer>::from_ints(z, {1, -8, 7}));
  RationalField q;
  auto rot = Matrix<BigRational>::from_ints(q, {{0, 1}, {-1, 0}});
  CHECK(char_poly(rot) == charpoly_oracle(rot));
  CHECK(char_poly(rot) == Polynomial<BigRational>::from_ints(q, {1, 0, 1}));
  auto one = Matrix<Integer>::from_ints(z, {{5}});
  CHECK(reversed_char_poly(one) == Polynomial<Integer>::from_ints(z, {1, -5}));
  CHECK_THROWS_AS(char_poly(Matrix<Integer>(z, 2, 3)), Error);
}

TEST_CASE("char_poly agrees with cofactor expansion") {
  Rng rng(11);
  IntegerRing z;
  PAdicRing zp{3, 4};
  IwasawaRing lam{5, 3, 6};
  for (int t = 0; t < 60; ++t) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(0, 5));
    auto a = random_matrix<Integer>(z, n, n, [&] { return Integer(rng.uniform(-9, 9)); });
    auto cp = char_poly(a);
    CHECK(cp == charpoly_oracle(a));
    CHECK(cp.degree() == static_cast<int>(n));
    auto rev = reversed_char_poly(a);
    CHECK(rev.coefficient(0) == Integer(1));
    CHECK(rev == cp.reversed(n));
    auto b = random_matrix<PAdic>(zp, n, n, [&] { return PAdic(3, 4, Integer(rng.uniform(0, 80))); });
    CHECK(char_poly(b) == charpoly_oracle(b));
    auto c = random_matrix<IwasawaElement>(lam, n, n, [&] {
      return IwasawaElement::from_polynomial(5, 3, 6, {rng.uniform(0, 124), rng.uniform(0, 124), rng.uniform(0, 5)});
    });
    CHECK(char_poly(c) == charpoly_oracle(c));
  }
}

TEST_CASE("smith_normal_form examples") {
  IntegerRing z;
  auto id = Matrix<Integer>::identity(z, 2);
  CHECK(smith_normal_form(id).D == id);
  auto m = Matrix<Integer>::from_ints(z, {{2, 1}, {0, 5}});
  auto s = smith_normal_form(m);
  CHECK(s.D == Matrix<Integer>::from_ints(z, {{1, 0}, {0, 10}}));
  CHECK(s.U * m * s.V == s.D);
  PAdicRing zp{5, 3};
  auto pm = Matrix<PAdic>::from_ints(zp, {{5, 0}, {0, 5}});
  CHECK(smith_normal_form(pm).D == pm);
  PolynomialRing<BigRational> qx{{}};
  Matrix<Polynomial<BigRational>> poly(qx, 1, 1);
  CHECK_THROWS_AS(smith_normal_form(poly), Error);
}

TEST_CASE("smith_normal_form properties over Z and Z/p^n") {
  Rng rng(12);
  IntegerRing z;
  PAdicRing zp{2, 5};
  for (int t = 0; t < 80; ++t) {
    auto r = static_cast<std::size_t>(rng.uniform(1, 5));
    auto c = static_cast<std::size_t>(rng.uniform(1, 5));
    auto m = random_matrix<Integer>(z, r, c, [&] { return Integer(rng.uniform(-12, 12)); });
    auto s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(s.U * s.U_inv == Matrix<Integer>::identity(z, r));
    CHECK(s.V_inv * s.V == Matrix<Integer>::identity(z, c));
    CHECK(is_diagonal(s.D));
    CHECK(ring_traits<Integer>::is_unit(determinant(s.U)));
    CHECK(ring_traits<Integer>::is_unit(determinant(s.V)));
    for (std::size_t i = 0; i + 1 < std::min(r, c); ++i) CHECK(divides(s.D(i, i), s.D(i + 1, i + 1)));
    if (r == c) {
      Integer prod(1);
      for (std::size_t i = 0; i < r; ++i) prod = prod * s.D(i, i);
      CHECK(abs(prod) == abs(determinant(m)));
    }

    auto pm = random_matrix<PAdic>(zp, r, c, [&] {
      return PAdic(2, 5, Integer(rng.uniform(0, 31) << rng.uniform(0, 3)));
    });
    auto ps = smith_normal_form(pm);
    CHECK(ps.U * pm * ps.V == ps.D);
    CHECK(ps.U * ps.U_inv == Matrix<PAdic>::identity(zp, r));
    CHECK(ps.V_inv * ps.V == Matrix<PAdic>::identity(zp, c));
    CHECK(is_diagonal(ps.D));
    CHECK(determinant(ps.U).is_unit());
    CHECK(determinant(ps.V).is_unit());
    for (std::size_t i = 0; i + 1 < std::min(r, c); ++i) {
      CHECK(ring_traits<PAdic>::content_valuation(ps.D(i, i)) <=
            ring_traits<PAdic>::content_valuation(ps.D(i + 1, i + 1)));
    }
    if (r == c) {
      PAdic prod(2, 5, Integer(1));
      for (std::size_t i = 0; i < r; ++i) prod = prod * ps.D(i, i);
      PAdic det = determinant(pm);
      CHECK(prod.valuation() == det.valuation());
    }
  }
}

TEST_CASE("smith_normal_form over the Iwasawa algebra") {
  IwasawaRing lam{5, 3, 8};
  auto m = Matrix<IwasawaElement>::from_rows(lam, {{iw({0, 1}), iw({0})}, {iw({0}), iw({-5, 1})}});
  // Neither T nor T - 5 is p^k times a unit.
  CHECK_THROWS_AS(smith_normal_form(m), Error);
  auto m2 = Matrix<IwasawaElement>::from_rows(lam, {{iw({1, 1}), iw({5})}, {iw({0, 25}), iw({5, 5})}});
  auto s = smith_normal_form(m2);
  CHECK(s.U * m2 * s.V == s.D);
  CHECK(s.U_inv * s.U == Matrix<IwasawaElement>::identity(lam, 2));
  CHECK(s.V * s.V_inv == Matrix<IwasawaElement>::identity(lam, 2));
  CHECK(is_diagonal(s.D));
}

TEST_CASE("weierstrass_prepare examples") {
  auto f1 = iw({5, 1});
  auto w1 = weierstrass_prepare(f1);
  CHECK(w1.mu == 0);
  CHECK(w1.lambda == 1);
  CHECK(w1.unit == iw({1}));
  CHECK(normalized_generator(w1, f1) == f1);

  auto f2 = iw({5, 5});
  auto w2 = weierstrass_prepare(f2);
  CHECK(w2.mu == 1);
  CHECK(w2.lambda == 0);
  CHECK(w2.unit == IwasawaElement::from_polynomial(5, 2, 8, {1, 1}));

  // (T - 5)(T - 25)(2 + T) multiplied out by hand: T^3 - 28T^2 + 65T + 250.
  auto f3 = iw({250, 65, -28, 1});
  auto w3 = weierstrass_prepare(f3);
  CHECK(w3.mu == 0);
  CHECK(w3.lambda == 2);
  CHECK(normalized_generator(w3, f3) == iw({125, -30, 1}));
  CHECK(w3.unit == iw({2, 1}));

  CHECK_THROWS_AS(weierstrass_prepare(iw({0})), Error);
  CHECK_THROWS_AS(weierstrass_prepare(iw({125})), Error);
}

TEST_CASE("weierstrass_prepare round trip on random series") {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    long p = t % 2 == 0 ? 3 : 5;
    int a = static_cast<int>(rng.uniform(1, 4));
    int b = static_cast<int>(rng.uniform(1, 8));
    std::vector<Integer> c;
    for (int i = 0; i < b; ++i) c.push_back(Integer(rng.uniform(0, 1000)) * pow(Integer(p), rng.uniform(0, 2)));
    IwasawaElement f(p, a, b, c);
    if (f.is_zero()) continue;
    auto w = weierstrass_prepare(f);
    CHECK(w.distinguished.is_monic());
    CHECK(w.distinguished.degree() == w.lambda);
    for (int i = 0; i < w.lambda; ++i) {
      auto ci = w.distinguished.coefficient(static_cast<std::size_t>(i));
      CHECK((ci.is_zero() || ci.valuation() > 0));
    }
    CHECK(w.unit.is_unit());
    std::vector<Integer> lift;
    for (const auto& x : w.unit.raw()) lift.emplace_back(x);
    CHECK(normalized_generator(w, f) * IwasawaElement(p, a, b, lift) == f);
  }
}

TEST_CASE("ideal_contains") {
  auto g = iw({-5, 1});
  CHECK(ideal_contains(g, g * iw({3, 2, 1})));
  CHECK(ideal_contains(g, iw({0})));
  CHECK_FALSE(ideal_contains(g, iw({1})));
  CHECK_FALSE(ideal_contains(iw({5}), iw({0, 1})));
  CHECK(ideal_contains(iw({2, 1}), iw({1})));
}

TEST_CASE("ring homomorphisms") {
  IwasawaRing lam{5, 3, 8};
  auto at0 = evaluate_iwasawa(lam, Integer(0));
  CHECK(at0(iw({3, 2})) == PAdic(5, 3, Integer(3)));
  CHECK(at0(iw({3, 2})).precision() == 3);
  auto at5 = evaluate_iwasawa(lam, Integer(5));
  CHECK(at5(iw({3, 2})) == PAdic(5, 3, Integer(13)));

  auto red = reduce_mod_rationals(5, 1);
  CHECK(red(BigRational(Integer(10), Integer(7))).is_zero());
  CHECK(red(BigRational(Integer(1), Integer(7))) == PAdic(5, 1, Integer(3)));
  CHECK_THROWS_AS(red(BigRational(Integer(1), Integer(5))), Error);

  RationalField q;
  using QT = Polynomial<BigRational>;
  PolynomialRing<BigRational> qt{q};
  auto t = QT::variable(q);
  Polynomial<QT> f(qt, {QT::constant(BigRational(1)), -t});
  auto h = polynomial_hom(evaluate_polynomial<BigRational>(q, BigRational(1), "1"));
  CHECK(h(f) == Polynomial<BigRational>::from_ints(q, {1, -1}));

  auto comp = compose(reduce_mod_integers(3, 4), reduce_mod_padic(3, 2));
  CHECK(comp.descriptor()["steps"].size() == 2);
  CHECK(comp(Integer(10)) == PAdic(3, 2, Integer(1)));
}

TEST_CASE("homomorphisms commute with char_poly") {
  Rng rng(14);
  IntegerRing z;
  RationalField q;
  IwasawaRing lam{3, 4, 5};
  auto to_z9 = reduce_mod_integers(3, 2);
  auto to_f7 = reduce_mod_rationals(7, 1);
  auto at3 = evaluate_iwasawa(lam, Integer(3));
  for (int t = 0; t < 50; ++t) {
    auto n = static_cast<std::size_t>(rng.uniform(1, 5));
    auto a = random_matrix<Integer>(z, n, n, [&] { return Integer(rng.uniform(-20, 20)); });
    CHECK(apply_hom(char_poly(a), to_z9) == char_poly(apply_hom(a, to_z9)));
    auto b = random_matrix<BigRational>(q, n, n, [&] {
      long d = rng.uniform(1, 6);
      return BigRational(Integer(rng.uniform(-9, 9)), Integer(d));
    });
    CHECK(apply_hom(char_poly(b), to_f7) == char_poly(apply_hom(b, to_f7)));
    auto c = random_matrix<IwasawaElement>(lam, n, n, [&] {
      return IwasawaElement::from_polynomial(3, 4, 5, {rng.uniform(0, 80), rng.uniform(0, 80)});
    });
    CHECK(apply_hom(char_poly(c), at3) == char_poly(apply_hom(c, at3)));
  }
}
