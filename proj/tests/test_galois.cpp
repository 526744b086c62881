#include "doctest.h"

#include "eulerdet/galois/galois.hpp"
#include "eulerdet/suites/generators.hpp"

using namespace eulerdet;
using Q = BigRational;
using MatQ = Matrix<BigRational>;

namespace {

RationalField qq;

MatQ qm(std::initializer_list<std::initializer_list<long>> rows) { return MatQ::from_ints(qq, rows); }

std::size_t dim_h(const PerfectComplex<Q>& c, int i) { return cohomology_at(c, i).free_rank; }

Polynomial<Q> qp(std::initializer_list<long> c) { return Polynomial<Q>::from_ints(qq, c); }

}  // namespace

TEST_CASE("unramified_complex examples") {
  auto c1 = unramified_complex(FrobeniusModule<Q>(qm({{1}})));
  CHECK(c1.differential(0).is_zero());
  CHECK(dim_h(c1, 0) == 1);
  CHECK(dim_h(c1, 1) == 1);
  CHECK(torsion_of_acyclic(unramified_complex(FrobeniusModule<Q>(qm({{2}})))) == Q(-1));
  auto c3 = unramified_complex(FrobeniusModule<Q>(qm({{1, 0}, {0, 2}})));
  CHECK(dim_h(c3, 0) == 1);
  CHECK(dim_h(c3, 1) == 1);
}

TEST_CASE("torsion of [M -(1-F)-> M] and its cohomology") {
  Rng rng(31);
  for (int t = 0; t < 60; ++t) {
    auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    auto m = gen::random_frobenius_invertible_q(rng, n);
    CHECK(torsion_of_acyclic(unramified_complex(m)) == determinant(one_minus(m.frobenius)));
    FrobeniusModule<Q> any(gen::random_matrix_q(rng, n, n, 1));
    auto c = unramified_complex(any);
    std::size_t k = kernel(one_minus(any.frobenius)).cols();
    CHECK(dim_h(c, 0) == k);
    CHECK(dim_h(c, 1) == k);
  }
}

TEST_CASE("selmer_cone examples") {
  auto g = PerfectComplex<Q>::two_term(qm({{1, 1}}));
  CHECK(selmer_cone(SelmerDatum<Q>{g, {}}) == g);

  auto local = unramified_complex(FrobeniusModule<Q>(qm({{2}})));
  Rng rng(32);
  auto loc = gen::random_two_term_map_q(rng, g, local);
  SelmerDatum<Q> full{g, {{"v", loc, LocalConditionDatum<Q>::full_condition(local)}}};
  auto s = selmer_cone(full);
  for (int i = -1; i <= 2; ++i) CHECK(dim_h(s, i) == dim_h(g, i));

  auto point = PerfectComplex<Q>::concentrated(qq, 0, 1);
  SelmerDatum<Q> zero{point, {{"v", ComplexMap<Q>::identity(point), LocalConditionDatum<Q>::zero_condition(point)}}};
  CHECK(selmer_cone(zero).euler_characteristic() == 0);
}

TEST_CASE("selmer_cone Euler characteristic is additive") {
  Rng rng(33);
  for (int t = 0; t < 60; ++t) {
    auto d = gen::random_selmer_q(rng);
    long expect = d.global.euler_characteristic();
    for (const auto& pl : d.places) {
      expect += pl.condition.complex().euler_characteristic() - pl.condition.full().euler_characteristic();
    }
    auto s = selmer_cone(d);
    CHECK(s.euler_characteristic() == expect);
    long chi_h = 0;
    for (const auto& h : cohomology(s)) chi_h += (h.degree % 2 == 0 ? 1 : -1) * static_cast<long>(h.free_rank);
    CHECK(chi_h == expect);
  }
}

TEST_CASE("trace formula examples") {
  EtaleZeroScheme<Q> one{qq, {{1, FrobeniusModule<Q>(qm({{5}}))}}};
  auto r1 = trace_formula_check(one);
  CHECK(r1.equal);
  CHECK(r1.lhs_denominator == qp({1, -5}));

  EtaleZeroScheme<Q> deg2{qq, {{2, FrobeniusModule<Q>(qm({{1}}))}}};
  auto r2 = trace_formula_check(deg2);
  CHECK(r2.equal);
  CHECK(r2.induced == qm({{0, 1}, {1, 0}}));
  CHECK(r2.rhs_denominator == qp({1, 0, -1}));

  EtaleZeroScheme<Q> two{qq, {{1, FrobeniusModule<Q>(qm({{2}}))}, {1, FrobeniusModule<Q>(qm({{3}}))}}};
  auto r3 = trace_formula_check(two);
  CHECK(r3.equal);
  CHECK(r3.rhs_denominator == qp({1, -2}) * qp({1, -3}));
}

TEST_CASE("trace formula on random schemes over Q and Z/p^n") {
  Rng rng(34);
  for (int t = 0; t < 60; ++t) CHECK(trace_formula_check(gen::random_zero_scheme_q(rng)).equal);
  PAdicRing r{3, 4};
  for (int t = 0; t < 20; ++t) {
    EtaleZeroScheme<PAdic> x{r, {}};
    for (int k = 0; k < 3; ++k) {
      auto n = static_cast<std::size_t>(rng.uniform(1, 2));
      Matrix<PAdic> f(r, n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) f(i, j) = PAdic(3, 4, Integer(rng.uniform(0, 80)));
      x.points.push_back({static_cast<int>(rng.uniform(1, 3)), FrobeniusModule<PAdic>(f)});
    }
    CHECK(trace_formula_check(x).equal);
  }
}

TEST_CASE("semisimple_at_one") {
  CHECK(semisimple_at_one(FrobeniusModule<Q>(qm({{1, 0}, {0, 1}}))));
  CHECK_FALSE(semisimple_at_one(FrobeniusModule<Q>(qm({{1, 1}, {0, 1}}))));
  CHECK(semisimple_at_one(FrobeniusModule<Q>(qm({{1, 0}, {0, 2}}))));
}

TEST_CASE("zeta_basis_leading_term examples") {
  auto a = zeta_basis_leading_term(FrobeniusModule<Q>(qm({{2}})));
  CHECK(a.d == 0);
  CHECK(a.leading == Q(-1));
  CHECK(a.torsion == Q(-1));
  CHECK(a.identity_holds);
  auto b = zeta_basis_leading_term(FrobeniusModule<Q>(qm({{1}})));
  CHECK(b.d == 1);
  CHECK(b.leading == Q(-1));
  CHECK(b.torsion == Q(1));
  CHECK(b.identity_holds);
  auto c = zeta_basis_leading_term(FrobeniusModule<Q>(qm({{1, 0}, {0, 2}})));
  CHECK(c.d == 1);
  CHECK(c.leading == Q(1));
  CHECK(c.torsion == Q(-1));
  CHECK(c.identity_holds);
  CHECK_THROWS_AS(zeta_basis_leading_term(FrobeniusModule<Q>(qm({{1, 1}, {0, 1}}))), Error);
  CHECK_FALSE(zeta_basis_leading_term(FrobeniusModule<Q>(qm({{1, 0}, {0, 2}})), true).identity_holds);
}

TEST_CASE("zeta_basis_leading_term identity on random semisimple modules") {
  Rng rng(35);
  for (int t = 0; t < 80; ++t) {
    auto m = gen::random_semisimple_at_one_q(rng, static_cast<std::size_t>(rng.uniform(1, 4)));
    REQUIRE(semisimple_at_one(m));
    auto r = zeta_basis_leading_term(m);
    CHECK(r.identity_holds);
    CHECK(static_cast<std::size_t>(r.d) == kernel(one_minus(m.frobenius)).cols());
  }
}
