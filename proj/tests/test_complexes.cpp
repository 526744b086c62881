#include "doctest.h"

#include "eulerdet/complexes/complex.hpp"
#include "eulerdet/suites/generators.hpp"

using namespace eulerdet;
using Q = BigRational;
using MatQ = Matrix<BigRational>;

namespace {

RationalField qq;
IntegerRing zz;

MatQ qm(std::initializer_list<std::initializer_list<long>> rows) { return MatQ::from_ints(qq, rows); }

std::size_t dim_h(const PerfectComplex<Q>& c, int i) { return cohomology_at(c, i).free_rank; }

// rank of H^i(f) over a field: dim(f(Z_A) + B_B) - dim B_B.
std::size_t induced_rank(const ComplexMap<Q>& f, int i) {
  MatQ z = kernel(f.source().differential(i));
  MatQ bb = f.target().differential(i - 1);
  return rank(hstack(MatQ(f.component(i) * z), bb)) - rank(bb);
}

}  // namespace

TEST_CASE("complex construction rejects d o d != 0") {
  CHECK_THROWS_AS(PerfectComplex<Q>(qq, 0, {1, 1, 1}, {qm({{1}}), qm({{1}})}), Error);
  CHECK_THROWS_AS(PerfectComplex<Q>(qq, 0, {2, 1}, {qm({{1}})}), Error);
  auto c = PerfectComplex<Q>(qq, 0, {1, 1, 1}, {qm({{1}}), qm({{0}})});
  CHECK(c.highest() == 2);
}

TEST_CASE("cohomology examples") {
  auto zero_map = PerfectComplex<Q>::two_term(qm({{0}}));
  auto h = cohomology(zero_map);
  CHECK(h[0].free_rank == 1);
  CHECK(h[1].free_rank == 1);

  auto three = PerfectComplex<Integer>::two_term(Matrix<Integer>::from_ints(zz, {{3}}));
  auto hz = cohomology(three);
  CHECK(hz[0].is_zero());
  CHECK(hz[1].free_rank == 0);
  REQUIRE(hz[1].torsion.size() == 1);
  CHECK(hz[1].torsion[0] == Integer(3));

  PerfectComplex<Q> empty(qq);
  for (const auto& g : cohomology(empty)) CHECK(g.is_zero());

  // Over Z/5^3: [R --25--> R] has H^0 = 5R = R/(25) and H^1 = R/(25).
  PAdicRing r{5, 3};
  auto c = PerfectComplex<PAdic>::two_term(Matrix<PAdic>::from_ints(r, {{25}}));
  auto hp = cohomology(c);
  REQUIRE(hp[0].torsion.size() == 1);
  CHECK(hp[0].torsion[0].valuation() == 2);
  REQUIRE(hp[1].torsion.size() == 1);
  CHECK(hp[1].torsion[0].valuation() == 2);
}

TEST_CASE("Euler characteristic of cohomology over Q") {
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    std::size_t n0 = rng.uniform(0, 3), n1 = rng.uniform(0, 3);
    MatQ d = gen::random_matrix_q(rng, n1, n0, 2);
    if (rng.coin() && n0 > 0) {
      for (std::size_t i = 0; i < n1; ++i) d(i, 0) = Q(0);
    }
    auto c = PerfectComplex<Q>::two_term(d);
    long chi = static_cast<long>(dim_h(c, 0)) - static_cast<long>(dim_h(c, 1));
    CHECK(chi == c.euler_characteristic());
  }
}

TEST_CASE("cone examples") {
  auto a = PerfectComplex<Q>::concentrated(qq, 0, 1);
  CHECK(is_acyclic(cone(ComplexMap<Q>::identity(a))));
  auto z = cone(ComplexMap<Q>::zero(a, a));
  CHECK(z.euler_characteristic() == 0);
  CHECK(dim_h(z, -1) == 1);
  CHECK(dim_h(z, 0) == 1);

  auto za = PerfectComplex<Integer>::concentrated(zz, 0, 1);
  auto two = ComplexMap<Integer>(za, za, {{0, Matrix<Integer>::from_ints(zz, {{2}})}});
  auto c = cone(two);
  CHECK(c.lowest() == -1);
  CHECK(cohomology_at(c, -1).is_zero());
  auto h0 = cohomology_at(c, 0);
  REQUIRE(h0.torsion.size() == 1);
  CHECK(h0.torsion[0] == Integer(2));
}

TEST_CASE("cone long exact sequence on random maps") {
  Rng rng(22);
  for (int t = 0; t < 60; ++t) {
    // A = Q^a0 in degree 0, B = [Q^b0 -> Q^b1]; f^0 must land in ker dB.
    auto b = PerfectComplex<Q>::two_term(gen::random_matrix_q(rng, rng.uniform(0, 3), rng.uniform(0, 3), 1));
    auto a = PerfectComplex<Q>::concentrated(qq, 0, static_cast<std::size_t>(rng.uniform(0, 3)));
    MatQ kb = kernel(b.differential(0));
    MatQ f0 = kb * gen::random_matrix_q(rng, kb.cols(), a.rank(0), 2);
    ComplexMap<Q> f(a, b, {{0, f0}});
    auto c = cone(f);
    CHECK(c.euler_characteristic() == b.euler_characteristic() - a.euler_characteristic());
    for (int i = -1; i <= 1; ++i) {
      std::size_t expected = (dim_h(b, i) - induced_rank(f, i)) + (dim_h(a, i + 1) - induced_rank(f, i + 1));
      CHECK(dim_h(c, i) == expected);
    }
  }
}

TEST_CASE("det_complex") {
  PerfectComplex<Q> empty(qq);
  CHECK(det_complex(empty).degree == 0);
  CHECK(det_complex(empty).scalar == Q(1));
  CHECK(det_complex(PerfectComplex<Q>::concentrated(qq, 0, 2)).degree == 2);
  CHECK(det_complex(PerfectComplex<Q>::two_term(qm({{5}}))).degree == 0);
}

TEST_CASE("det_complex degree survives adding acyclic summands") {
  Rng rng(23);
  for (int t = 0; t < 30; ++t) {
    auto c = PerfectComplex<Q>::two_term(gen::random_matrix_q(rng, rng.uniform(0, 3), rng.uniform(0, 3), 2));
    auto acyc = gen::random_acyclic_q(rng, static_cast<int>(rng.uniform(-1, 1)), 3);
    CHECK(det_complex(direct_sum(c, acyc)).degree == det_complex(c).degree);
  }
}

TEST_CASE("torsion examples") {
  CHECK(torsion_of_acyclic(PerfectComplex<Q>::two_term(qm({{3}}))) == Q(3));
  CHECK(torsion_of_acyclic(PerfectComplex<Q>::two_term(qm({{1}}))) == Q(1));
  auto three_term = PerfectComplex<Q>(qq, 0, {1, 2, 1}, {qm({{1}, {0}}), qm({{0, 1}})});
  CHECK(torsion_of_acyclic(three_term) == Q(1));
  CHECK_THROWS_WITH_AS(torsion_of_acyclic(PerfectComplex<Q>::two_term(qm({{0}}))), doctest::Contains("NotAcyclic"),
                       Error);
  // Over Z the boundary (2, 3) is a summand with no unit entry.
  auto z = PerfectComplex<Integer>::two_term(Matrix<Integer>::from_ints(zz, {{2}, {3}}));
  auto z2 = PerfectComplex<Integer>(zz, 0, {1, 2, 1}, {Matrix<Integer>::from_ints(zz, {{2}, {3}}),
                                                      Matrix<Integer>::from_ints(zz, {{3, -2}})});
  CHECK_THROWS_WITH_AS(torsion_of_acyclic(z), doctest::Contains("NotAcyclic"), Error);
  CHECK_THROWS_WITH_AS(torsion_of_acyclic(z2), doctest::Contains("NoSplitting"), Error);
}

TEST_CASE("torsion of [M -A-> M] is det A and independent of the splitting") {
  Rng rng(24);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = rng.uniform(1, 4);
    MatQ a = gen::random_invertible_q(rng, n, 4);
    auto c = PerfectComplex<Q>::two_term(a);
    CHECK(torsion_of_acyclic(c) == determinant(a));
    auto acyc = gen::random_acyclic_q(rng, -1, 4);
    Q base = torsion_of_acyclic(acyc);
    for (std::uint64_t seed = 1; seed < 5; ++seed) CHECK(torsion_of_acyclic(acyc, {seed}) == base);
  }
}

TEST_CASE("torsion of shifts and direct sums") {
  Rng rng(25);
  for (int t = 0; t < 40; ++t) {
    auto c1 = PerfectComplex<Q>::two_term(gen::random_invertible_q(rng, rng.uniform(1, 3)));
    auto c3 = PerfectComplex<Q>::two_term(gen::random_invertible_q(rng, rng.uniform(1, 3)));
    CHECK(torsion_of_acyclic(direct_sum(c1, c3)) == torsion_of_acyclic(c1) * torsion_of_acyclic(c3));
    auto c = gen::random_acyclic_q(rng, 0, 4);
    auto td = torsion_detail(c);
    long rsum = 0;
    for (auto [i, r] : td.differential_ranks) rsum += static_cast<long>(r);
    Q expect = td.value.inverse();
    if (rsum % 2 != 0) expect = -expect;
    CHECK(torsion_of_acyclic(shift(c, 1)) == expect);
    CHECK(torsion_of_acyclic(shift(c, 2)) == td.value);
  }
  // The Koszul sign in a direct sum.
  auto one = PerfectComplex<Q>::two_term(qm({{1}}));
  CHECK(torsion_of_acyclic(direct_sum(one, PerfectComplex<Q>::two_term(qm({{1}}), -1))) == Q(-1));
}

TEST_CASE("SES multiplicativity") {
  auto two = PerfectComplex<Q>::two_term(qm({{2}}));
  auto sum = direct_sum(two, two);
  ShortExactSequence<Q> s(ComplexMap<Q>(two, sum, {{0, qm({{1}, {0}})}, {1, qm({{1}, {0}})}}),
                          ComplexMap<Q>(sum, two, {{0, qm({{0, 1}})}, {1, qm({{0, 1}})}}));
  auto rep = ses_torsion_multiplicativity(s);
  CHECK(rep.tau2 == Q(4));
  CHECK(rep.equal);

  PerfectComplex<Q> zero(qq);
  auto c = PerfectComplex<Q>::two_term(qm({{3}}));
  ShortExactSequence<Q> s0(ComplexMap<Q>::zero(zero, c), ComplexMap<Q>::identity(c));
  auto r0 = ses_torsion_multiplicativity(s0);
  CHECK(r0.tau2 == r0.tau3);
  CHECK(r0.equal);

  CHECK_THROWS_AS(ShortExactSequence<Q>(ComplexMap<Q>::zero(zero, c), ComplexMap<Q>::zero(c, c)), Error);

  Rng rng(26);
  for (int t = 0; t < 100; ++t) {
    auto ses = gen::random_ses_q(rng);
    auto r = ses_torsion_multiplicativity(ses, {static_cast<std::uint64_t>(t % 3)});
    CHECK(r.equal);
  }
}

TEST_CASE("base change of complexes") {
  auto c = PerfectComplex<Integer>::two_term(Matrix<Integer>::from_ints(zz, {{3}}));
  auto c5 = base_change_complex(c, reduce_mod_integers(5, 1));
  CHECK(torsion_of_acyclic(c5) == PAdic(5, 1, Integer(3)));
  auto c3 = base_change_complex(c, reduce_mod_integers(3, 1));
  CHECK_THROWS_WITH_AS(torsion_of_acyclic(c3), doctest::Contains("NotAcyclic"), Error);
  CHECK(base_change_complex(c, identity_hom<Integer>(zz)) == c);
  CHECK(det_complex(c5).degree == det_complex(c).degree);
}
