#include "doctest.h"

#include "eulerdet/suites/generators.hpp"
#include "eulerdet/wd/weil_deligne.hpp"

using namespace eulerdet;
using Q = BigRational;
using MatQ = Matrix<BigRational>;

namespace {

RationalField qq;

MatQ qm(std::initializer_list<std::initializer_list<long>> rows) { return MatQ::from_ints(qq, rows); }
Polynomial<Q> qp(std::initializer_list<long> c) { return Polynomial<Q>::from_ints(qq, c); }
MatQ e12() { return qm({{0, 1}, {0, 0}}); }

QT t_var() { return QT::variable(qq); }
QT c(long v) { return QT::constant(Q(v)); }

}  // namespace

TEST_CASE("WD representation validation") {
  CHECK_NOTHROW(WeilDeligneRep<Q>(7, qm({{1, 0}, {0, 7}}), e12()));
  CHECK_THROWS_AS(WeilDeligneRep<Q>(7, qm({{7, 0}, {0, 1}}), e12()), Error);
  CHECK_THROWS_WITH_AS(WeilDeligneRep<Q>(7, qm({{1, 0}, {0, 7}}), qm({{1, 0}, {0, 0}})), doctest::Contains("NotNilpotent"),
                       Error);
  CHECK_THROWS_AS(WeilDeligneRep<Q>(7, qm({{0, 0}, {0, 7}}), qm({{0, 0}, {0, 0}})), Error);
  CHECK_THROWS_AS(WeilDeligneRep<Q>(3, qm({{1}}), qm({{0}}), {qm({{-1}})}), Error);
  CHECK_NOTHROW(WeilDeligneRep<Q>(3, qm({{1}}), qm({{0}}), {qm({{-1}}), qm({{1}})}));
}

TEST_CASE("monodromy filtration examples") {
  auto f0 = monodromy_filtration(qm({{0, 0}, {0, 0}}));
  CHECK(f0.at(-1, qq).cols() == 0);
  CHECK(f0.at(0, qq).cols() == 2);

  auto f2 = monodromy_filtration(e12());
  CHECK(f2.graded_dim(-1, qq) == 1);
  CHECK(f2.graded_dim(0, qq) == 0);
  CHECK(f2.graded_dim(1, qq) == 1);
  CHECK(span_equal(f2.at(-1, qq), qm({{1}, {0}})));

  auto f3 = monodromy_filtration(qm({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));
  for (int j : {-2, 0, 2}) CHECK(f3.graded_dim(j, qq) == 1);
  for (int j : {-1, 1}) CHECK(f3.graded_dim(j, qq) == 0);
  CHECK(verify_monodromy_filtration(qm({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}), f3).ok());
  CHECK_THROWS_AS(monodromy_filtration(qm({{1}})), Error);
}

TEST_CASE("monodromy filtration matches the Jordan form") {
  Rng rng(41);
  PAdicRing f7{7, 1};
  for (int t = 0; t < 60; ++t) {
    auto n = static_cast<std::size_t>(rng.uniform(1, 6));
    auto cq = gen::random_nilpotent<Q>(rng, qq, n);
    auto fq = monodromy_filtration(cq.n);
    CHECK(verify_monodromy_filtration(cq.n, fq).ok());
    for (int j = -static_cast<int>(n); j <= static_cast<int>(n); ++j) CHECK(span_equal(fq.at(j, qq), cq.expected.at(j, qq)));
    auto c7 = gen::random_nilpotent<PAdic>(rng, f7, n);
    auto f = monodromy_filtration(c7.n);
    CHECK(verify_monodromy_filtration(c7.n, f).ok());
    for (int j = -static_cast<int>(n); j <= static_cast<int>(n); ++j) CHECK(span_equal(f.at(j, f7), c7.expected.at(j, f7)));
  }
}

TEST_CASE("filtration verifier rejects a wrong filtration") {
  auto n = e12();
  Filtration<Q> bad{2, 0, {MatQ::identity(qq, 2)}};
  CHECK_FALSE(verify_monodromy_filtration(n, bad).ok());
}

TEST_CASE("purity examples") {
  WeilDeligneRep<Q> st(7, qm({{1, 0}, {0, 7}}), e12(), {}, 1);
  auto v = check_purity(st, 1);
  CHECK(v.pure);
  REQUIRE(v.graded.size() == 2);
  CHECK(v.graded[0].index == -1);
  CHECK(v.graded[0].char_poly == qp({-1, 1}));
  WeilDeligneRep<Q> split(7, qm({{1, 0}, {0, 7}}), qm({{0, 0}, {0, 0}}), {}, 1);
  CHECK_FALSE(check_purity(split, 1).pure);
  WeilDeligneRep<Q> triv(5, qm({{1}}), qm({{0}}), {}, 0);
  CHECK(check_purity(triv, 0).pure);
  // x^2 - 2x + 7 has complex roots of absolute value sqrt 7.
  WeilDeligneRep<Q> good(7, qm({{0, -7}, {1, 2}}), qm({{0, 0}, {0, 0}}), {}, 1);
  auto g = check_purity(good, 1);
  CHECK(g.pure);
  CHECK(g.graded[0].modulus.max_relative_error < 1e-30);
  // Functional equation holds for roots 1 and 49 at q = 49 but the moduli do not.
  WeilDeligneRep<Q> real(7, qm({{1, 0}, {0, 49}}), qm({{0, 0}, {0, 0}}), {}, 2);
  auto r = check_purity(real, 2);
  CHECK(r.graded[0].functional_equation);
  CHECK_FALSE(r.graded[0].modulus.pass);
  CHECK_FALSE(r.pure);
  CHECK(check_purity(WeilDeligneRep<Q>(2, qm({{1, 0}, {0, 2}}), e12()), 1).pure);
  CHECK_FALSE(check_purity(WeilDeligneRep<Q>(2, qm({{1, 0}, {0, 2}}), e12()), 3).pure);
}

TEST_CASE("inertia invariants and Euler factors") {
  WeilDeligneRep<Q> unr(5, qm({{1, 0}, {0, 3}}), qm({{0, 0}, {0, 0}}));
  CHECK(inertia_invariants(unr).cols() == 2);
  WeilDeligneRep<Q> st(7, qm({{1, 0}, {0, 7}}), e12());
  CHECK(span_equal(inertia_invariants(st), qm({{1}, {0}})));
  CHECK(euler_factor(st) == qp({1, -1}));
  WeilDeligneRep<Q> sc(2, qm({{1, 0}, {0, 1}}), qm({{0, 0}, {0, 0}}), {qm({{-1, 0}, {0, -1}}), qm({{1, 0}, {0, 1}})});
  CHECK(inertia_invariants(sc).cols() == 0);
  CHECK(euler_factor(sc) == qp({1}));
  WeilDeligneRep<Q> one(3, qm({{4}}), qm({{0}}));
  CHECK(euler_factor(one) == qp({1, -4}));
  // Steinberg at 13 with Frobenius -1/13 on the invariant line.
  MatQ phi(qq, 2, 2);
  phi(0, 0) = Q(Integer(-1), Integer(13));
  phi(1, 1) = Q(-1);
  auto eul = euler_factor(WeilDeligneRep<Q>(13, phi, e12()));
  CHECK(eul == Polynomial<Q>(qq, {Q(1), Q(Integer(1), Integer(13))}));
}

TEST_CASE("monodromy rank bound") {
  CHECK(monodromy_rank_bound(WeilDeligneRep<Q>(7, qm({{1, 0}, {0, 7}}), qm({{0, 0}, {0, 0}}))) == 1);
  CHECK(monodromy_rank_bound(WeilDeligneRep<Q>(7, qm({{1, 0}, {0, 2}}), qm({{0, 0}, {0, 0}}))) == 0);
  CHECK(monodromy_rank_bound(
            WeilDeligneRep<Q>(3, qm({{1, 0, 0}, {0, 3, 0}, {0, 0, 9}}), qm({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}))) == 2);
  CHECK(monodromy_rank_bound(
            WeilDeligneRep<Q>(3, qm({{1, 0, 0}, {0, 3, 0}, {0, 0, 3}}), qm({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}))) == 1);
}

TEST_CASE("interpolation examples") {
  ring_context_t<QT> ctx{qq};
  Matrix<QT> phi(ctx, 2, 2), n(ctx, 2, 2);
  phi(0, 0) = c(1);
  phi(1, 1) = c(7);
  n(0, 1) = t_var();
  WeilDeligneRep<QT> fam(7, phi, n, {}, 1);
  auto reps = check_interpolation(fam, {{Q(1), true}, {Q(0), false}});
  REQUIRE(reps.size() == 2);
  CHECK(reps[0].pure);
  CHECK(reps[0].match);
  CHECK(reps[0].computed_after == qp({1, -1}));
  CHECK(reps[1].specialized_then_computed == qp({1, -1}));
  CHECK(reps[1].computed_after == qp({1, -8, 7}));
  CHECK_FALSE(reps[1].match);
  CHECK_FALSE(reps[1].pure);
  CHECK(reps[1].degree_jump);
  for (const auto& r : reps) {
    CHECK(r.inequality_holds);
    CHECK(r.consistent);
  }
  Matrix<QT> n0(ctx, 2, 2);
  n0(0, 1) = c(1);
  auto constant = check_interpolation(WeilDeligneRep<QT>(7, phi, n0, {}, 1), {{Q(0), {}}, {Q(5), {}}});
  for (const auto& r : constant) CHECK(r.match);
}

TEST_CASE("interpolation on random families") {
  Rng rng(42);
  int drops = 0, pure_specs = 0;
  for (int t = 0; t < 60; ++t) {
    auto fc = gen::random_family(rng);
    auto reps = check_interpolation(fc.family, fc.specs);
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const auto& r = reps[k];
      CHECK(r.inequality_holds);
      CHECK(r.consistent);
      if (r.pure) {
        ++pure_specs;
        CHECK(r.match);
      }
      if (fc.constructed_rank_drop[k]) {
        CHECK(r.specialized_rank <= r.generic_rank);
        if (r.specialized_rank < r.generic_rank) {
          ++drops;
          CHECK(r.degree_jump);
        }
      }
      if (!fc.constructed_rank_drop[k] && fc.generically_pure) CHECK(r.pure);
    }
  }
  CHECK(drops > 0);
  CHECK(pure_specs > 0);
}
