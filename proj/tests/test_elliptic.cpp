#include "doctest.h"

#include <random>

#include "eulerdet/elliptic/charsum.hpp"
#include "eulerdet/elliptic/curve.hpp"

using namespace eulerdet;
using Q = BigRational;

namespace {

RationalField qq;

long horner_char_sum(const simd::CubicModEll& g, const std::vector<std::int32_t>& chi) {
  long s = 0;
  const std::uint64_t m = g.ell;
  for (std::uint64_t x = 0; x < m; ++x) {
    std::uint64_t v = g.c[3];
    for (int k = 2; k >= 0; --k) v = (v * x + g.c[k]) % m;
    s += chi[v];
  }
  return s;
}

// Euler's criterion, independent of the table construction.
int legendre(long v, long ell) {
  v = ((v % ell) + ell) % ell;
  if (v == 0) return 0;
  long r = 1, b = v, e = (ell - 1) / 2;
  while (e > 0) {
    if (e & 1) r = r * b % ell;
    b = b * b % ell;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

long brute_count(const EllipticCurveQ& e, long ell) {
  const long a1 = mod_long(e.a1(), ell), a2 = mod_long(e.a2(), ell), a3 = mod_long(e.a3(), ell),
             a4 = mod_long(e.a4(), ell), a6 = mod_long(e.a6(), ell);
  long n = 1;
  for (long x = 0; x < ell; ++x)
    for (long y = 0; y < ell; ++y)
      if ((((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % ell) + ell) % ell == 0) ++n;
  return n;
}

EllipticCurveQ random_curve(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-6, 6);
  for (;;) {
    try {
      return EllipticCurveQ(d(rng) % 2, d(rng) % 3, d(rng) % 2, d(rng), d(rng));
    } catch (const Error&) {
    }
  }
}

}  // namespace

TEST_CASE("character table matches Euler's criterion") {
  for (std::uint32_t ell : {3u, 5u, 7u, 101u, 1009u}) {
    auto chi = simd::quadratic_character_table(ell);
    REQUIRE(chi.size() == ell);
    for (std::uint32_t v = 0; v < ell; ++v) CHECK(chi[v] == legendre(v, ell));
  }
}

TEST_CASE("difference state reproduces the cubic") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    std::uint32_t ell = static_cast<std::uint32_t>(primes_up_to(2000)[1 + rng() % 300]);
    simd::CubicModEll g{ell, {static_cast<std::uint32_t>(rng() % ell), static_cast<std::uint32_t>(rng() % ell),
                              static_cast<std::uint32_t>(rng() % ell), static_cast<std::uint32_t>(rng() % ell)}};
    std::uint64_t x0 = rng() % ell, h = 1 + rng() % 8;
    auto st = simd::detail::difference_state(g, x0, h);
    for (int k = 0; k < 20; ++k) {
      std::uint64_t x = (x0 + k * h) % ell, v = g.c[3];
      for (int j = 2; j >= 0; --j) v = (v * x + g.c[j]) % ell;
      CHECK(st.v == v);
      st.v = simd::detail::add_mod(st.v, st.d1, ell);
      st.d1 = simd::detail::add_mod(st.d1, st.d2, ell);
      st.d2 = simd::detail::add_mod(st.d2, st.d3, ell);
    }
  }
}

TEST_CASE("SIMD kernels agree with the scalar kernel and with Horner") {
  std::mt19937_64 rng(2024);
  auto primes = primes_up_to(40000);
  int vector_runs = 0;
  for (int it = 0; it < 400; ++it) {
    std::uint32_t ell = static_cast<std::uint32_t>(it < 40 ? primes[1 + it] : primes[1 + rng() % (primes.size() - 1)]);
    simd::CubicModEll g{ell, {static_cast<std::uint32_t>(rng() % ell), static_cast<std::uint32_t>(rng() % ell),
                              static_cast<std::uint32_t>(rng() % ell), static_cast<std::uint32_t>(rng() % ell)}};
    auto chi = simd::quadratic_character_table(ell);
    long ref = horner_char_sum(g, chi);
    CHECK(simd::char_sum_scalar(g, chi.data()) == ref);
    for (auto k : {simd::Kernel::Avx2, simd::Kernel::Neon}) {
      if (!simd::kernel_available(k)) continue;
      ++vector_runs;
      CHECK(simd::char_sum(g, chi.data(), k) == ref);
    }
    CHECK(simd::char_sum(g, chi.data()) == ref);
  }
  MESSAGE("active kernel: ", simd::kernel_name(simd::active_kernel()), ", vector runs: ", vector_runs);
}

TEST_CASE("unavailable kernels refuse to run") {
  simd::CubicModEll g{7, {1, 0, 0, 1}};
  auto chi = simd::quadratic_character_table(7);
  for (auto k : {simd::Kernel::Avx2, simd::Kernel::Neon})
    if (!simd::kernel_available(k)) CHECK_THROWS_AS(simd::char_sum(g, chi.data(), k), Error);
}

TEST_CASE("curve invariants") {
  auto e1 = example_curve_e1();
  CHECK(e1.discriminant() == Integer(-43264));
  CHECK(e1.c4() == Integer(-48));
  CHECK(e1.c6() == Integer(8640));
  auto e2 = example_curve_e2();
  CHECK(e2.discriminant() == Integer(-55933696));
  CHECK(e2.discriminant() == Integer(-256) * pow(Integer(7), 5) * Integer(13));
  CHECK_THROWS_AS(EllipticCurveQ(0, 0, 0, 0, 0), Error);
  CHECK_THROWS_AS(EllipticCurveQ::from_coefficients({1, 2}), Error);
}

TEST_CASE("point counts") {
  auto e1 = example_curve_e1();
  auto pc = point_count(e1, 3);
  CHECK(pc.count == 4);
  CHECK(pc.a == 0);
  CHECK(point_count(e1, 5).a == 2);
  CHECK(point_count(e1, 7).a == -2);
  CHECK_THROWS_WITH_AS(point_count(e1, 13), doctest::Contains("BadReductionPrime"), Error);
  CHECK_THROWS_AS(point_count(e1, 9), Error);

  std::mt19937_64 rng(5);
  auto primes = primes_up_to(60);
  for (int it = 0; it < 150; ++it) {
    auto e = random_curve(rng);
    for (long l : primes) {
      long brute = brute_count(e, l);
      CHECK(reduced_point_count(e, l).count == brute);
      if (mod_long(e.discriminant(), l) != 0) {
        long a = point_count(e, l).a;
        CHECK(a * a <= 4 * l);
      }
    }
  }
}

TEST_CASE("reduction types of the example curves") {
  auto e1 = example_curve_e1(), e2 = example_curve_e2();
  CHECK(reduction_type(e1, 2) == ReductionType::Additive);
  CHECK(reduction_type(e2, 2) == ReductionType::Additive);
  CHECK(reduction_type(e1, 7) == ReductionType::Good);
  CHECK(reduction_type(e2, 7) == ReductionType::SplitMultiplicative);
  CHECK(reduction_type(e1, 13) == ReductionType::NonsplitMultiplicative);
  CHECK(reduction_type(e2, 13) == ReductionType::NonsplitMultiplicative);
  CHECK(hecke_eigenvalue(e2, 7) == 1);
  CHECK(hecke_eigenvalue(e1, 13) == -1);
  CHECK(hecke_eigenvalue(e1, 2) == 0);
  CHECK(reduction_type_name(ReductionType::SplitMultiplicative) == "split-multiplicative");
}

TEST_CASE("a_ell at bad primes matches the singular point count") {
  // #E_ns(F_ell) + singular point: a = 1, -1, 0 for split, nonsplit, additive.
  std::mt19937_64 rng(17);
  int mult = 0, add = 0;
  for (int it = 0; it < 300; ++it) {
    auto e = random_curve(rng);
    for (long l : primes_up_to(40)) {
      if (mod_long(e.discriminant(), l) != 0 || !is_minimal_at(e, l)) continue;
      auto t = reduction_type(e, l);
      long expected = reduced_point_count(e, l).a;
      CHECK(hecke_eigenvalue(e, l) == expected);
      if (t == ReductionType::Additive) ++add;
      else {
        ++mult;
        CHECK(tangent_cone_splits(e, l) == (t == ReductionType::SplitMultiplicative));
      }
    }
  }
  CHECK(mult > 50);
  CHECK(add > 20);
}

TEST_CASE("minimality") {
  // y^2 = x^3 + 5^4 x + 5^6 is the twist-free rescaling of y^2 = x^3 + x + 1.
  EllipticCurveQ big(0, 0, 0, 625, 15625);
  CHECK_FALSE(is_minimal_at(big, 5));
  CHECK_THROWS_WITH_AS(reduction_type(big, 5), doctest::Contains("NonMinimalModel"), Error);
  CHECK(is_minimal_at(big, 7));
  // u = 2 scaling of y^2 + xy = x^3 - x: a_i * 2^i.
  EllipticCurveQ two(2, 0, 0, -16, 0);
  CHECK_FALSE(is_minimal_at(two, 2));
  EllipticCurveQ three(0, 0, 0, -81, 0);  // 3^4 a4 with a4 = -1
  CHECK_FALSE(is_minimal_at(three, 3));
  CHECK(is_minimal_at(example_curve_e1(), 2));
  CHECK(is_minimal_at(example_curve_e2(), 2));
}

TEST_CASE("Euler factors and WD models") {
  auto e1 = example_curve_e1(), e2 = example_curve_e2();
  CHECK(euler_factor_motive(e1, 7, 5) == Polynomial<Q>(qq, {Q(1), Q(2, 7), Q(1, 7)}));
  CHECK(euler_factor_motive(e2, 7, 5) == Polynomial<Q>(qq, {Q(1), Q(-1, 7)}));
  CHECK(euler_factor_motive(e1, 13, 5) == Polynomial<Q>(qq, {Q(1), Q(1, 13)}));
  CHECK(euler_factor_motive(e2, 2, 5) == Polynomial<Q>(qq, {Q(1)}));
  CHECK_THROWS_WITH_AS(euler_factor_motive(e1, 5, 5), doctest::Contains("PrimeEqualsP"), Error);
  CHECK_THROWS_WITH_AS(local_wd_model(e1, 5, 5), doctest::Contains("PrimeEqualsP"), Error);

  for (const auto& e : {e1, e2}) {
    for (long l : primes_up_to(200)) {
      if (l == 5) continue;
      auto wd = local_wd_model(e, l, 5);
      CHECK(euler_factor(wd) == euler_factor_motive(e, l, 5));
      CHECK(check_purity(wd, -1).pure);
    }
  }
}

TEST_CASE("Sturm and conductor bounds") {
  CHECK(sturm_bound(Integer(364)) == 112);
  CHECK(sturm_bound(Integer(52)) == 14);
  CHECK(sturm_bound(Integer(11)) == 2);
  CHECK(sturm_bound(Integer(1)) == 1);
  CHECK_THROWS_AS(sturm_bound(Integer(0)), Error);
  auto e1 = example_curve_e1();
  CHECK(conductor_bound(e1) == Integer(256 * 169));
  CHECK(divides(Integer(kExampleConductorE1), conductor_bound(e1)));
  CHECK(divides(Integer(kExampleConductorE2), conductor_bound(example_curve_e2())));
}

TEST_CASE("congruence check") {
  auto e1 = example_curve_e1(), e2 = example_curve_e2();
  auto rep = congruence_check(e1, e2, 5, std::nullopt, std::make_pair(Integer(52), Integer(364)));
  CHECK(rep.bound == 112);
  CHECK(rep.level == Integer(364));
  CHECK(rep.congruent);
  CHECK(rep.failures.empty());
  CHECK(std::find(rep.checked.begin(), rep.checked.end(), 7) == rep.checked.end());
  CHECK(std::find(rep.checked.begin(), rep.checked.end(), 5) == rep.checked.end());
  CHECK(rep.checked.size() == primes_up_to(112).size() - 4);

  auto bad = congruence_check(e1, e2, 7, 112L);
  CHECK_FALSE(bad.congruent);
  CHECK(bad.failures.front().ell == 5);

  std::mt19937_64 rng(3);
  for (int it = 0; it < 20; ++it) {
    auto e = random_curve(rng);
    try {
      CHECK(congruence_check(e, e, 3, 60L).congruent);
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::NonMinimalModel);
    }
  }
  CHECK_THROWS_AS(congruence_check(e1, e2, 4, 10L), Error);
}

TEST_CASE("unit analysis and residual data") {
  auto e1 = example_curve_e1(), e2 = example_curve_e2();
  auto r1 = unit_analysis(e1, {2, 5, 7, 13}, 5);
  REQUIRE(r1.size() == 3);
  CHECK(r1[0].value == Q(1));
  CHECK(r1[1].value == Q(10, 7));
  CHECK(r1[2].value == Q(14, 13));
  CHECK(r1[1].valuation == 1);
  auto r2 = unit_analysis(e2, {2, 7, 13}, 5);
  CHECK(r2[1].value == Q(6, 7));
  CHECK(r2[0].valuation + r2[1].valuation + r2[2].valuation == 0);

  for (long l : primes_up_to(112)) {
    if (l == 2 || l == 5 || l == 7 || l == 13) continue;
    CHECK(residual_frobenius_data(e1, 5, l) == residual_frobenius_data(e2, 5, l));
  }
  CHECK(residual_frobenius_data(e1, 5, 3) == std::make_pair(0L, 3L));
  CHECK_THROWS_AS(residual_frobenius_data(e1, 5, 5), Error);
}

TEST_CASE("obstruction on the congruent pair") {
  auto e1 = example_curve_e1(), e2 = example_curve_e2();
  auto fam = congruent_pair_family(e1, e2, 5, {2, 5, 7, 13});
  CHECK_FALSE(fam.is_domain());
  auto rep = obstruction_scan(fam, fam.points()[0], fam.points()[1]);
  CHECK(rep.impossible);
  CHECK_THROWS_AS(congruent_pair_family(e1, e2, 5, {2, 7}), Error);
}

TEST_CASE("example golden values") {
  auto rep = congruent_pair_example();
  for (const auto& c : rep.checks) {
    INFO(c.name, ": expected ", c.expected, ", got ", c.actual);
    CHECK(c.pass);
  }
  CHECK(rep.pass);
  CHECK(rep.checks.size() == 23);
}

TEST_CASE("Euler value at 1 and point count share p-adic valuation") {
  for (const auto& e : {example_curve_e1(), example_curve_e2()}) {
    int checked = 0;
    for (long l : primes_up_to(1000)) {
      if (l == 5 || mod_long(e.discriminant(), l) == 0) continue;
      Q v = euler_factor_motive(e, l, 5).evaluate(Q(1));
      CHECK(v == Q(Integer(point_count(e, l).count), Integer(l)));
      CHECK(valuation(v, 5) == valuation(Integer(brute_count(e, l)), 5));
      ++checked;
    }
    CHECK(checked > 160);
  }
}
