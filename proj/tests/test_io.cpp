#include "doctest.h"

#include "eulerdet/io/json_io.hpp"
#include "eulerdet/suites/generators.hpp"

using namespace eulerdet;
using Q = BigRational;
using MatQ = Matrix<BigRational>;
using io::json;

namespace {

RationalField qq;

}  // namespace

TEST_CASE("scalars are decimal strings") {
  Integer big = pow(Integer(10), 40) + Integer(7);
  CHECK(io::codec<Integer>::encode(big) == json("10000000000000000000000000000000000000007"));
  CHECK(io::decode_integer(json("10000000000000000000000000000000000000007")) == big);
  CHECK(io::decode_integer(json(-12)) == Integer(-12));
  CHECK(io::codec<Q>::encode(Q(-3, 6)) == json("-1/2"));
  CHECK(io::decode_rational(json("6/4")) == Q(3, 2));
  CHECK_THROWS_AS(io::decode_rational(json(1.5)), Error);
  CHECK_THROWS_AS(io::decode_integer(json("12x")), Error);
}

TEST_CASE("matrices and polynomials round trip") {
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    auto m = gen::random_matrix_q(rng, static_cast<std::size_t>(rng.uniform(0, 3)), static_cast<std::size_t>(rng.uniform(0, 3)), 9);
    auto back = io::decode_matrix<Q>(io::encode_matrix(m), qq);
    CHECK(back == m);
  }
  auto p = Polynomial<Q>(qq, {Q(1), Q(2, 7), Q(1, 7)});
  CHECK(io::encode_polynomial(p) == json::parse(R"(["1","2/7","1/7"])"));
  CHECK(io::decode_polynomial<Q>(io::encode_polynomial(p), qq) == p);
  CHECK_THROWS_AS(io::decode_matrix<Q>(json::parse("[[1,2],[3]]"), qq), Error);
}

TEST_CASE("rational functions") {
  ring_context_t<QT> ctx{qq};
  QT t = QT::variable(qq);
  QT f = (t - QT::constant(Q(5))) / (t + QT::constant(Q(1)));
  CHECK(io::codec<QT>::decode(io::codec<QT>::encode(f), ctx) == f);
  CHECK(io::codec<QT>::encode(QT::constant(Q(3, 4))) == json("3/4"));
  CHECK(io::codec<QT>::decode(json::parse(R"(["0","1"])"), ctx) == t);
}

TEST_CASE("complexes and WD representations round trip") {
  Rng rng(2);
  for (int k = 0; k < 30; ++k) {
    auto c = gen::random_acyclic_q(rng, static_cast<int>(rng.uniform(-2, 2)), 4);
    CHECK(io::decode_complex<Q>(io::encode_complex(c), qq) == c);
  }
  auto c0 = PerfectComplex<Q>(qq, 0, {0, 2}, {MatQ(qq, 2, 0)});
  CHECK(io::decode_complex<Q>(io::encode_complex(c0), qq) == c0);

  WeilDeligneRep<Q> wd(7, MatQ::from_ints(qq, {{1, 0}, {0, 7}}), MatQ::from_ints(qq, {{0, 1}, {0, 0}}), {}, 1);
  auto back = io::decode_wd<Q>(io::encode_wd(wd), qq);
  CHECK(back.frobenius() == wd.frobenius());
  CHECK(back.monodromy() == wd.monodromy());
  CHECK(back.weight() == 1);
  auto minimal = io::decode_wd<Q>(json::parse(R"({"ell": 3, "frobenius": [["2"]]})"), qq);
  CHECK(minimal.monodromy().is_zero());
  CHECK_THROWS_AS(io::decode_wd<Q>(json::parse(R"({"frobenius": [["2"]]})"), qq), Error);
}

TEST_CASE("zero schemes, curves and Selmer data") {
  auto x = io::decode_zero_scheme(json::parse(R"({"points": [{"degree": 2, "frobenius": [["1","1"],["0","2"]]},
                                                             {"frobenius": [["3"]]}]})"));
  REQUIRE(x.points.size() == 2);
  CHECK(x.points[0].degree == 2);
  CHECK(x.points[1].degree == 1);
  CHECK(io::encode_zero_scheme(io::decode_zero_scheme(io::encode_zero_scheme(x))) == io::encode_zero_scheme(x));

  auto e = io::decode_curve(json::parse(R"([0, 0, 0, "-584", "5444"])"));
  CHECK(e == example_curve_e2());
  CHECK(io::encode_curve(e) == json::parse(R"(["0","0","0","-584","5444"])"));
  CHECK_THROWS_AS(io::decode_curve(json::parse("[1,2]")), Error);

  auto s = io::decode_selmer(json::parse(R"({
    "global": {"lowest": 0, "ranks": [1, 1], "differentials": [[["2"]]]},
    "places": [{"label": "7",
                "full": {"lowest": 0, "ranks": [1, 1], "differentials": [[["3"]]]},
                "localization": {},
                "condition": {"tag": "zero", "complex": {"lowest": 0, "ranks": []}, "inclusion": {}}}]})"));
  CHECK(s.places.size() == 1);
  CHECK(s.places[0].condition.tag == ConditionTag::Zero);
  CHECK(selmer_cone(s).euler_characteristic() == 0);
}

TEST_CASE("family descriptors") {
  auto fam = discrepancy_demo_family();
  auto j = io::encode_family(fam);
  CHECK(j["ring"] == "Q(T) x Q(T)");
  CHECK(j["components"].size() == 2);
  j["points"] = json::parse(R"([{"label": "T=0", "component": 0, "at": "0"}, {"label": "T=1", "component": 0, "at": 1, "pure": true}])");
  auto back = std::get<AlgebraicFamily<QT>>(io::decode_family(j));
  CHECK(back.local(7, 0).monodromy() == fam.local(7, 0).monodromy());
  CHECK(back.points().size() == 2);
  CHECK(back.points()[1].pure);

  auto q = io::decode_family(json::parse(R"({"ring": "Q", "p": 5, "sigma": [5, 7],
      "components": [{"local": {"7": {"ell": 7, "frobenius": [["3"]]}}}],
      "points": [{"label": "id"}]})"));
  const auto& fq = std::get<AlgebraicFamily<Q>>(q);
  CHECK(local_determinant_line(fq, 7).generator == Q(-2));
  CHECK_THROWS_AS(io::decode_family(json::parse(R"({"ring": "Q", "p": 5, "sigma": [7], "components": [{}]})")), Error);
}

TEST_CASE("Iwasawa elements") {
  IwasawaRing lam{5, 3, 8};
  auto f = io::codec<IwasawaElement>::decode(json::parse(R"(["-5", 1])"), lam);
  CHECK(f == IwasawaElement::from_polynomial(5, 3, 8, {-5, 1}));
  CHECK(io::codec<IwasawaElement>::decode(io::codec<IwasawaElement>::encode(f), lam) == f);
}
