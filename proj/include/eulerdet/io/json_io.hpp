#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "eulerdet/complexes/complex.hpp"
#include "eulerdet/elliptic/curve.hpp"
#include "eulerdet/families/families.hpp"
#include "eulerdet/galois/galois.hpp"
#include "eulerdet/rings/iwasawa.hpp"
#include "eulerdet/rings/padic.hpp"
#include "eulerdet/rings/rational_function.hpp"
#include "eulerdet/rings/ring_hom.hpp"
#include "eulerdet/wd/weil_deligne.hpp"

// Canonical JSON forms. Integers and rationals are decimal strings ("-12",
// "3/4"); inputs may also use JSON integers. Polynomials are coefficient
// arrays, lowest degree first. Matrices are arrays of rows; an empty shape is
// written {"rows": r, "cols": c}.
namespace eulerdet::io {

using json = nlohmann::json;

[[noreturn]] inline void bad(const std::string& what) { throw Error(ErrorCode::InvalidArgument, "JSON: " + what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline Integer decode_integer(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return Integer::parse(j.get<std::string>());
  bad("expected an integer, got " + j.dump());
}

inline BigRational decode_rational(const json& j) {
  if (j.is_number_integer()) return BigRational(j.get<long>());
  if (j.is_string()) return BigRational::parse(j.get<std::string>());
  bad("expected a rational, got " + j.dump());
}

inline long decode_long(const json& j) {
  Integer v = decode_integer(j);
  if (!v.fits_long()) bad("value out of range: " + j.dump());
  return v.to_long();
}

template <class R>
struct codec;

template <>
struct codec<Integer> {
  static json encode(const Integer& x) { return x.to_string(); }
  static Integer decode(const json& j, const IntegerRing&) { return decode_integer(j); }
};

template <>
struct codec<BigRational> {
  static json encode(const BigRational& x) { return x.to_string(); }
  static BigRational decode(const json& j, const RationalField&) { return decode_rational(j); }
};

template <>
struct codec<PAdic> {
  static json encode(const PAdic& x) { return x.residue().to_string(); }
  static PAdic decode(const json& j, const PAdicRing& r) { return PAdic(r.p, r.precision, decode_integer(j)); }
};

template <>
struct codec<IwasawaElement> {
  static json encode(const IwasawaElement& x) {
    json a = json::array();
    for (const auto& c : x.raw()) a.push_back(c.get_str());
    return a;
  }
  static IwasawaElement decode(const json& j, const IwasawaRing& r) {
    std::vector<Integer> c;
    if (j.is_array()) {
      for (const auto& x : j) c.push_back(decode_integer(x));
    } else {
      c.push_back(decode_integer(j));
    }
    return IwasawaElement(r.p, r.p_precision, r.t_precision, c);
  }
};

template <class R>
json encode_polynomial(const Polynomial<R>& p) {
  json a = json::array();
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) a.push_back(codec<R>::encode(p.coefficient(i)));
  return a;
}

template <class R>
Polynomial<R> decode_polynomial(const json& j, const ring_context_t<R>& ctx) {
  if (!j.is_array()) bad("expected a coefficient array, got " + j.dump());
  std::vector<R> c;
  for (const auto& x : j) c.push_back(codec<R>::decode(x, ctx));
  return Polynomial<R>(ctx, c);
}

// Elements of Q(T): a rational, a coefficient array in T, or
// {"num": [...], "den": [...]}.
template <>
struct codec<QT> {
  static json encode(const QT& x) {
    if (x.is_constant()) return x.numerator().coefficient(0).to_string();
    if (x.is_polynomial()) return encode_polynomial(x.numerator());
    return {{"num", encode_polynomial(x.numerator())}, {"den", encode_polynomial(x.denominator())}};
  }
  static QT decode(const json& j, const ring_context_t<QT>& ctx) {
    const RationalField& q = ctx.base;
    if (j.is_array()) return QT(decode_polynomial<BigRational>(j, q));
    if (j.is_object()) {
      return QT(decode_polynomial<BigRational>(field(j, "num"), q), decode_polynomial<BigRational>(field(j, "den"), q));
    }
    return QT::constant(decode_rational(j));
  }
};

template <class R>
json encode_matrix(const Matrix<R>& m) {
  if (m.rows() == 0 || m.cols() == 0) return {{"rows", m.rows()}, {"cols", m.cols()}};
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(codec<R>::encode(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class R>
Matrix<R> decode_matrix(const json& j, const ring_context_t<R>& ctx) {
  if (j.is_object()) {
    return Matrix<R>(ctx, static_cast<std::size_t>(decode_long(field(j, "rows"))),
                     static_cast<std::size_t>(decode_long(field(j, "cols"))));
  }
  if (!j.is_array() || j.empty()) bad("expected a matrix, got " + j.dump());
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix<R> m(ctx, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) bad("ragged matrix row " + std::to_string(i));
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = codec<R>::decode(j[i][k], ctx);
  }
  return m;
}

template <class R>
json encode_complex(const PerfectComplex<R>& c) {
  json d = json::array();
  for (const auto& m : c.differentials()) d.push_back(encode_matrix(m));
  return {{"lowest", c.lowest()}, {"ranks", c.ranks()}, {"differentials", d}};
}

template <class R>
PerfectComplex<R> decode_complex(const json& j, const ring_context_t<R>& ctx) {
  int lowest = static_cast<int>(decode_long(field(j, "lowest")));
  std::vector<std::size_t> ranks;
  for (const auto& r : field(j, "ranks")) ranks.push_back(static_cast<std::size_t>(decode_long(r)));
  std::vector<Matrix<R>> d;
  if (j.contains("differentials")) {
    const auto& dj = j.at("differentials");
    for (std::size_t i = 0; i < dj.size(); ++i) {
      Matrix<R> m = decode_matrix<R>(dj[i], ctx);
      // Zero-size blocks come back as 0 x 0 from a bare array; use the ranks.
      if (i + 1 < ranks.size() && (ranks[i] == 0 || ranks[i + 1] == 0)) m = Matrix<R>(ctx, ranks[i + 1], ranks[i]);
      d.push_back(std::move(m));
    }
  } else {
    for (std::size_t i = 0; i + 1 < ranks.size(); ++i) d.emplace_back(ctx, ranks[i + 1], ranks[i]);
  }
  return PerfectComplex<R>(ctx, lowest, ranks, d);
}

template <class R>
ComplexMap<R> decode_complex_map(const json& components, const PerfectComplex<R>& source,
                                 const PerfectComplex<R>& target) {
  std::map<int, Matrix<R>> f;
  if (!components.is_object()) bad("chain map components must be an object keyed by degree");
  for (const auto& [k, v] : components.items()) f.emplace(std::stoi(k), decode_matrix<R>(v, source.context()));
  return ComplexMap<R>(source, target, f);
}

template <class R>
json encode_complex_map(const ComplexMap<R>& f) {
  json c = json::object();
  auto [lo, hi] = degree_span(f.source(), f.target());
  for (int i = lo; i <= hi; ++i) {
    auto m = f.component(i);
    if (m.rows() > 0 && m.cols() > 0) c[std::to_string(i)] = encode_matrix(m);
  }
  return c;
}

template <class R>
json encode_wd(const WeilDeligneRep<R>& wd) {
  json in = json::array();
  for (const auto& g : wd.inertia()) in.push_back(encode_matrix(g));
  return {{"ell", wd.ell()},
          {"frobenius", encode_matrix(wd.frobenius())},
          {"monodromy", encode_matrix(wd.monodromy())},
          {"inertia", in},
          {"weight", wd.weight()}};
}

template <class R>
WeilDeligneRep<R> decode_wd(const json& j, const ring_context_t<R>& ctx) {
  long ell = decode_long(field(j, "ell"));
  Matrix<R> phi = decode_matrix<R>(field(j, "frobenius"), ctx);
  Matrix<R> n = j.contains("monodromy") ? decode_matrix<R>(j.at("monodromy"), ctx) : Matrix<R>(ctx, phi.rows(), phi.cols());
  std::vector<Matrix<R>> inertia;
  if (j.contains("inertia"))
    for (const auto& g : j.at("inertia")) inertia.push_back(decode_matrix<R>(g, ctx));
  int w = j.contains("weight") ? static_cast<int>(decode_long(j.at("weight"))) : 0;
  return WeilDeligneRep<R>(ell, phi, n, inertia, w);
}

inline FrobeniusModule<BigRational> decode_frobenius_module(const json& j) {
  RationalField q;
  FrobeniusModule<BigRational> m(decode_matrix<BigRational>(field(j, "frobenius"), q));
  if (j.contains("inertia"))
    for (const auto& g : j.at("inertia")) m.inertia.push_back(decode_matrix<BigRational>(g, q));
  if (j.contains("q")) m.q = decode_long(j.at("q"));
  return m;
}

// {"points": [{"degree": d, "frobenius": M}, ...]} over Q.
inline EtaleZeroScheme<BigRational> decode_zero_scheme(const json& j) {
  EtaleZeroScheme<BigRational> x{RationalField{}, {}};
  for (const auto& pt : field(j, "points")) {
    int d = pt.contains("degree") ? static_cast<int>(decode_long(pt.at("degree"))) : 1;
    if (d < 1) bad("closed point degree must be >= 1");
    x.points.push_back({d, decode_frobenius_module(pt)});
  }
  return x;
}

inline json encode_zero_scheme(const EtaleZeroScheme<BigRational>& x) {
  json pts = json::array();
  for (const auto& pt : x.points) pts.push_back({{"degree", pt.degree}, {"frobenius", encode_matrix(pt.stalk.frobenius)}});
  return {{"points", pts}};
}

inline ConditionTag decode_condition_tag(const json& j) {
  const std::string s = j.get<std::string>();
  for (auto t : {ConditionTag::Full, ConditionTag::Unramified, ConditionTag::NearlyOrdinary, ConditionTag::Zero})
    if (condition_tag_name(t) == s) return t;
  bad("unknown local condition \"" + s + "\"");
}

// {"global": C, "places": [{"label", "full": C, "localization": {deg: M},
//   "condition": {"tag", "complex": C, "inclusion": {deg: M}, "sub_rank"}}]}
inline SelmerDatum<BigRational> decode_selmer(const json& j) {
  RationalField q;
  SelmerDatum<BigRational> d{decode_complex<BigRational>(field(j, "global"), q), {}};
  for (const auto& pl : field(j, "places")) {
    auto full = decode_complex<BigRational>(field(pl, "full"), q);
    const auto& cj = field(pl, "condition");
    auto cond = decode_complex<BigRational>(field(cj, "complex"), q);
    LocalConditionDatum<BigRational> c{decode_complex_map<BigRational>(field(cj, "inclusion"), cond, full),
                                       decode_condition_tag(field(cj, "tag")),
                                       cj.contains("sub_rank") ? static_cast<std::size_t>(decode_long(cj.at("sub_rank"))) : 0};
    d.places.push_back({pl.value("label", std::string("v")),
                        decode_complex_map<BigRational>(field(pl, "localization"), d.global, full), c});
  }
  return d;
}

inline EllipticCurveQ decode_curve(const json& j) {
  if (!j.is_array() || j.size() != 5) bad("curve must be [a1, a2, a3, a4, a6]");
  std::vector<Integer> a;
  for (const auto& x : j) a.push_back(decode_integer(x));
  return EllipticCurveQ::from_coefficients(a);
}

inline json encode_curve(const EllipticCurveQ& e) {
  json a = json::array();
  for (const auto& x : e.coefficients()) a.push_back(x.to_string());
  return a;
}

// Family descriptor:
//   {"ring": "Q" | "Q(T)", "p": 5, "sigma": [5, 7],
//    "components": [{"local": {"7": WD}, "global": C}],
//    "points": [{"label", "component", "at": "0", "pure": true}]}
// Points on a Q-family are identity maps and carry no "at".
using AnyFamily = std::variant<AlgebraicFamily<BigRational>, AlgebraicFamily<QT>>;

template <class R>
AlgebraicFamily<R> decode_family_as(const json& j, const ring_context_t<R>& ctx, const std::string& ring) {
  const RationalField q;
  long p = decode_long(field(j, "p"));
  std::vector<long> sigma;
  for (const auto& l : field(j, "sigma")) sigma.push_back(decode_long(l));
  std::vector<FamilyComponent<R>> comps;
  for (const auto& cj : field(j, "components")) {
    FamilyComponent<R> c;
    if (cj.contains("local"))
      for (const auto& [k, v] : cj.at("local").items()) c.local.emplace(std::stol(k), decode_wd<R>(v, ctx));
    if (cj.contains("global")) c.global = decode_complex<R>(cj.at("global"), ctx);
    comps.push_back(std::move(c));
  }
  std::vector<FamilyPoint<R>> points;
  if (j.contains("points")) {
    for (const auto& pj : j.at("points")) {
      auto comp = pj.contains("component") ? static_cast<std::size_t>(decode_long(pj.at("component"))) : 0;
      bool pure = pj.value("pure", false);
      std::string label = pj.value("label", std::string("point"));
      if constexpr (std::is_same_v<R, QT>) {
        BigRational at = decode_rational(field(pj, "at"));
        points.push_back({label, comp, evaluate_rational_function<BigRational>(q, at, at.to_string()), pure});
      } else {
        points.push_back({label, comp, identity_hom<BigRational>(q), pure});
      }
    }
  }
  return AlgebraicFamily<R>(ring, p, sigma, comps, points);
}

inline AnyFamily decode_family(const json& j) {
  const std::string ring = j.value("ring", std::string("Q"));
  const RationalField q;
  const bool polynomial = ring.find("(T)") != std::string::npos;
  if (!polynomial) return decode_family_as<BigRational>(j, q, ring);
  return decode_family_as<QT>(j, ring_context_t<QT>{q}, ring);
}

template <class R>
json encode_family(const AlgebraicFamily<R>& f) {
  json comps = json::array();
  for (std::size_t k = 0; k < f.component_count(); ++k) {
    json local = json::object();
    for (long l : f.ramified()) local[std::to_string(l)] = encode_wd(f.local(l, k));
    json c{{"local", local}};
    if (f.component(k).global) c["global"] = encode_complex(*f.component(k).global);
    comps.push_back(std::move(c));
  }
  json pts = json::array();
  for (const auto& pt : f.points())
    pts.push_back({{"label", pt.label}, {"component", pt.component}, {"map", pt.hom.descriptor()}, {"pure", pt.pure}});
  return {{"ring", f.ring()}, {"p", f.p()}, {"sigma", f.sigma()}, {"components", comps}, {"points", pts}};
}

}  // namespace eulerdet::io
