#pragma once

#include <map>
#include <vector>

#include "eulerdet/complexes/complex.hpp"
#include "eulerdet/families/families.hpp"
#include "eulerdet/galois/galois.hpp"
#include "eulerdet/wd/weil_deligne.hpp"
#include "eulerdet/linalg/linalg.hpp"
#include "eulerdet/rings/iwasawa.hpp"
#include "eulerdet/rings/rational.hpp"
#include "eulerdet/util/rng.hpp"

// Seeded generators for the property suites. Everything here works over Q
// except the Iwasawa presentations at the end.
namespace eulerdet::gen {

using Q = BigRational;
using MatQ = Matrix<BigRational>;

inline MatQ random_matrix_q(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  MatQ m(RationalField{}, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Q(rng.uniform(-bound, bound));
  return m;
}

inline MatQ random_invertible_q(Rng& rng, std::size_t n, long bound = 3) {
  for (;;) {
    MatQ m = random_matrix_q(rng, n, n, bound);
    if (!determinant(m).is_zero()) return m;
  }
}

// Acyclic complex: a sum of [Q -1-> Q] pieces in random positions, then a
// random change of basis in every degree.
inline PerfectComplex<Q> random_acyclic_q(Rng& rng, int lowest, int length, std::size_t max_pieces = 2) {
  RationalField ctx;
  std::vector<std::size_t> piece(static_cast<std::size_t>(std::max(length - 1, 0)));
  for (auto& p : piece) p = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(max_pieces)));
  std::vector<std::size_t> ranks(static_cast<std::size_t>(length), 0);
  for (std::size_t k = 0; k < piece.size(); ++k) {
    ranks[k] += piece[k];
    ranks[k + 1] += piece[k];
  }
  // In degree k the basis is (targets of piece k-1, sources of piece k).
  std::vector<MatQ> d;
  for (std::size_t k = 0; k < piece.size(); ++k) {
    MatQ m(ctx, ranks[k + 1], ranks[k]);
    std::size_t src0 = k == 0 ? 0 : piece[k - 1];
    for (std::size_t t = 0; t < piece[k]; ++t) m(t, src0 + t) = Q(1);
    d.push_back(m);
  }
  std::vector<MatQ> g, ginv;
  for (auto r : ranks) {
    g.push_back(random_invertible_q(rng, r));
    ginv.push_back(inverse(g.back()));
  }
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = g[k + 1] * d[k] * ginv[k];
  return PerfectComplex<Q>(ctx, lowest, ranks, d);
}

// 0 -> C1 -> C2 -> C3 -> 0 with C2 = [[d1, d1 K - K d3], [0, d3]] after a
// random change of basis of C2.
inline ShortExactSequence<Q> random_ses_q(Rng& rng) {
  RationalField ctx;
  int len = static_cast<int>(rng.uniform(2, 4));
  auto c1 = random_acyclic_q(rng, static_cast<int>(rng.uniform(-1, 1)), len);
  auto c3 = random_acyclic_q(rng, static_cast<int>(rng.uniform(-1, 1)), len);
  auto [lo, hi] = degree_span(c1, c3);
  std::map<int, MatQ> k;
  for (int i = lo; i <= hi + 1; ++i) k.emplace(i, random_matrix_q(rng, c1.rank(i), c3.rank(i), 2));
  auto kk = [&](int i) { return k.count(i) ? k.at(i) : MatQ(ctx, c1.rank(i), c3.rank(i)); };
  std::map<int, MatQ> p, pinv;
  std::vector<std::size_t> ranks;
  for (int i = lo; i <= hi; ++i) {
    std::size_t r = c1.rank(i) + c3.rank(i);
    ranks.push_back(r);
    p.emplace(i, random_invertible_q(rng, r, 2));
    pinv.emplace(i, inverse(p.at(i)));
  }
  auto c2 = assemble_complex<Q>(ctx, lo, hi, ranks, [&](int i) {
    MatQ h = c1.differential(i) * kk(i) - kk(i + 1) * c3.differential(i);
    MatQ m(ctx, c1.rank(i + 1) + c3.rank(i + 1), c1.rank(i) + c3.rank(i));
    set_block(m, 0, 0, c1.differential(i));
    set_block(m, 0, c1.rank(i), h);
    set_block(m, c1.rank(i + 1), c1.rank(i), c3.differential(i));
    return MatQ(p.at(i + 1) * m * pinv.at(i));
  });
  std::map<int, MatQ> a, b;
  for (int i = lo; i <= hi; ++i) {
    MatQ incl(ctx, c2.rank(i), c1.rank(i));
    for (std::size_t t = 0; t < c1.rank(i); ++t) incl(t, t) = Q(1);
    MatQ proj(ctx, c3.rank(i), c2.rank(i));
    for (std::size_t t = 0; t < c3.rank(i); ++t) proj(t, c1.rank(i) + t) = Q(1);
    a.emplace(i, p.at(i) * incl);
    b.emplace(i, proj * pinv.at(i));
  }
  return ShortExactSequence<Q>(ComplexMap<Q>(c1, c2, a), ComplexMap<Q>(c2, c3, b));
}

// Frobenius with det(1 - F) != 0.
inline FrobeniusModule<Q> random_frobenius_invertible_q(Rng& rng, std::size_t n, long bound = 4) {
  for (;;) {
    MatQ f = random_matrix_q(rng, n, n, bound);
    if (!determinant(one_minus(f)).is_zero()) return FrobeniusModule<Q>(f);
  }
}

// F = P (I_k (+) A) P^{-1} with A upper triangular and no eigenvalue 1, so F
// is semisimple at 1 but may be non-semisimple elsewhere.
inline FrobeniusModule<Q> random_semisimple_at_one_q(Rng& rng, std::size_t n) {
  RationalField ctx;
  std::size_t k = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n)));
  MatQ j = MatQ::identity(ctx, n);
  const long diag[] = {-2, -1, 0, 2, 3};
  for (std::size_t i = k; i < n; ++i) {
    j(i, i) = Q(diag[rng.uniform(0, 4)]);
    for (std::size_t c = i + 1; c < n; ++c) j(i, c) = Q(rng.uniform(-2, 2));
  }
  MatQ p = random_invertible_q(rng, n, 2);
  return FrobeniusModule<Q>(p * j * inverse(p));
}

inline EtaleZeroScheme<Q> random_zero_scheme_q(Rng& rng, int max_points = 5, int max_degree = 4,
                                               std::size_t max_rank = 3) {
  EtaleZeroScheme<Q> x{RationalField{}, {}};
  int count = static_cast<int>(rng.uniform(1, max_points));
  for (int k = 0; k < count; ++k) {
    int deg = static_cast<int>(rng.uniform(1, max_degree));
    auto r = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_rank)));
    x.points.push_back({deg, FrobeniusModule<Q>(random_matrix_q(rng, r, r, 3))});
  }
  return x;
}

// Chain map from G = [G^0 -> G^1] to L = [L^0 -> L^1]:
// f^0 = W dG + ker(dL) U, f^1 = dL W.
inline ComplexMap<Q> random_two_term_map_q(Rng& rng, const PerfectComplex<Q>& g, const PerfectComplex<Q>& l) {
  MatQ dg = g.differential(0);
  MatQ dl = l.differential(0);
  MatQ w = random_matrix_q(rng, l.rank(0), g.rank(1), 2);
  MatQ kl = kernel(dl);
  MatQ u = random_matrix_q(rng, kl.cols(), g.rank(0), 2);
  MatQ f0 = w * dg + kl * u;
  MatQ f1 = dl * w;
  return ComplexMap<Q>(g, l, {{0, f0}, {1, f1}});
}

inline SelmerDatum<Q> random_selmer_q(Rng& rng, std::size_t max_places = 3) {
  auto g = PerfectComplex<Q>::two_term(
      random_matrix_q(rng, static_cast<std::size_t>(rng.uniform(0, 3)), static_cast<std::size_t>(rng.uniform(0, 3)), 2));
  SelmerDatum<Q> d{g, {}};
  auto count = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(max_places)));
  for (std::size_t k = 0; k < count; ++k) {
    auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    auto local = unramified_complex(FrobeniusModule<Q>(random_matrix_q(rng, n, n, 2)));
    auto loc = random_two_term_map_q(rng, g, local);
    LocalConditionDatum<Q> cond = LocalConditionDatum<Q>::zero_condition(local);
    switch (rng.uniform(0, 2)) {
      case 0: cond = LocalConditionDatum<Q>::full_condition(local); break;
      case 1: break;
      default: {
        auto sub = PerfectComplex<Q>::two_term(random_matrix_q(rng, 1, 1, 2));
        cond = {random_two_term_map_q(rng, sub, local), ConditionTag::NearlyOrdinary, 1};
      }
    }
    d.places.push_back({"v" + std::to_string(k), loc, cond});
  }
  return d;
}

// Nilpotent N = P J P^{-1} for a random Jordan type J, together with the
// filtration read off from J: in a block of size s the vector N^{s-1-t} v_top
// has weight 2t - (s - 1).
template <class R>
struct NilpotentCase {
  Matrix<R> n;
  Filtration<R> expected;
};

template <class R>
Matrix<R> random_invertible(Rng& rng, const ring_context_t<R>& ctx, std::size_t n, long bound) {
  for (;;) {
    Matrix<R> m(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = ring_traits<R>::from_int(ctx, rng.uniform(-bound, bound));
    if (!ring_traits<R>::is_zero(determinant(m))) return m;
  }
}

template <class R>
NilpotentCase<R> random_nilpotent(Rng& rng, const ring_context_t<R>& ctx, std::size_t n) {
  std::vector<std::size_t> sizes;
  std::size_t left = n;
  while (left > 0) {
    auto s = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(left)));
    sizes.push_back(s);
    left -= s;
  }
  Matrix<R> j(ctx, n, n);
  std::vector<int> weight(n);
  std::size_t base = 0;
  for (auto s : sizes) {
    for (std::size_t t = 0; t < s; ++t) {
      if (t > 0) j(base + t - 1, base + t) = ring_traits<R>::one(ctx);
      weight[base + t] = 2 * static_cast<int>(t) - static_cast<int>(s - 1);
    }
    base += s;
  }
  Matrix<R> p = random_invertible<R>(rng, ctx, n, 3);
  Matrix<R> pinv = inverse(p);
  const int dn = static_cast<int>(n);
  Filtration<R> f{n, -dn, {}};
  for (int k = -dn; k <= dn; ++k) {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < n; ++i)
      if (weight[i] <= k) cols.push_back(i);
    f.steps.push_back(p.select_columns(cols));
  }
  return {p * j * pinv, f};
}

// A family over Q(T) assembled from "strings" v_0 <- v_1 <- ... <- v_{s-1}
// with Phi v_t = alpha ell^t v_t and N v_t = c_t(T) v_{t-1}, conjugated by a
// random rational matrix. alpha = +-ell^{(w-s+1)/2} makes generic fibres pure;
// a 1-dimensional string may instead be a 2x2 block with characteristic
// polynomial x^2 - a x + ell^w, |a| < 2 ell^{w/2}.
struct FamilyCase {
  WeilDeligneRep<QT> family;
  std::vector<Specialization> specs;
  std::vector<bool> constructed_rank_drop;
  bool generically_pure = true;
};

inline FamilyCase random_family(Rng& rng) {
  const RationalField q;
  const QT::base_context base = q;
  using RF = QT;
  const long primes[] = {2, 3, 5, 7};
  const long ell = primes[rng.uniform(0, 3)];
  const int w = static_cast<int>(rng.uniform(-2, 3));
  const std::size_t dim = static_cast<std::size_t>(rng.uniform(1, 4));
  const bool impure = rng.uniform(0, 4) == 0;

  ring_context_t<RF> ctx{base};
  bool pure = !impure;
  Matrix<RF> phi(ctx, dim, dim), n(ctx, dim, dim);
  std::vector<BigRational> roots;  // values of T where some link vanishes
  std::size_t pos = 0;
  auto rf = [&](const BigRational& x) { return RF::constant(x); };
  while (pos < dim) {
    std::size_t left = dim - pos;
    if (left >= 2 && rng.uniform(0, 3) == 0) {
      // Weil block of weight w with characteristic polynomial x^2 - a x + ell^w.
      BigRational lw = pow(BigRational(ell), w);
      long amax = 0;
      while (BigRational((amax + 1) * (amax + 1)) < BigRational(4) * lw) ++amax;
      BigRational a(rng.uniform(-amax, amax));
      phi(pos, pos + 1) = rf(-lw);
      phi(pos + 1, pos) = rf(BigRational(1));
      phi(pos + 1, pos + 1) = rf(a);
      pos += 2;
      continue;
    }
    std::size_t s = 1;
    while (s < left && s < 3 && rng.coin()) ++s;
    // A rational alpha needs w - s + 1 even.
    if ((w - static_cast<int>(s) + 1) % 2 != 0) {
      if (s > 1) {
        --s;
      } else if (left >= 2) {
        s = 2;
      }
    }
    int e2 = w - static_cast<int>(s) + 1;
    BigRational alpha = pow(BigRational(ell), e2 >= 0 ? e2 / 2 : -((-e2 + 1) / 2));
    if (e2 % 2 != 0) pure = false;
    if (e2 % 2 != 0 || impure) alpha = alpha * BigRational(ell == 2 ? 3 : 2);
    if (rng.coin()) alpha = -alpha;
    for (std::size_t t = 0; t < s; ++t) {
      phi(pos + t, pos + t) = rf(alpha * pow(BigRational(ell), static_cast<long>(t)));
      if (t == 0) continue;
      // link c_t(T): constant, c T, or c (T - t0)
      BigRational c(rng.uniform(1, 3));
      RF link = rf(c);
      switch (rng.uniform(0, 2)) {
        case 0: break;
        case 1:
          link = RF(Polynomial<BigRational>(q, {BigRational(0), c}));
          roots.push_back(BigRational(0));
          break;
        default: {
          BigRational t0(rng.uniform(-3, 3));
          link = RF(Polynomial<BigRational>(q, {-c * t0, c}));
          roots.push_back(t0);
        }
      }
      n(pos + t - 1, pos + t) = link;
    }
    pos += s;
  }
  Matrix<BigRational> p = random_invertible_q(rng, dim, 2);
  Matrix<BigRational> pinv = inverse(p);
  auto lift = [&](const Matrix<BigRational>& m) {
    return m.map<RF>(ctx, [&](const BigRational& x) { return rf(x); });
  };
  Matrix<RF> pp = lift(p), pi = lift(pinv);
  FamilyCase fc{WeilDeligneRep<QT>(ell, pp * phi * pi, pp * n * pi, {}, w), {}, {}, pure};
  for (const auto& r : roots) {
    fc.specs.push_back({r, std::nullopt});
    fc.constructed_rank_drop.push_back(true);
  }
  for (int k = 0; k < 2; ++k) {
    BigRational v(rng.uniform(4, 20));
    fc.specs.push_back({v, std::nullopt});
    fc.constructed_rank_drop.push_back(false);
  }
  return fc;
}

// Family over Q with p = 5, Sigma = {5, 7} and a random global complex
// (acyclic about half the time), and its extension by one or two unramified
// primes built with extend_ramification.
inline WeilDeligneRep<Q> random_unramified_q(Rng& rng, long ell, std::size_t n) {
  for (;;) {
    auto fm = random_frobenius_invertible_q(rng, n);
    if (determinant(fm.frobenius).is_zero()) continue;
    return WeilDeligneRep<Q>(ell, fm.frobenius, MatQ(RationalField{}, n, n));
  }
}

struct SigmaExtensionCase {
  AlgebraicFamily<Q> base;
  AlgebraicFamily<Q> extended;
};

inline SigmaExtensionCase random_sigma_extension(Rng& rng) {
  RationalField ctx;
  FamilyComponent<Q> c;
  c.local.emplace(7, random_unramified_q(rng, 7, static_cast<std::size_t>(rng.uniform(1, 2))));
  PerfectComplex<Q> g = random_acyclic_q(rng, static_cast<int>(rng.uniform(-1, 1)), 3, 2);
  if (rng.coin()) {
    auto extra = static_cast<std::size_t>(rng.uniform(1, 2));
    g = direct_sum(g, PerfectComplex<Q>::concentrated(ctx, static_cast<int>(rng.uniform(0, 2)), extra));
  }
  c.global = g;
  AlgebraicFamily<Q> base("Q", 5, {5, 7}, {c});

  const long candidates[] = {11, 13, 17, 19};
  std::map<long, WeilDeligneRep<Q>> added;
  const long count = rng.uniform(1, 2);
  for (long k = 0; k < count; ++k) {
    long l = candidates[rng.uniform(0, 3)];
    added.emplace(l, random_unramified_q(rng, l, static_cast<std::size_t>(rng.uniform(1, 2))));
  }
  std::size_t r = 0;
  for (const auto& [l, wd] : added) r += wd.dimension();
  std::map<int, MatQ> h;
  h.emplace(1, random_matrix_q(rng, r, g.rank(1), 2));
  h.emplace(2, random_matrix_q(rng, r, g.rank(2), 2));
  return {base, extend_ramification(base, added, h)};
}

// n x n presentation over Lambda = Z_5[[T]] at precision (5^3, T^8): a
// diagonal from a fixed pool of torsion and unit entries plus off-diagonal
// perturbations divisible by T.
inline Matrix<IwasawaElement> random_iwasawa_presentation(Rng& rng, std::size_t n) {
  using IE = IwasawaElement;
  const IwasawaRing lam{5, 3, 8};
  const std::vector<std::vector<long>> pool{{0, 1}, {-5, 1}, {5}, {1, 1}, {5, 0, 1}, {10, 5, 1}, {25}, {2, 3}};
  const IE t = IE::from_polynomial(5, 3, 8, {0, 1});
  Matrix<IE> m(lam, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = pool[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(pool.size()) - 1))];
    std::vector<Integer> c;
    for (long x : d) c.emplace_back(x);
    m(i, i) = IE(5, 3, 8, c);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || rng.uniform(0, 2) != 0) continue;
      m(i, j) = IE(5, 3, 8, {Integer(5 * rng.uniform(-2, 2)), Integer(rng.uniform(-1, 1)), Integer(rng.uniform(-2, 2))}) * t;
    }
  }
  return m;
}

}  // namespace eulerdet::gen
