#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eulerdet/complexes/complex.hpp"
#include "eulerdet/linalg/linalg.hpp"

namespace eulerdet {

// Free module with a Frobenius endomorphism (a sheaf on a point over F_q).
template <class R>
struct FrobeniusModule {
  Matrix<R> frobenius;
  std::vector<Matrix<R>> inertia;  // optional finite inertia action
  long q = 0;                      // base field size, 0 when unused

  explicit FrobeniusModule(Matrix<R> f, std::vector<Matrix<R>> inertia_part = {}, long field_size = 0)
      : frobenius(std::move(f)), inertia(std::move(inertia_part)), q(field_size) {
    if (!frobenius.is_square()) throw Error(ErrorCode::NonSquare, "Frobenius must be square");
    for (const auto& g : inertia) {
      if (!g.is_square() || g.rows() != frobenius.rows()) {
        throw Error(ErrorCode::ShapeMismatch, "inertia matrix of shape " + g.shape());
      }
    }
  }
  std::size_t rank() const { return frobenius.rows(); }
  const ring_context_t<R>& context() const { return frobenius.context(); }
};

template <class R>
Matrix<R> one_minus(const Matrix<R>& f) {
  return Matrix<R>::identity(f.context(), f.rows()) - f;
}

// [M --(1 - F)--> M] in degrees 0 and 1.
template <class R>
PerfectComplex<R> unramified_complex(const FrobeniusModule<R>& m) {
  return PerfectComplex<R>::two_term(one_minus(m.frobenius), 0);
}

enum class ConditionTag { Full, Unramified, NearlyOrdinary, Zero };

inline std::string condition_tag_name(ConditionTag t) {
  switch (t) {
    case ConditionTag::Full: return "full";
    case ConditionTag::Unramified: return "unramified";
    case ConditionTag::NearlyOrdinary: return "nearly-ordinary";
    case ConditionTag::Zero: return "zero";
  }
  return "?";
}

template <class R>
struct LocalConditionDatum {
  ComplexMap<R> inclusion;  // condition complex -> full local complex
  ConditionTag tag = ConditionTag::Full;
  std::size_t sub_rank = 0;  // for nearly-ordinary conditions

  const PerfectComplex<R>& complex() const { return inclusion.source(); }
  const PerfectComplex<R>& full() const { return inclusion.target(); }

  static LocalConditionDatum full_condition(const PerfectComplex<R>& local) {
    return {ComplexMap<R>::identity(local), ConditionTag::Full, 0};
  }
  static LocalConditionDatum zero_condition(const PerfectComplex<R>& local) {
    return {ComplexMap<R>::zero(PerfectComplex<R>(local.context()), local), ConditionTag::Zero, 0};
  }
};

template <class R>
struct SelmerPlace {
  std::string label;
  ComplexMap<R> localization;  // global -> full local complex
  LocalConditionDatum<R> condition;
};

template <class R>
struct SelmerDatum {
  PerfectComplex<R> global;
  std::vector<SelmerPlace<R>> places;
};

// Cone(global (+) (+)_v U_v --iota--> (+)_v full_v)[-1] with
// iota = (res_v - i_v)_v.
template <class R>
PerfectComplex<R> selmer_cone(const SelmerDatum<R>& d) {
  if (d.places.empty()) return d.global;
  const auto& ctx = d.global.context();
  for (const auto& pl : d.places) {
    if (!(pl.localization.source() == d.global)) {
      throw Error(ErrorCode::ShapeMismatch, "localization at " + pl.label + " does not start at the global complex");
    }
    if (!(pl.localization.target() == pl.condition.full())) {
      throw Error(ErrorCode::ShapeMismatch, "local condition at " + pl.label + " maps to a different local complex");
    }
  }
  PerfectComplex<R> source = d.global;
  PerfectComplex<R> target(ctx);
  for (const auto& pl : d.places) {
    source = direct_sum(source, pl.condition.complex());
    target = direct_sum(target, pl.condition.full());
  }
  auto [lo, hi] = degree_span(source, target);
  std::map<int, Matrix<R>> iota;
  for (int i = lo; i <= hi; ++i) {
    Matrix<R> m(ctx, target.rank(i), source.rank(i));
    std::size_t row = 0;
    std::size_t col = d.global.rank(i);
    for (const auto& pl : d.places) {
      set_block(m, row, 0, pl.localization.component(i));
      set_block(m, row, col, Matrix<R>(-pl.condition.inclusion.component(i)));
      row += pl.condition.full().rank(i);
      col += pl.condition.complex().rank(i);
    }
    iota.emplace(i, std::move(m));
  }
  return shift(cone(ComplexMap<R>(source, target, std::move(iota))), -1);
}

// ---------------------------------------------------------------------------
// Zero-dimensional schemes over F_q

template <class R>
struct ClosedPoint {
  int degree = 1;
  FrobeniusModule<R> stalk;
};

template <class R>
struct EtaleZeroScheme {
  ring_context_t<R> ctx;
  std::vector<ClosedPoint<R>> points;
};

// p(t) -> p(t^d)
template <class R>
Polynomial<R> substitute_power(const Polynomial<R>& p, int d) {
  std::vector<R> c(p.is_zero() ? 0 : static_cast<std::size_t>(p.degree() * d + 1), ring_traits<R>::zero(p.base()));
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) c[i * static_cast<std::size_t>(d)] = p.coefficients()[i];
  return Polynomial<R>(p.base(), std::move(c));
}

// Frobenius of the module induced from a degree-d point: d copies of the
// stalk permuted cyclically, with the stalk Frobenius in the wrap-around slot.
template <class R>
Matrix<R> induced_frobenius(const Matrix<R>& stalk, int degree) {
  const std::size_t r = stalk.rows();
  const auto d = static_cast<std::size_t>(degree);
  Matrix<R> m(stalk.context(), r * d, r * d);
  if (d == 1) return stalk;
  for (std::size_t k = 0; k + 1 < d; ++k) set_block(m, (k + 1) * r, k * r, Matrix<R>::identity(stalk.context(), r));
  set_block(m, 0, (d - 1) * r, stalk);
  return m;
}

// Both sides are 1 / den; equality is checked by cross-multiplication so it
// also makes sense over Z/p^n.
template <class R>
struct TraceFormulaReport {
  Polynomial<R> lhs_denominator;  // prod_x det(1 - Fr_x t^{deg x})
  Polynomial<R> rhs_denominator;  // det(1 - t F) on the induced module
  Matrix<R> induced;
  bool equal = false;
};

template <class R>
TraceFormulaReport<R> trace_formula_check(const EtaleZeroScheme<R>& x) {
  Polynomial<R> lhs = Polynomial<R>::constant(ring_traits<R>::one(x.ctx));
  std::vector<Matrix<R>> blocks;
  for (const auto& pt : x.points) {
    if (pt.degree < 1) throw Error(ErrorCode::InvalidArgument, "closed point of degree < 1");
    lhs = lhs * substitute_power(reversed_char_poly(pt.stalk.frobenius), pt.degree);
    blocks.push_back(induced_frobenius(pt.stalk.frobenius, pt.degree));
  }
  Matrix<R> f = block_diagonal(blocks, x.ctx);
  Polynomial<R> rhs = reversed_char_poly(f);
  Polynomial<R> one = Polynomial<R>::constant(ring_traits<R>::one(x.ctx));
  bool equal = lhs * one == rhs * one;
  return {lhs, rhs, f, equal};
}

template <class R>
bool semisimple_at_one(const FrobeniusModule<R>& m) {
  require_field(m.frobenius, "semisimple_at_one");
  Matrix<R> a = one_minus(m.frobenius);
  return rank(a) == rank(a * a);
}

template <class R>
struct LeadingTermReport {
  int d = 0;
  R leading;  // P^{(d)}(1) / d!
  R torsion;  // det(1 - F) on im(1 - F)
  bool identity_holds = false;
};

// flip_convention = true uses the opposite sign; self-tests use it to show
// that a wrong convention is detected.
template <class R>
LeadingTermReport<R> zeta_basis_leading_term(const FrobeniusModule<R>& m, bool flip_convention = false) {
  if (!semisimple_at_one(m)) throw Error(ErrorCode::NotSemisimple, "Frobenius does not act semisimply at 1");
  const auto& ctx = m.context();
  Polynomial<R> p = reversed_char_poly(m.frobenius);
  Polynomial<R> root = Polynomial<R>::from_ints(ctx, {1, -1});
  int d = 0;
  for (;;) {
    auto [q, r] = p.divmod(root);
    if (!r.is_zero()) break;
    p = q;
    ++d;
  }
  // P = (1 - t)^d Q, so P^{(d)}(1) / d! = (-1)^d Q(1).
  R q1 = p.evaluate(ring_traits<R>::one(ctx));
  R leading = d % 2 == 0 ? q1 : -q1;

  Matrix<R> a = one_minus(m.frobenius);
  Matrix<R> w = column_space(a);
  R torsion = ring_traits<R>::one(ctx);
  if (w.cols() > 0) {
    auto x = solve(w, Matrix<R>(a * w));
    if (!x) throw Error(ErrorCode::NotSemisimple, "image of 1 - F is not F-stable");
    torsion = determinant(*x);
  }
  R expected = d % 2 == 0 ? leading : -leading;
  if (flip_convention) expected = -expected;
  return {d, leading, torsion, torsion == expected};
}

}  // namespace eulerdet
