#pragma once

#include <climits>
#include <concepts>
#include <optional>
#include <string>
#include <utility>

namespace eulerdet {

// Valuation reported for the zero element.
inline constexpr int kInfiniteValuation = INT_MAX;

enum class SnfKind { Euclidean, Local, Unsupported };

// Every coefficient ring specializes ring_traits<R>. Ring elements of
// runtime-parameterized rings (Z/p^n, truncated power series) carry their
// parameters; `context_type` captures them so that zero and one can be built.
//
// Required members:
//   context_type, context_of(x), zero(ctx), one(ctx), from_int(ctx, long),
//   is_zero(x), is_unit(x), inverse(x), is_field(ctx), name(ctx), snf_kind.
// Rings with snf_kind == Local also provide:
//   content_valuation(x), is_pivot(x), exact_quotient(x, d), unit_part(x),
//   annihilator(x) -> optional<pair<g, o>> with ann(x) = gR = R/(o); empty
//   when the annihilator is zero (x a unit, or a nonzero field element).
template <class R>
struct ring_traits;

template <class R>
using ring_context_t = typename ring_traits<R>::context_type;

template <class R>
concept CommutativeRing = requires(const R& a, const R& b, const ring_context_t<R>& ctx) {
  { a + b } -> std::convertible_to<R>;
  { a - b } -> std::convertible_to<R>;
  { a * b } -> std::convertible_to<R>;
  { -a } -> std::convertible_to<R>;
  { a == b } -> std::convertible_to<bool>;
  { ring_traits<R>::context_of(a) } -> std::convertible_to<ring_context_t<R>>;
  { ring_traits<R>::zero(ctx) } -> std::convertible_to<R>;
  { ring_traits<R>::one(ctx) } -> std::convertible_to<R>;
  { ring_traits<R>::from_int(ctx, 1L) } -> std::convertible_to<R>;
  { ring_traits<R>::is_zero(a) } -> std::convertible_to<bool>;
  { ring_traits<R>::is_unit(a) } -> std::convertible_to<bool>;
  { ring_traits<R>::inverse(a) } -> std::convertible_to<R>;
  { ring_traits<R>::is_field(ctx) } -> std::convertible_to<bool>;
};

template <class R>
concept LocalRing = CommutativeRing<R> && (ring_traits<R>::snf_kind == SnfKind::Local);

template <class R>
R ring_zero_like(const R& x) {
  return ring_traits<R>::zero(ring_traits<R>::context_of(x));
}

template <class R>
R ring_one_like(const R& x) {
  return ring_traits<R>::one(ring_traits<R>::context_of(x));
}

template <class R>
bool ring_is_zero(const R& x) {
  return ring_traits<R>::is_zero(x);
}

template <class R>
bool ring_is_unit(const R& x) {
  return ring_traits<R>::is_unit(x);
}

template <class R>
R ring_inverse(const R& x) {
  return ring_traits<R>::inverse(x);
}

template <class R>
R ring_pow(R base, unsigned long e) {
  R acc = ring_one_like(base);
  while (e > 0) {
    if (e & 1UL) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

}  // namespace eulerdet
