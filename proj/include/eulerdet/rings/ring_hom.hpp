#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "eulerdet/linalg/matrix.hpp"
#include "eulerdet/rings/integer.hpp"
#include "eulerdet/rings/iwasawa.hpp"
#include "eulerdet/rings/padic.hpp"
#include "eulerdet/rings/polynomial.hpp"
#include "eulerdet/rings/rational.hpp"
#include "eulerdet/rings/rational_function.hpp"

namespace eulerdet {

// A ring homomorphism S -> T together with a JSON descriptor of the form
//   {"kind": "reduce-mod", "p": .., "precision": ..}
//   {"kind": "evaluate-at", "value": ".."}
//   {"kind": "compose", "steps": [..]}
//   {"kind": "identity"}
template <class S, class T>
class RingHom {
 public:
  RingHom(nlohmann::json descriptor, ring_context_t<T> target, std::function<T(const S&)> f)
      : descriptor_(std::move(descriptor)), target_(std::move(target)), f_(std::move(f)) {}

  T operator()(const S& x) const { return f_(x); }
  const nlohmann::json& descriptor() const { return descriptor_; }
  const ring_context_t<T>& target() const { return target_; }

 private:
  nlohmann::json descriptor_;
  ring_context_t<T> target_;
  std::function<T(const S&)> f_;
};

template <class S>
RingHom<S, S> identity_hom(const ring_context_t<S>& ctx) {
  return RingHom<S, S>({{"kind", "identity"}}, ctx, [](const S& x) { return x; });
}

// Apply g after f.
template <class A, class B, class C>
RingHom<A, C> compose(const RingHom<A, B>& f, const RingHom<B, C>& g) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto* d : {&f.descriptor(), &g.descriptor()}) {
    if ((*d)["kind"] == "compose") {
      for (const auto& s : (*d)["steps"]) steps.push_back(s);
    } else {
      steps.push_back(*d);
    }
  }
  return RingHom<A, C>({{"kind", "compose"}, {"steps", steps}}, g.target(), [f, g](const A& x) { return g(f(x)); });
}

inline nlohmann::json reduce_descriptor(long p, int precision) {
  return {{"kind", "reduce-mod"}, {"p", p}, {"precision", precision}};
}

inline RingHom<Integer, PAdic> reduce_mod_integers(long p, int precision) {
  return {reduce_descriptor(p, precision), PAdicRing{p, precision},
          [p, precision](const Integer& x) { return PAdic(p, precision, x); }};
}

// Defined on p-integral rationals; DomainMismatch otherwise.
inline RingHom<BigRational, PAdic> reduce_mod_rationals(long p, int precision) {
  return {reduce_descriptor(p, precision), PAdicRing{p, precision},
          [p, precision](const BigRational& x) { return PAdic::from_rational(p, precision, x); }};
}

inline RingHom<PAdic, PAdic> reduce_mod_padic(long p, int precision) {
  return {reduce_descriptor(p, precision), PAdicRing{p, precision}, [p, precision](const PAdic& x) {
            if (x.prime() != p || x.precision() < precision) {
              throw Error(ErrorCode::DomainMismatch, "cannot reduce " + x.to_string() + " to Z/" +
                                                         std::to_string(p) + "^" + std::to_string(precision));
            }
            return x.reduce_to(precision);
          }};
}

// T -> value on the truncated Iwasawa algebra. The target precision is the
// one available after substitution, see IwasawaElement::evaluate.
inline RingHom<IwasawaElement, PAdic> evaluate_iwasawa(const IwasawaRing& source, const Integer& value) {
  PAdic probe = IwasawaElement(source.p, source.p_precision, source.t_precision, {}).evaluate(value);
  return {{{"kind", "evaluate-at"}, {"value", value.to_string()}},
          ring_traits<PAdic>::context_of(probe),
          [source, value](const IwasawaElement& x) {
            if (!(ring_traits<IwasawaElement>::context_of(x) == source)) {
              throw Error(ErrorCode::DomainMismatch, "element of " +
                                                         ring_traits<IwasawaElement>::name(
                                                             ring_traits<IwasawaElement>::context_of(x)) +
                                                         " passed to a map from " +
                                                         ring_traits<IwasawaElement>::name(source));
            }
            return x.evaluate(value);
          }};
}

template <class R>
RingHom<Polynomial<R>, R> evaluate_polynomial(const ring_context_t<R>& base, const R& value,
                                              const std::string& value_text) {
  return {{{"kind", "evaluate-at"}, {"value", value_text}}, base,
          [value](const Polynomial<R>& x) { return x.evaluate(value); }};
}

// Evaluation on K(T); DomainMismatch when value is a pole.
template <class K>
RingHom<RationalFunction<K>, K> evaluate_rational_function(const ring_context_t<K>& base, const K& value,
                                                           const std::string& value_text) {
  return {{{"kind", "evaluate-at"}, {"value", value_text}}, base,
          [value](const RationalFunction<K>& x) { return x.evaluate(value); }};
}

template <class S, class T>
Matrix<T> apply_hom(const Matrix<S>& m, const RingHom<S, T>& h) {
  return m.template map<T>(h.target(), [&h](const S& x) { return h(x); });
}

template <class S, class T>
Polynomial<T> apply_hom(const Polynomial<S>& p, const RingHom<S, T>& h) {
  std::vector<T> c;
  c.reserve(p.coefficients().size());
  for (const auto& x : p.coefficients()) c.push_back(h(x));
  return Polynomial<T>(h.target(), std::move(c));
}

// Coefficientwise map R[X] -> T[X] of a ring map R -> T.
template <class S, class T>
RingHom<Polynomial<S>, Polynomial<T>> polynomial_hom(const RingHom<S, T>& h) {
  return {h.descriptor(), PolynomialRing<T>{h.target()}, [h](const Polynomial<S>& p) { return apply_hom(p, h); }};
}

}  // namespace eulerdet
