#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eulerdet/families/families.hpp"
#include "eulerdet/rings/integer.hpp"
#include "eulerdet/rings/polynomial.hpp"
#include "eulerdet/rings/rational.hpp"
#include "eulerdet/wd/weil_deligne.hpp"

namespace eulerdet {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Z.
class EllipticCurveQ {
 public:
  EllipticCurveQ(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6);
  // [a1, a2, a3, a4, a6]
  static EllipticCurveQ from_coefficients(const std::vector<Integer>& a);

  const Integer& a1() const { return a_[0]; }
  const Integer& a2() const { return a_[1]; }
  const Integer& a3() const { return a_[2]; }
  const Integer& a4() const { return a_[3]; }
  const Integer& a6() const { return a_[4]; }
  const std::array<Integer, 5>& coefficients() const { return a_; }
  const Integer& b2() const { return b2_; }
  const Integer& b4() const { return b4_; }
  const Integer& b6() const { return b6_; }
  const Integer& b8() const { return b8_; }
  const Integer& c4() const { return c4_; }
  const Integer& c6() const { return c6_; }
  const Integer& discriminant() const { return disc_; }
  std::string to_string() const;

  friend bool operator==(const EllipticCurveQ& x, const EllipticCurveQ& y) { return x.a_ == y.a_; }

 private:
  std::array<Integer, 5> a_;
  Integer b2_, b4_, b6_, b8_, c4_, c6_, disc_;
};

// y^2 = x^3 + x - 10 and y^2 = x^3 - 584 x + 5444, of conductors 52 and 364.
EllipticCurveQ example_curve_e1();
EllipticCurveQ example_curve_e2();
inline constexpr long kExampleConductorE1 = 52;
inline constexpr long kExampleConductorE2 = 364;

enum class ReductionType { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };
std::string reduction_type_name(ReductionType t);

struct PointCount {
  long count = 0;  // #E(F_ell) including the point at infinity
  long a = 0;      // ell + 1 - count
};

// Projective points of the reduced cubic, singular or not. Odd ell goes
// through the quadratic character sum, ell = 2 through enumeration.
PointCount reduced_point_count(const EllipticCurveQ& e, long ell);

// Good primes only; asserts the Hasse bound.
PointCount point_count(const EllipticCurveQ& e, long ell);

// False when a change of variables with u = ell gives an integral model.
bool is_minimal_at(const EllipticCurveQ& e, long ell);

ReductionType reduction_type(const EllipticCurveQ& e, long ell);

// Split test through the tangent cone at the singular point, valid for every
// ell with multiplicative reduction.
bool tangent_cone_splits(const EllipticCurveQ& e, long ell);

// a_ell for every ell: the point count at good primes, 1 / -1 / 0 for split,
// nonsplit and additive reduction.
long hecke_eigenvalue(const EllipticCurveQ& e, long ell);

// det(1 - X Frob | V^I) on T_p(E)(1).
Polynomial<BigRational> euler_factor_motive(const EllipticCurveQ& e, long ell, long p);

// Weil-Deligne model of V_p(E)(1) at ell != p, weight -1: companion Frobenius
// at good primes, diag(1/ell, 1) or diag(-1/ell, -1) with N = E12 for split
// or nonsplit multiplicative reduction, and a model with inertia {1, -1} and
// no invariants for additive reduction.
WeilDeligneRep<BigRational> local_wd_model(const EllipticCurveQ& e, long ell, long p);

// Upper bound for the conductor: prod_{q | disc} q^{min(v_q(disc), f_q)} with
// f_2 = 8, f_3 = 5, f_q = 2 otherwise.
Integer conductor_bound(const EllipticCurveQ& e);

// ceil(k [SL2(Z) : Gamma0(N)] / 12) with k = 2.
long sturm_bound(const Integer& level);

struct CongruenceFailure {
  long ell = 0;
  long a1 = 0, a2 = 0;
};

struct CongruenceReport {
  long p = 0;
  long bound = 0;
  Integer level;
  std::vector<long> checked;
  std::vector<CongruenceFailure> failures;
  bool congruent = false;
};

// a_ell(e1) = a_ell(e2) mod p for primes ell <= bound with ell not dividing
// p disc(e1) disc(e2). Without a bound the Sturm bound of lcm(N1, N2) is
// used, with conductors taken from `conductors` or from conductor_bound.
CongruenceReport congruence_check(const EllipticCurveQ& e1, const EllipticCurveQ& e2, long p,
                                  std::optional<long> bound = std::nullopt,
                                  std::optional<std::pair<Integer, Integer>> conductors = std::nullopt);

struct UnitRow {
  long ell = 0;
  Polynomial<BigRational> euler;
  BigRational value;  // euler(1)
  int valuation = 0;  // v_p(value)
};

std::vector<UnitRow> unit_analysis(const EllipticCurveQ& e, const std::vector<long>& sigma, long p);

// (a_ell mod p, ell mod p), both in [0, p).
std::pair<long, long> residual_frobenius_data(const EllipticCurveQ& e, long p, long ell);

// Family over Q x Q whose components carry the local models of e1 and e2 at
// the primes of Sigma \ {p}, with one classical point per component.
AlgebraicFamily<BigRational> congruent_pair_family(const EllipticCurveQ& e1, const EllipticCurveQ& e2, long p,
                                                  const std::vector<long>& sigma);

std::vector<long> primes_up_to(long n);

// ---------------------------------------------------------------------------
// The congruence modulo 5 between the two example curves, with the
// local analysis at 2, 7 and 13.

struct ExampleCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct ExampleReport {
  std::vector<ExampleCheck> checks;
  CongruenceReport congruence;
  ObstructionReport obstruction;
  bool pass = false;
};

ExampleReport congruent_pair_example();

}  // namespace eulerdet
