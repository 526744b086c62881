#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eulerdet/complexes/complex.hpp"
#include "eulerdet/linalg/linalg.hpp"
#include "eulerdet/rings/iwasawa.hpp"
#include "eulerdet/rings/ring_hom.hpp"
#include "eulerdet/wd/weil_deligne.hpp"

namespace eulerdet {

// One factor R_k of a coefficient ring R = R_1 x ... x R_m.
template <class R>
struct FamilyComponent {
  std::map<long, WeilDeligneRep<R>> local;
  std::optional<PerfectComplex<R>> global;  // stands for RGamma_c(Z[1/Sigma], T)
};

// A classical point: a map from one component to Q, with its purity flag.
template <class R>
struct FamilyPoint {
  std::string label;
  std::size_t component = 0;
  RingHom<R, BigRational> hom;
  bool pure = false;
};

// A p-adic family over a finite product of domains. A family over a domain
// has exactly one component.
template <class R>
class AlgebraicFamily {
 public:
  AlgebraicFamily(std::string ring, long p, std::vector<long> sigma, std::vector<FamilyComponent<R>> components,
                  std::vector<FamilyPoint<R>> points = {})
      : ring_(std::move(ring)), p_(p), sigma_(std::move(sigma)), comps_(std::move(components)),
        points_(std::move(points)) {
    std::sort(sigma_.begin(), sigma_.end());
    sigma_.erase(std::unique(sigma_.begin(), sigma_.end()), sigma_.end());
    validate();
  }

  const std::string& ring() const { return ring_; }
  long p() const { return p_; }
  const std::vector<long>& sigma() const { return sigma_; }
  std::size_t component_count() const { return comps_.size(); }
  bool is_domain() const { return comps_.size() == 1; }
  const FamilyComponent<R>& component(std::size_t k) const {
    if (k >= comps_.size()) throw Error(ErrorCode::InvalidArgument, "no component " + std::to_string(k));
    return comps_[k];
  }
  const std::vector<FamilyPoint<R>>& points() const { return points_; }

  const WeilDeligneRep<R>& local(long ell, std::size_t k = 0) const {
    const auto& loc = component(k).local;
    auto it = loc.find(ell);
    if (it == loc.end()) throw Error(ErrorCode::InvalidArgument, "no local datum at " + std::to_string(ell));
    return it->second;
  }
  const PerfectComplex<R>& global(std::size_t k = 0) const {
    if (!component(k).global) throw Error(ErrorCode::InvalidArgument, "family has no global complex");
    return *component(k).global;
  }
  // Sigma \ {p}
  std::vector<long> ramified() const {
    std::vector<long> out;
    for (long l : sigma_)
      if (l != p_) out.push_back(l);
    return out;
  }

 private:
  void validate() const {
    if (comps_.empty()) throw Error(ErrorCode::InvalidArgument, "family needs at least one component");
    if (!std::binary_search(sigma_.begin(), sigma_.end(), p_)) {
      throw Error(ErrorCode::InvalidArgument, "p = " + std::to_string(p_) + " is not in Sigma");
    }
    for (const auto& c : comps_) {
      for (long l : ramified()) {
        auto it = c.local.find(l);
        if (it == c.local.end()) throw Error(ErrorCode::InvalidArgument, "missing local datum at " + std::to_string(l));
        if (it->second.ell() != l) {
          throw Error(ErrorCode::InvalidArgument, "local datum stored at " + std::to_string(l) + " is for ell = " +
                                                      std::to_string(it->second.ell()));
        }
        if (it->second.dimension() != comps_[0].local.at(l).dimension()) {
          throw Error(ErrorCode::InvalidArgument, "components disagree on the rank at " + std::to_string(l));
        }
      }
      for (const auto& [l, wd] : c.local) {
        if (l == p_ || !std::binary_search(sigma_.begin(), sigma_.end(), l)) {
          throw Error(ErrorCode::InvalidArgument, "local datum at " + std::to_string(l) + " outside Sigma \\ {p}");
        }
      }
    }
    for (const auto& pt : points_) {
      if (pt.component >= comps_.size()) throw Error(ErrorCode::InvalidArgument, "point " + pt.label + " has no component");
    }
  }

  std::string ring_;
  long p_;
  std::vector<long> sigma_;
  std::vector<FamilyComponent<R>> comps_;
  std::vector<FamilyPoint<R>> points_;
};

// The family over Q obtained by pushing component k along h.
template <class R>
AlgebraicFamily<BigRational> specialize(const AlgebraicFamily<R>& f, std::size_t k, const RingHom<R, BigRational>& h) {
  FamilyComponent<BigRational> c;
  for (const auto& [l, wd] : f.component(k).local) c.local.emplace(l, apply_hom(wd, h));
  if (f.component(k).global) c.global = base_change_complex(*f.component(k).global, h);
  return AlgebraicFamily<BigRational>("Q", f.p(), f.sigma(), {std::move(c)});
}

template <class R>
AlgebraicFamily<BigRational> specialize(const AlgebraicFamily<R>& f, const FamilyPoint<R>& pt) {
  return specialize(f, pt.component, pt.hom);
}

// ---------------------------------------------------------------------------
// Determinant lines

enum class LineProvenance { Local, Partial, Global };

template <class R>
struct DeterminantLine {
  GradedLine<R> line;
  LineProvenance provenance = LineProvenance::Global;
  long ell = 0;                 // Local
  std::vector<long> s, sigma;   // Partial
};

template <class R>
struct LocalDeterminant {
  DeterminantLine<R> line;
  R generator;  // Eul_ell(f, 1)
  R torsion;    // torsion of [V^I --(1 - Phi)--> V^I], computed independently
};

// Restriction of Phi to V^I in the basis returned by inertia_invariants.
template <class R>
Matrix<R> frobenius_on_invariants(const WeilDeligneRep<R>& wd) {
  Matrix<R> v = inertia_invariants(wd);
  if (v.cols() == 0) return Matrix<R>(wd.context(), 0, 0);
  auto x = solve(v, Matrix<R>(wd.frobenius() * v));
  if (!x) throw Error(ErrorCode::InvalidArgument, "Frobenius does not stabilize the inertia invariants");
  return *x;
}

template <class R>
LocalDeterminant<R> local_determinant_line(const AlgebraicFamily<R>& f, long ell, std::size_t k = 0) {
  using T = ring_traits<R>;
  if (ell == f.p()) throw Error(ErrorCode::PrimeEqualsP, "local line requested at p");
  const auto& wd = f.local(ell, k);
  R one = T::one(wd.context());
  R gen = euler_factor(wd).evaluate(one);
  if (T::is_zero(gen) || !T::is_unit(gen)) {
    throw Error(ErrorCode::ZeroDivisorEulerValue,
                "Eul_" + std::to_string(ell) + "(1) is a zero divisor: 1 is an eigenvalue of Frobenius on V^I");
  }
  Matrix<R> phi = frobenius_on_invariants(wd);
  R tors = phi.rows() == 0 ? one : torsion_of_acyclic(PerfectComplex<R>::two_term(one_minus(phi), 0));
  DeterminantLine<R> line{{0, gen}, LineProvenance::Local, ell, {}, {}};
  return {line, gen, tors};
}

// One local line per component; a zero divisor in R_1 x ... x R_m is an
// element vanishing in some component.
template <class R>
std::vector<LocalDeterminant<R>> local_determinant_lines(const AlgebraicFamily<R>& f, long ell) {
  std::vector<LocalDeterminant<R>> out;
  for (std::size_t k = 0; k < f.component_count(); ++k) out.push_back(local_determinant_line(f, ell, k));
  return out;
}

// Det^{-1}(global) (x) (x)_{ell in Sigma \ S} (local line)^{-1}.
template <class R>
DeterminantLine<R> partial_determinant(const AlgebraicFamily<R>& f, std::vector<long> s, std::size_t k = 0) {
  using T = ring_traits<R>;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (!std::binary_search(s.begin(), s.end(), f.p())) throw Error(ErrorCode::InvalidArgument, "S must contain p");
  for (long l : s) {
    if (!std::binary_search(f.sigma().begin(), f.sigma().end(), l)) {
      throw Error(ErrorCode::InvalidArgument, std::to_string(l) + " is in S but not in Sigma");
    }
  }
  GradedLine<R> g = det_complex(f.global(k));
  GradedLine<R> out{-g.degree, T::inverse(g.scalar)};
  for (long l : f.ramified()) {
    if (std::binary_search(s.begin(), s.end(), l)) continue;
    out.scalar = out.scalar * T::inverse(local_determinant_line(f, l, k).generator);
  }
  return {out, LineProvenance::Partial, 0, s, f.sigma()};
}

// ---------------------------------------------------------------------------
// Independence of Sigma

namespace detail {

template <class R>
bool unramified(const WeilDeligneRep<R>& wd) {
  return wd.monodromy().is_zero() && wd.inertia().empty();
}

// (+)_ell [M_ell --(1 - Phi_ell)--> M_ell] in degrees 0, 1, ordered by ell.
template <class R>
PerfectComplex<R> added_local_complex(const ring_context_t<R>& ctx, const std::map<long, WeilDeligneRep<R>>& added) {
  PerfectComplex<R> u(ctx);
  for (const auto& [l, wd] : added) {
    if (!unramified(wd)) throw Error(ErrorCode::InvalidArgument, "added prime " + std::to_string(l) + " is ramified");
    u = direct_sum(u, PerfectComplex<R>::two_term(one_minus(wd.frobenius()), 0));
  }
  return u;
}

}  // namespace detail

// Family over Sigma' = Sigma + added whose global complex is
// Cone(g : G -> U)[-1] with U the added local complexes and g the null
// homotopic map of `homotopy` (components h^i : G^i -> U^{i-1}).
template <class R>
AlgebraicFamily<R> extend_ramification(const AlgebraicFamily<R>& f, const std::map<long, WeilDeligneRep<R>>& added,
                                       const std::map<int, Matrix<R>>& homotopy) {
  if (!f.is_domain()) throw Error(ErrorCode::InvalidArgument, "extend_ramification expects a single component");
  const auto& g = f.global();
  auto u = detail::added_local_complex(g.context(), added);
  auto map = null_homotopic_map(g, u, homotopy);
  FamilyComponent<R> c = f.component(0);
  std::vector<long> sigma = f.sigma();
  for (const auto& [l, wd] : added) {
    if (std::binary_search(f.sigma().begin(), f.sigma().end(), l)) {
      throw Error(ErrorCode::InvalidArgument, std::to_string(l) + " is already in Sigma");
    }
    c.local.emplace(l, wd);
    sigma.push_back(l);
  }
  c.global = shift(cone(map), -1);
  return AlgebraicFamily<R>(f.ring(), f.p(), sigma, {std::move(c)});
}

template <class R>
struct SigmaIndependenceReport {
  std::vector<long> added;
  R added_torsion;   // from the U[-1] blocks of G_Sigma'
  R added_euler;     // prod Eul_ell(1) from the local data
  DeterminantLine<R> line_sigma, line_extended;
  bool degree_equal = false;
  bool scalars_agree = false;  // L' * prod Eul = L
  bool ses_checked = false;    // G acyclic, so the full SES identity applies
  bool ses_equal = false;
  bool consistent = false;
};

// Checks that the partial determinants over Sigma and Sigma' determine the
// same trivialization. G_Sigma' must be Cone(G_Sigma -> U)[-1] with
// G_Sigma'^i = U^{i-1} (+) G_Sigma^i in that order.
template <class R>
SigmaIndependenceReport<R> sigma_independence_check(const AlgebraicFamily<R>& f, const AlgebraicFamily<R>& ext) {
  using T = ring_traits<R>;
  if (!f.is_domain() || !ext.is_domain()) throw Error(ErrorCode::InvalidArgument, "expected single-component families");
  if (f.p() != ext.p()) throw Error(ErrorCode::StructureMismatch, "families have different p");
  std::map<long, WeilDeligneRep<R>> added;
  for (long l : f.sigma()) {
    if (!std::binary_search(ext.sigma().begin(), ext.sigma().end(), l)) {
      throw Error(ErrorCode::StructureMismatch, "Sigma' does not contain " + std::to_string(l));
    }
  }
  for (long l : ext.ramified()) {
    if (std::binary_search(f.sigma().begin(), f.sigma().end(), l)) {
      const auto& a = f.local(l);
      const auto& b = ext.local(l);
      if (!(a.frobenius() == b.frobenius()) || !(a.monodromy() == b.monodromy())) {
        throw Error(ErrorCode::StructureMismatch, "local data at " + std::to_string(l) + " differ");
      }
    } else {
      added.emplace(l, ext.local(l));
    }
  }
  const auto& g = f.global();
  const auto& g2 = ext.global();
  const auto& ctx = g.context();
  auto u = detail::added_local_complex(ctx, added);

  int lo = std::min({g.lowest(), u.lowest() + 1, g2.lowest()});
  int hi = std::max({g.highest(), u.highest() + 1, g2.highest()});
  for (int i = lo; i <= hi; ++i) {
    if (g2.rank(i) != u.rank(i - 1) + g.rank(i)) {
      throw Error(ErrorCode::StructureMismatch, "rank of G_Sigma' in degree " + std::to_string(i) +
                                                    " is not rank U^{i-1} + rank G^i");
    }
  }
  std::map<int, Matrix<R>> gmap;
  std::vector<std::size_t> ushift_ranks;
  std::vector<Matrix<R>> ushift_d;
  for (int i = lo; i <= hi; ++i) {
    Matrix<R> d = g2.differential(i);
    gmap.emplace(i, -d.submatrix(0, u.rank(i - 1), u.rank(i), g.rank(i)));
    ushift_ranks.push_back(u.rank(i - 1));
    if (i < hi) ushift_d.push_back(d.submatrix(0, 0, u.rank(i), u.rank(i - 1)));
  }
  std::optional<PerfectComplex<R>> rebuilt;
  try {
    rebuilt = shift(cone(ComplexMap<R>(g, u, gmap)), -1);
  } catch (const Error& e) {
    throw Error(ErrorCode::StructureMismatch, std::string("off-diagonal blocks are not a chain map: ") + e.what());
  }
  if (!(*rebuilt == g2)) throw Error(ErrorCode::StructureMismatch, "G_Sigma' is not Cone(G_Sigma -> U)[-1]");
  PerfectComplex<R> ushift(ctx, lo, ushift_ranks, ushift_d);

  SigmaIndependenceReport<R> rep{{}, T::one(ctx), T::one(ctx), partial_determinant(f, {f.p()}),
                                 partial_determinant(ext, {ext.p()})};
  for (const auto& [l, wd] : added) {
    rep.added.push_back(l);
    rep.added_euler = rep.added_euler * euler_factor(wd).evaluate(T::one(ctx));
  }
  // tau(C[-1]) = (-1)^{sum rank d} tau(C)^{-1}
  auto td = torsion_detail(ushift);
  std::size_t rank_sum = 0;
  for (const auto& [i, r] : td.differential_ranks) rank_sum += r;
  rep.added_torsion = T::inverse(td.value);
  if (rank_sum % 2 != 0) rep.added_torsion = -rep.added_torsion;

  rep.degree_equal = rep.line_sigma.line.degree == rep.line_extended.line.degree;
  rep.scalars_agree = rep.line_extended.line.scalar * rep.added_euler == rep.line_sigma.line.scalar;

  bool g_acyclic = false;
  try {
    g_acyclic = is_acyclic(g);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedRing) throw;
  }
  if (g_acyclic) {
    std::map<int, Matrix<R>> alpha, beta;
    for (int i = lo; i <= hi; ++i) {
      Matrix<R> a(ctx, g2.rank(i), ushift.rank(i));
      Matrix<R> b(ctx, g.rank(i), g2.rank(i));
      for (std::size_t k = 0; k < ushift.rank(i); ++k) a(k, k) = T::one(ctx);
      for (std::size_t k = 0; k < g.rank(i); ++k) b(k, ushift.rank(i) + k) = T::one(ctx);
      alpha.emplace(i, std::move(a));
      beta.emplace(i, std::move(b));
    }
    ShortExactSequence<R> ses(ComplexMap<R>(ushift, g2, alpha), ComplexMap<R>(g2, g, beta));
    rep.ses_checked = true;
    rep.ses_equal = ses_torsion_multiplicativity(ses).equal;
  }
  rep.consistent = rep.degree_equal && rep.scalars_agree && rep.added_torsion == rep.added_euler &&
                   (!rep.ses_checked || rep.ses_equal);
  return rep;
}

// ---------------------------------------------------------------------------
// Obstructions from congruent specializations

inline constexpr int kDefaultDvrPrecision = 6;

struct ObstructionRow {
  long ell = 0;
  BigRational value_psi, value_phi;  // Eul_ell(f_psi, 1), Eul_ell(f_phi, 1)
  int valuation_psi = 0, valuation_phi = 0;  // in Z/p^precision, capped at precision
};

struct ObstructionReport {
  long p = 0;
  int precision = kDefaultDvrPrecision;
  std::vector<ObstructionRow> rows;
  bool psi_unit = true, phi_unit = true;  // product over Sigma \ {p} is a unit
  bool impossible = false;                // exactly one product is a unit
};

namespace detail {

inline int dvr_valuation(const BigRational& v, long p, int precision) {
  if (!is_p_integral(v, p)) {
    throw Error(ErrorCode::DomainMismatch, v.to_string() + " is not " + std::to_string(p) + "-integral");
  }
  return PAdic::from_rational(p, precision, v).valuation();
}

}  // namespace detail

template <class R>
ObstructionReport obstruction_scan(const AlgebraicFamily<R>& f, const FamilyPoint<R>& psi, const FamilyPoint<R>& phi,
                                   int precision = kDefaultDvrPrecision) {
  if (precision < 1) throw Error(ErrorCode::InvalidArgument, "precision must be at least 1");
  ObstructionReport rep;
  rep.p = f.p();
  rep.precision = precision;
  auto fp = specialize(f, psi);
  auto ff = specialize(f, phi);
  const BigRational one(1);
  for (long l : f.ramified()) {
    ObstructionRow row;
    row.ell = l;
    row.value_psi = euler_factor(fp.local(l)).evaluate(one);
    row.value_phi = euler_factor(ff.local(l)).evaluate(one);
    row.valuation_psi = detail::dvr_valuation(row.value_psi, f.p(), precision);
    row.valuation_phi = detail::dvr_valuation(row.value_phi, f.p(), precision);
    rep.psi_unit = rep.psi_unit && row.valuation_psi == 0;
    rep.phi_unit = rep.phi_unit && row.valuation_phi == 0;
    rep.rows.push_back(std::move(row));
  }
  rep.impossible = rep.psi_unit != rep.phi_unit;
  return rep;
}

// ---------------------------------------------------------------------------
// Generic versus pointwise Euler factors

struct DiscrepancyRow {
  long ell = 0;
  Polynomial<BigRational> generic_factor_image;  // psi(Eul_ell(f|R_a, X))
  Polynomial<BigRational> pointwise_factor;      // Eul_ell(f_psi, X)
  bool monodromy_killed = false;                 // N != 0 on R_a, psi(N) = 0
  bool equal = false;
};

struct DiscrepancyReport {
  std::size_t component = 0;
  std::vector<DiscrepancyRow> rows;
  bool equal = true;
};

template <class R>
DiscrepancyReport euler_discrepancy(const AlgebraicFamily<R>& f, std::size_t component,
                                    const RingHom<R, BigRational>& psi) {
  DiscrepancyReport rep;
  rep.component = component;
  for (long l : f.ramified()) {
    const auto& wd = f.local(l, component);
    auto special = apply_hom(wd, psi);
    DiscrepancyRow row{l, apply_hom(euler_factor(wd), psi), euler_factor(special), false, false};
    row.monodromy_killed = !wd.monodromy().is_zero() && special.monodromy().is_zero();
    row.equal = row.generic_factor_image == row.pointwise_factor;
    rep.equal = rep.equal && row.equal;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// Q(T) x Q(T) with p = 5, Sigma = {5, 7}. On the first component the datum
// at 7 is Phi = diag(1, 7), N = T E12; the second is unramified.
inline AlgebraicFamily<QT> discrepancy_demo_family() {
  RationalField q;
  ring_context_t<QT> ctx{q};
  auto c = [&](long v) { return QT::constant(BigRational(v)); };
  Matrix<QT> phi(ctx, 2, 2), n(ctx, 2, 2), zero(ctx, 2, 2);
  phi(0, 0) = c(1);
  phi(1, 1) = c(7);
  n(0, 1) = QT::variable(q);
  FamilyComponent<QT> ramified_part, unramified_part;
  ramified_part.local.emplace(7, WeilDeligneRep<QT>(7, phi, n, {}, 1));
  unramified_part.local.emplace(7, WeilDeligneRep<QT>(7, phi, zero, {}, 1));
  auto at = [&](long v) { return evaluate_rational_function<BigRational>(q, BigRational(v), std::to_string(v)); };
  std::vector<FamilyPoint<QT>> points{{"T=0 on R1", 0, at(0), false},
                                      {"T=1 on R1", 0, at(1), true},
                                      {"T=0 on R2", 1, at(0), false}};
  return AlgebraicFamily<QT>("Q(T) x Q(T)", 5, {5, 7}, {ramified_part, unramified_part}, points);
}

// ---------------------------------------------------------------------------
// Characteristic and Fitting ideals over the Iwasawa algebra

struct CharIdeal {
  IwasawaElement determinant;
  IwasawaElement generator;  // p^mu * distinguished polynomial
  int mu = 0;
  int lambda = 0;
};

inline CharIdeal char_ideal(const Matrix<IwasawaElement>& presentation) {
  if (!presentation.is_square()) throw Error(ErrorCode::NonSquare, "presentation must be square");
  const auto& ctx = presentation.context();
  IwasawaElement det = presentation.rows() == 0 ? ring_traits<IwasawaElement>::one(ctx) : determinant(presentation);
  if (det.is_zero()) throw Error(ErrorCode::NotTorsion, "determinant vanishes at working precision");
  auto w = weierstrass_prepare(det);
  return {det, normalized_generator(w, det), w.mu, w.lambda};
}

// Cofactor expansion along the first row; independent of Berkowitz.
template <class R>
R laplace_determinant(const Matrix<R>& m) {
  const auto& ctx = m.context();
  const std::size_t n = m.rows();
  if (n == 0) return ring_traits<R>::one(ctx);
  if (n == 1) return m(0, 0);
  R acc = ring_traits<R>::zero(ctx);
  std::vector<std::size_t> rows;
  for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
  for (std::size_t j = 0; j < n; ++j) {
    if (ring_traits<R>::is_zero(m(0, j))) continue;
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) cols.push_back(k);
    R term = m(0, j) * laplace_determinant(m.select_rows(rows).select_columns(cols));
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

namespace detail {

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  subsets(n, k, 0, cur, out);
  return out;
}

}  // namespace detail

// Generators of Fitt_k(coker(A : R^m -> R^n)) for A of shape n x m: the
// nonzero (n - k)-minors, {1} when k >= n and {0} when no minor survives.
template <class R>
std::vector<R> fitting_ideal(const Matrix<R>& a, std::size_t k) {
  const auto& ctx = a.context();
  const std::size_t n = a.rows();
  if (k >= n) return {ring_traits<R>::one(ctx)};
  const std::size_t size = n - k;
  std::vector<R> gens;
  if (size <= a.cols()) {
    for (const auto& rs : detail::subsets(n, size)) {
      Matrix<R> sub = a.select_rows(rs);
      for (const auto& cs : detail::subsets(a.cols(), size)) {
        R minor = laplace_determinant(sub.select_columns(cs));
        if (!ring_traits<R>::is_zero(minor)) gens.push_back(std::move(minor));
      }
    }
  }
  if (gens.empty()) gens.push_back(ring_traits<R>::zero(ctx));
  return gens;
}

struct FittingCharReport {
  CharIdeal char_ideal;
  std::vector<IwasawaElement> fitt0;
  bool contained = false;  // Fitt_0 inside (char generator)
};

inline FittingCharReport fitting_in_char_ideal(const Matrix<IwasawaElement>& presentation) {
  FittingCharReport rep{char_ideal(presentation), fitting_ideal(presentation, 0), false};
  rep.contained = std::all_of(rep.fitt0.begin(), rep.fitt0.end(),
                              [&](const IwasawaElement& x) { return ideal_contains(rep.char_ideal.generator, x); });
  return rep;
}

}  // namespace eulerdet
