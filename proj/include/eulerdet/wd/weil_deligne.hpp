#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eulerdet/errors.hpp"
#include "eulerdet/linalg/linalg.hpp"
#include "eulerdet/rings/rational.hpp"
#include "eulerdet/rings/rational_function.hpp"
#include "eulerdet/rings/ring_hom.hpp"
#include "eulerdet/wd/roots.hpp"

namespace eulerdet {

// Weil-Deligne representation at a prime ell: Frobenius Phi, nilpotent
// monodromy N with ell * Phi * N = N * Phi, and an optional finite inertia
// part given as a list of matrices closed under products.
template <class R>
class WeilDeligneRep {
 public:
  WeilDeligneRep(long ell, Matrix<R> phi, Matrix<R> n, std::vector<Matrix<R>> inertia = {}, int weight = 0)
      : ell_(ell), phi_(std::move(phi)), n_(std::move(n)), inertia_(std::move(inertia)), weight_(weight) {
    validate();
  }

  long ell() const { return ell_; }
  std::size_t dimension() const { return phi_.rows(); }
  const Matrix<R>& frobenius() const { return phi_; }
  const Matrix<R>& monodromy() const { return n_; }
  const std::vector<Matrix<R>>& inertia() const { return inertia_; }
  int weight() const { return weight_; }
  const ring_context_t<R>& context() const { return phi_.context(); }

 private:
  void validate() const {
    if (ell_ < 2) throw Error(ErrorCode::InvalidArgument, "ell must be a prime >= 2");
    if (!phi_.is_square() || !n_.is_square()) throw Error(ErrorCode::NonSquare, "Frobenius and monodromy must be square");
    if (phi_.rows() != n_.rows()) throw Error(ErrorCode::ShapeMismatch, "Frobenius and monodromy sizes differ");
    const std::size_t d = phi_.rows();
    if (!ring_traits<R>::is_unit(determinant(phi_))) {
      throw Error(ErrorCode::InvalidArgument, "Frobenius is not invertible");
    }
    if (!matrix_pow(n_, static_cast<unsigned>(d)).is_zero()) throw Error(ErrorCode::NotNilpotent, "N^n != 0");
    R ell = ring_traits<R>::from_int(context(), ell_);
    if (!(ell * (phi_ * n_) == n_ * phi_)) {
      throw Error(ErrorCode::InvalidArgument, "Frobenius and monodromy violate ell * Phi * N = N * Phi");
    }
    for (const auto& g : inertia_) {
      if (!g.is_square() || g.rows() != d) throw Error(ErrorCode::ShapeMismatch, "inertia matrix of shape " + g.shape());
    }
    for (const auto& g : inertia_) {
      for (const auto& h : inertia_) {
        Matrix<R> gh = g * h;
        if (std::none_of(inertia_.begin(), inertia_.end(), [&](const Matrix<R>& k) { return k == gh; })) {
          throw Error(ErrorCode::InvalidArgument, "finite inertia part is not closed under products");
        }
      }
    }
  }

  long ell_;
  Matrix<R> phi_;
  Matrix<R> n_;
  std::vector<Matrix<R>> inertia_;
  int weight_;
};

template <class S, class T>
WeilDeligneRep<T> apply_hom(const WeilDeligneRep<S>& wd, const RingHom<S, T>& h) {
  std::vector<Matrix<T>> inertia;
  for (const auto& g : wd.inertia()) inertia.push_back(apply_hom(g, h));
  return WeilDeligneRep<T>(wd.ell(), apply_hom(wd.frobenius(), h), apply_hom(wd.monodromy(), h), std::move(inertia),
                           wd.weight());
}

// ---------------------------------------------------------------------------
// Monodromy filtration

// Increasing filtration M_j, j in [lowest, lowest + steps.size() - 1]; below
// the range M_j = 0, above it M_j is everything.
template <class R>
struct Filtration {
  std::size_t dimension = 0;
  int lowest = 0;
  std::vector<Matrix<R>> steps;  // column bases

  int highest() const { return lowest + static_cast<int>(steps.size()) - 1; }
  Matrix<R> at(int j, const ring_context_t<R>& ctx) const {
    if (j < lowest) return Matrix<R>(ctx, dimension, 0);
    if (j > highest()) return Matrix<R>::identity(ctx, dimension);
    return steps[static_cast<std::size_t>(j - lowest)];
  }
  std::size_t graded_dim(int j, const ring_context_t<R>& ctx) const {
    return at(j, ctx).cols() - at(j - 1, ctx).cols();
  }
};

template <class R>
void require_nilpotent(const Matrix<R>& n) {
  if (!n.is_square()) throw Error(ErrorCode::NonSquare, "monodromy must be square");
  if (!matrix_pow(n, static_cast<unsigned>(n.rows())).is_zero()) throw Error(ErrorCode::NotNilpotent, "N^n != 0");
}

// M_k = sum_{i - j = k; i, j >= 0} ker N^{i+1} cap im N^j.
template <class R>
Filtration<R> monodromy_filtration(const Matrix<R>& n) {
  require_field(n, "monodromy_filtration");
  require_nilpotent(n);
  const auto& ctx = n.context();
  const std::size_t d = n.rows();
  const int dd = static_cast<int>(d);
  std::vector<Matrix<R>> pw{Matrix<R>::identity(ctx, d)};
  for (std::size_t k = 0; k <= d; ++k) pw.push_back(pw.back() * n);
  std::vector<Matrix<R>> ker, im;
  for (std::size_t k = 0; k <= d + 1; ++k) {
    ker.push_back(kernel(pw[k]));
    im.push_back(column_space(pw[k]));
  }
  Filtration<R> f{d, -dd, {}};
  for (int k = -dd; k <= dd; ++k) {
    Matrix<R> acc(ctx, d, 0);
    for (int j = 0; j <= dd; ++j) {
      int i = k + j;
      if (i < 0 || i > dd) continue;
      acc = hstack(acc, span_intersection(ker[static_cast<std::size_t>(i + 1)], im[static_cast<std::size_t>(j)]));
    }
    f.steps.push_back(column_space(acc));
  }
  return f;
}

struct FiltrationCheck {
  bool increasing = true;
  bool n_lowers_by_two = true;
  bool graded_isomorphisms = true;
  bool exhaustive = true;
  bool ok() const { return increasing && n_lowers_by_two && graded_isomorphisms && exhaustive; }
};

// Checks the defining properties: N M_j in M_{j-2} and N^j : gr_j ~ gr_{-j}.
template <class R>
FiltrationCheck verify_monodromy_filtration(const Matrix<R>& n, const Filtration<R>& f) {
  const auto& ctx = n.context();
  const int lo = f.lowest - 2;
  const int hi = f.highest() + 2;
  FiltrationCheck c;
  c.exhaustive = f.at(lo, ctx).cols() == 0 && f.at(hi, ctx).cols() == n.rows() &&
                 rank(f.at(f.highest(), ctx)) == n.rows();
  for (int j = lo; j <= hi; ++j) {
    if (!span_contains(f.at(j, ctx), f.at(j - 1, ctx))) c.increasing = false;
    if (!span_contains(f.at(j - 2, ctx), Matrix<R>(n * f.at(j, ctx)))) c.n_lowers_by_two = false;
  }
  Matrix<R> nj = Matrix<R>::identity(ctx, n.rows());
  for (int j = 1; j <= hi; ++j) {
    nj = nj * n;
    if (f.graded_dim(j, ctx) != f.graded_dim(-j, ctx)) c.graded_isomorphisms = false;
    Matrix<R> image = hstack(Matrix<R>(nj * f.at(j, ctx)), f.at(-j - 1, ctx));
    if (!span_equal(image, f.at(-j, ctx))) c.graded_isomorphisms = false;
  }
  return c;
}

// Matrix of the endomorphism induced by phi on sub / below, where below is
// contained in sub and both are phi-stable.
template <class R>
Matrix<R> induced_on_quotient(const Matrix<R>& phi, const Matrix<R>& sub, const Matrix<R>& below) {
  Matrix<R> lower = column_space(below);
  Matrix<R> comp = complement_columns(lower, sub);
  Matrix<R> basis = hstack(lower, comp);
  auto x = solve(basis, Matrix<R>(phi * comp));
  if (!x) throw Error(ErrorCode::FiltrationNotPreserved, "Frobenius does not preserve the filtration");
  return x->submatrix(lower.cols(), 0, comp.cols(), comp.cols());
}

// ---------------------------------------------------------------------------
// Purity

struct GradedPurity {
  int index = 0;
  std::size_t dimension = 0;
  int weight = 0;                     // w + j
  Polynomial<BigRational> char_poly{RationalField{}};  // of Frobenius on gr_j
  bool functional_equation = true;    // roots stable under alpha -> ell^{w+j} / alpha
  RootModulusCheck modulus;           // |alpha|^2 = ell^{w+j}
  bool pure() const { return functional_equation && modulus.pass; }
};

struct PurityVerdict {
  bool pure = true;
  std::vector<GradedPurity> graded;
};

inline constexpr double kDefaultPurityTolerance = 1e-30;

// x^m P(q / x) / P(0) == P for monic P of degree m.
inline bool functional_equation_holds(const Polynomial<BigRational>& p, const BigRational& q) {
  const int m = p.degree();
  if (m <= 0) return true;
  const BigRational p0 = p.coefficient(0);
  if (p0.is_zero()) return false;
  std::vector<BigRational> c(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) c[static_cast<std::size_t>(m - i)] = p.coefficient(static_cast<std::size_t>(i)) * pow(q, i) / p0;
  return Polynomial<BigRational>(RationalField{}, c) == p;
}

inline PurityVerdict check_purity(const WeilDeligneRep<BigRational>& wd, int w,
                                  double tolerance = kDefaultPurityTolerance) {
  const RationalField ctx;
  auto f = monodromy_filtration(wd.monodromy());
  for (int j = f.lowest; j <= f.highest(); ++j) {
    if (!span_contains(f.at(j, ctx), Matrix<BigRational>(wd.frobenius() * f.at(j, ctx)))) {
      throw Error(ErrorCode::FiltrationNotPreserved, "Frobenius does not preserve M_" + std::to_string(j));
    }
  }
  PurityVerdict v;
  for (int j = f.lowest; j <= f.highest(); ++j) {
    std::size_t dim = f.graded_dim(j, ctx);
    if (dim == 0) continue;
    GradedPurity g;
    g.index = j;
    g.dimension = dim;
    g.weight = w + j;
    g.char_poly = char_poly(induced_on_quotient(wd.frobenius(), f.at(j, ctx), f.at(j - 1, ctx)));
    BigRational q = pow(BigRational(wd.ell()), g.weight);
    g.functional_equation = functional_equation_holds(g.char_poly, q);
    g.modulus = check_root_moduli(g.char_poly, q, tolerance);
    v.pure = v.pure && g.pure();
    v.graded.push_back(std::move(g));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Euler factors

// V^I = ker N cap (fixed space of the finite inertia part).
template <class R>
Matrix<R> inertia_invariants(const WeilDeligneRep<R>& wd) {
  Matrix<R> stacked = wd.monodromy();
  for (const auto& g : wd.inertia()) stacked = vstack(stacked, Matrix<R>(g - Matrix<R>::identity(wd.context(), wd.dimension())));
  return kernel(stacked);
}

// det(1 - X Phi | V^I).
template <class R>
Polynomial<R> euler_factor(const WeilDeligneRep<R>& wd) {
  Matrix<R> v = inertia_invariants(wd);
  if (v.cols() == 0) return Polynomial<R>::constant(ring_traits<R>::one(wd.context()));
  auto x = solve(v, Matrix<R>(wd.frobenius() * v));
  if (!x) throw Error(ErrorCode::InvalidArgument, "Frobenius does not stabilize the inertia invariants");
  return reversed_char_poly(*x);
}

// Largest number of disjoint eigenvalue pairs (alpha, beta) with
// alpha / beta = 1 / ell, counted with multiplicity: the degree of
// gcd(P(x), ell^m P(x / ell)) for P the characteristic polynomial of Phi.
template <class R>
std::size_t monodromy_rank_bound(const WeilDeligneRep<R>& wd) {
  require_field(wd.frobenius(), "monodromy_rank_bound");
  const auto& ctx = wd.context();
  Polynomial<R> p = char_poly(wd.frobenius());
  R ell = ring_traits<R>::from_int(ctx, wd.ell());
  // ell^m P(x / ell): coefficient i scaled by ell^{m - i}.
  const int m = p.degree();
  std::vector<R> c;
  for (int i = 0; i <= m; ++i) c.push_back(p.coefficient(static_cast<std::size_t>(i)) * ring_pow(ell, static_cast<unsigned long>(m - i)));
  Polynomial<R> shifted(ctx, c);
  return static_cast<std::size_t>(poly_gcd(p, shifted).degree());
}

// ---------------------------------------------------------------------------
// Interpolation over Q(T)

using QT = RationalFunction<BigRational>;

struct Specialization {
  BigRational value;           // T -> value
  std::optional<bool> declared_pure;  // caller's claim, if any
};

struct InterpolationReport {
  BigRational value;
  Polynomial<QT> family_euler;                    // Eul of the family over Q(T)
  Polynomial<BigRational> specialized_then_computed;  // phi(Eul(F))
  Polynomial<BigRational> computed_after;             // Eul(phi(F))
  std::size_t generic_rank = 0;
  std::size_t specialized_rank = 0;
  std::size_t rank_bound = 0;
  bool pure = false;  // check_purity on the specialization
  std::optional<bool> declared_pure;
  bool match = false;
  bool inequality_holds = false;  // rank N_phi <= rank N <= r
  bool degree_jump = false;       // computed_after has larger degree
  bool consistent = false;        // pure => match, rank drop => degree jump, inequality
};

inline std::vector<InterpolationReport> check_interpolation(const WeilDeligneRep<QT>& family,
                                                            const std::vector<Specialization>& specs,
                                                            double tolerance = kDefaultPurityTolerance) {
  const RationalField q;
  Polynomial<QT> eul = euler_factor(family);
  std::size_t generic = rank(family.monodromy());
  std::size_t bound = monodromy_rank_bound(family);
  std::vector<InterpolationReport> out;
  for (const auto& s : specs) {
    auto h = evaluate_rational_function<BigRational>(q, s.value, s.value.to_string());
    auto special = apply_hom(family, h);
    InterpolationReport r{s.value, eul, apply_hom(eul, h), euler_factor(special), 0, 0, 0, false, std::nullopt, false, false, false, false};
    r.generic_rank = generic;
    r.specialized_rank = rank(special.monodromy());
    r.rank_bound = bound;
    r.pure = check_purity(special, family.weight(), tolerance).pure;
    r.declared_pure = s.declared_pure;
    r.match = r.specialized_then_computed == r.computed_after;
    r.inequality_holds = r.specialized_rank <= r.generic_rank && r.generic_rank <= r.rank_bound;
    r.degree_jump = r.computed_after.degree() > r.specialized_then_computed.degree();
    // Without a finite inertia part dim V^I = n - rank N, so a rank drop
    // must enlarge the Euler factor.
    bool drop = r.specialized_rank < r.generic_rank && family.inertia().empty();
    r.consistent = (!r.pure || r.match) && (!drop || r.degree_jump) && r.inequality_holds;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace eulerdet
