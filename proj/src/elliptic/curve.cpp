#include "eulerdet/elliptic/curve.hpp"

#include <cmath>
#include <sstream>

#include "eulerdet/elliptic/charsum.hpp"

namespace eulerdet {

namespace {

using Q = BigRational;

Q frac(long a, long b) { return Q(Integer(a), Integer(b)); }

long mod_of(const Integer& x, long m) { return mod_long(x, m); }

// Prime factorization of |n| by trial division up to 10^6; the cofactor
// must then be 1 or prime.
std::vector<std::pair<long, int>> factor(const Integer& n) {
  if (n.is_zero()) throw Error(ErrorCode::InvalidArgument, "cannot factor 0");
  mpz_class m = abs(n).mpz();
  std::vector<std::pair<long, int>> out;
  for (long q = 2; q <= 1000000 && m > 1; ++q) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(q)) == 0) continue;
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(q)) != 0) {
      m /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (m > 1) {
    if (!m.fits_slong_p() || mpz_probab_prime_p(m.get_mpz_t(), 30) == 0) {
      throw Error(ErrorCode::InvalidArgument, "discriminant has a composite cofactor beyond trial division");
    }
    out.emplace_back(m.get_si(), 1);
  }
  return out;
}

// Whether x = u^2 x' + r, y = u^3 y' + s u^2 x' + t with u = ell gives an
// integral model for some r mod ell^2, s mod ell, t mod ell^3.
bool has_integral_rescaling(const EllipticCurveQ& e, long ell) {
  const Integer u(ell);
  const Integer u2 = u * u, u3 = u2 * u, u4 = u3 * u, u6 = u3 * u3;
  const Integer &a1 = e.a1(), &a2 = e.a2(), &a3 = e.a3(), &a4 = e.a4(), &a6 = e.a6();
  for (long si = 0; si < ell; ++si) {
    Integer s(si);
    if (!divides(u, a1 + Integer(2) * s)) continue;
    for (long ri = 0; ri < ell * ell; ++ri) {
      Integer r(ri);
      if (!divides(u2, a2 - s * a1 + Integer(3) * r - s * s)) continue;
      for (long ti = 0; ti < ell * ell * ell; ++ti) {
        Integer t(ti);
        if (!divides(u3, a3 + r * a1 + Integer(2) * t)) continue;
        if (!divides(u4, a4 - s * a3 + Integer(2) * r * a2 - (t + r * s) * a1 + Integer(3) * r * r -
                             Integer(2) * s * t)) {
          continue;
        }
        if (divides(u6, a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1)) return true;
      }
    }
  }
  return false;
}

void require_prime(long ell) {
  if (!is_prime(ell)) throw Error(ErrorCode::InvalidArgument, std::to_string(ell) + " is not prime");
}

}  // namespace

EllipticCurveQ::EllipticCurveQ(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
  const Integer &x1 = a_[0], &x2 = a_[1], &x3 = a_[2], &x4 = a_[3], &x6 = a_[4];
  b2_ = x1 * x1 + Integer(4) * x2;
  b4_ = Integer(2) * x4 + x1 * x3;
  b6_ = x3 * x3 + Integer(4) * x6;
  b8_ = x1 * x1 * x6 + Integer(4) * x2 * x6 - x1 * x3 * x4 + x2 * x3 * x3 - x4 * x4;
  c4_ = b2_ * b2_ - Integer(24) * b4_;
  c6_ = -(b2_ * b2_ * b2_) + Integer(36) * b2_ * b4_ - Integer(216) * b6_;
  disc_ = -(b2_ * b2_ * b8_) - Integer(8) * b4_ * b4_ * b4_ - Integer(27) * b6_ * b6_ + Integer(9) * b2_ * b4_ * b6_;
  if (!(Integer(4) * b8_ == b2_ * b6_ - b4_ * b4_)) {
    throw Error(ErrorCode::InvalidArgument, "b-invariant relation 4 b8 = b2 b6 - b4^2 failed");
  }
  if (!(Integer(1728) * disc_ == c4_ * c4_ * c4_ - c6_ * c6_)) {
    throw Error(ErrorCode::InvalidArgument, "1728 disc = c4^3 - c6^2 failed");
  }
  if (disc_.is_zero()) throw Error(ErrorCode::InvalidArgument, "singular curve: discriminant 0");
}

EllipticCurveQ EllipticCurveQ::from_coefficients(const std::vector<Integer>& a) {
  if (a.size() != 5) throw Error(ErrorCode::InvalidArgument, "curve needs [a1, a2, a3, a4, a6]");
  return EllipticCurveQ(a[0], a[1], a[2], a[3], a[4]);
}

std::string EllipticCurveQ::to_string() const {
  std::ostringstream os;
  os << "[" << a_[0] << "," << a_[1] << "," << a_[2] << "," << a_[3] << "," << a_[4] << "]";
  return os.str();
}

EllipticCurveQ example_curve_e1() { return EllipticCurveQ(0, 0, 0, 1, -10); }
EllipticCurveQ example_curve_e2() { return EllipticCurveQ(0, 0, 0, -584, 5444); }

std::string reduction_type_name(ReductionType t) {
  switch (t) {
    case ReductionType::Good: return "good";
    case ReductionType::SplitMultiplicative: return "split-multiplicative";
    case ReductionType::NonsplitMultiplicative: return "nonsplit-multiplicative";
    case ReductionType::Additive: return "additive";
  }
  return "?";
}

PointCount reduced_point_count(const EllipticCurveQ& e, long ell) {
  require_prime(ell);
  long count = 1;
  if (ell == 2) {
    const long a1 = mod_of(e.a1(), 2), a2 = mod_of(e.a2(), 2), a3 = mod_of(e.a3(), 2), a4 = mod_of(e.a4(), 2),
               a6 = mod_of(e.a6(), 2);
    for (long x = 0; x < 2; ++x)
      for (long y = 0; y < 2; ++y)
        if ((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % 2 == 0) ++count;
  } else {
    if (ell >= (1L << 30)) throw Error(ErrorCode::InvalidArgument, "prime too large for point counting");
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    simd::CubicModEll g;
    g.ell = static_cast<std::uint32_t>(ell);
    g.c[3] = static_cast<std::uint32_t>(4 % ell);
    g.c[2] = static_cast<std::uint32_t>(mod_of(e.b2(), ell));
    g.c[1] = static_cast<std::uint32_t>(mod_of(Integer(2) * e.b4(), ell));
    g.c[0] = static_cast<std::uint32_t>(mod_of(e.b6(), ell));
    auto chi = simd::quadratic_character_table(g.ell);
    count = ell + 1 + simd::char_sum(g, chi.data());
  }
  return {count, ell + 1 - count};
}

PointCount point_count(const EllipticCurveQ& e, long ell) {
  require_prime(ell);
  if (mod_of(e.discriminant(), ell) == 0) {
    if (!is_minimal_at(e, ell)) throw Error(ErrorCode::NonMinimalModel, "model is not minimal at " + std::to_string(ell));
    throw Error(ErrorCode::BadReductionPrime, std::to_string(ell) + " divides the minimal discriminant");
  }
  PointCount pc = reduced_point_count(e, ell);
  if (pc.a * pc.a > 4 * ell) {
    throw Error(ErrorCode::InvalidArgument, "Hasse bound violated at " + std::to_string(ell) + ": a = " + std::to_string(pc.a));
  }
  return pc;
}

bool is_minimal_at(const EllipticCurveQ& e, long ell) {
  require_prime(ell);
  if (valuation(e.discriminant(), ell) < 12) return true;
  if (ell >= 5) return !(valuation(e.c4(), ell) >= 4 && valuation(e.c6(), ell) >= 6);
  return !has_integral_rescaling(e, ell);
}

bool tangent_cone_splits(const EllipticCurveQ& e, long ell) {
  require_prime(ell);
  if (ell > 10007) throw Error(ErrorCode::InvalidArgument, "singular point search limited to small primes");
  const long a1 = mod_of(e.a1(), ell), a2 = mod_of(e.a2(), ell), a3 = mod_of(e.a3(), ell), a4 = mod_of(e.a4(), ell),
             a6 = mod_of(e.a6(), ell);
  auto md = [ell](long v) { return ((v % ell) + ell) % ell; };
  for (long x = 0; x < ell; ++x) {
    for (long y = 0; y < ell; ++y) {
      long f = md(y * y % ell + a1 * x % ell * y + a3 * y - x * x % ell * x - a2 * x % ell * x - a4 * x - a6);
      long fx = md(a1 * y - 3 * x % ell * x - 2 * a2 * x - a4);
      long fy = md(2 * y + a1 * x + a3);
      if (f != 0 || fx != 0 || fy != 0) continue;
      // Translate (x, y) to the origin: a2' = a2 + 3x, a1' = a1. The cone is
      // y^2 + a1 x y - a2' x^2, split iff T^2 + a1 T - a2' has a root.
      long a2p = md(a2 + 3 * x);
      for (long t = 0; t < ell; ++t)
        if (md(t * t + a1 * t - a2p) == 0) return true;
      return false;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "no singular point mod " + std::to_string(ell));
}

ReductionType reduction_type(const EllipticCurveQ& e, long ell) {
  require_prime(ell);
  if (!is_minimal_at(e, ell)) throw Error(ErrorCode::NonMinimalModel, "model is not minimal at " + std::to_string(ell));
  if (valuation(e.discriminant(), ell) == 0) return ReductionType::Good;
  if (valuation(e.c4(), ell) > 0) return ReductionType::Additive;
  bool split;
  if (ell >= 5) {
    long v = mod_of(-e.c6(), ell);
    split = false;
    for (long y = 1; y < ell && !split; ++y) split = (y * y) % ell == v;
  } else {
    split = tangent_cone_splits(e, ell);
  }
  return split ? ReductionType::SplitMultiplicative : ReductionType::NonsplitMultiplicative;
}

long hecke_eigenvalue(const EllipticCurveQ& e, long ell) {
  switch (reduction_type(e, ell)) {
    case ReductionType::Good: return point_count(e, ell).a;
    case ReductionType::SplitMultiplicative: return 1;
    case ReductionType::NonsplitMultiplicative: return -1;
    case ReductionType::Additive: return 0;
  }
  return 0;
}

Polynomial<Q> euler_factor_motive(const EllipticCurveQ& e, long ell, long p) {
  if (ell == p) throw Error(ErrorCode::PrimeEqualsP, "Euler factor requested at p = " + std::to_string(p));
  RationalField qq;
  switch (reduction_type(e, ell)) {
    case ReductionType::Good: {
      long a = point_count(e, ell).a;
      return Polynomial<Q>(qq, {Q(1), -frac(a, ell), frac(1, ell)});
    }
    case ReductionType::SplitMultiplicative: return Polynomial<Q>(qq, {Q(1), -frac(1, ell)});
    case ReductionType::NonsplitMultiplicative: return Polynomial<Q>(qq, {Q(1), frac(1, ell)});
    case ReductionType::Additive: return Polynomial<Q>(qq, {Q(1)});
  }
  return Polynomial<Q>(qq, {Q(1)});
}

WeilDeligneRep<Q> local_wd_model(const EllipticCurveQ& e, long ell, long p) {
  if (ell == p) throw Error(ErrorCode::PrimeEqualsP, "local model requested at p = " + std::to_string(p));
  RationalField qq;
  Matrix<Q> phi(qq, 2, 2), n(qq, 2, 2);
  std::vector<Matrix<Q>> inertia;
  switch (reduction_type(e, ell)) {
    case ReductionType::Good: {
      long a = point_count(e, ell).a;
      phi(0, 1) = -frac(1, ell);
      phi(1, 0) = Q(1);
      phi(1, 1) = frac(a, ell);
      break;
    }
    case ReductionType::SplitMultiplicative:
      phi(0, 0) = frac(1, ell);
      phi(1, 1) = Q(1);
      n(0, 1) = Q(1);
      break;
    case ReductionType::NonsplitMultiplicative:
      phi(0, 0) = frac(-1, ell);
      phi(1, 1) = Q(-1);
      n(0, 1) = Q(1);
      break;
    case ReductionType::Additive:
      phi(0, 1) = -frac(1, ell);
      phi(1, 0) = Q(1);
      inertia = {Matrix<Q>::identity(qq, 2), Matrix<Q>::diagonal(qq, {Q(-1), Q(-1)})};
      break;
  }
  return WeilDeligneRep<Q>(ell, phi, n, inertia, -1);
}

Integer conductor_bound(const EllipticCurveQ& e) {
  Integer n(1);
  for (const auto& [q, v] : factor(e.discriminant())) {
    int cap = q == 2 ? 8 : (q == 3 ? 5 : 2);
    n = n * pow(Integer(q), static_cast<unsigned long>(std::min(v, cap)));
  }
  return n;
}

long sturm_bound(const Integer& level) {
  if (level.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "level must be positive");
  Integer index(1);
  for (const auto& [q, v] : factor(level)) index = index * pow(Integer(q), static_cast<unsigned long>(v - 1)) * Integer(q + 1);
  // ceil(2 * index / 12)
  auto [quot, rem] = floor_divmod(index + Integer(5), Integer(6));
  if (!quot.fits_long()) throw Error(ErrorCode::InvalidArgument, "Sturm bound does not fit in a machine word");
  return quot.to_long();
}

std::vector<long> primes_up_to(long n) {
  std::vector<long> out;
  if (n < 2) return out;
  std::vector<bool> comp(static_cast<std::size_t>(n) + 1, false);
  for (long i = 2; i <= n; ++i) {
    if (comp[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (long j = i * i; j <= n; j += i) comp[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

CongruenceReport congruence_check(const EllipticCurveQ& e1, const EllipticCurveQ& e2, long p, std::optional<long> bound,
                                  std::optional<std::pair<Integer, Integer>> conductors) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p must be an odd prime");
  CongruenceReport rep;
  rep.p = p;
  auto [n1, n2] = conductors ? *conductors : std::make_pair(conductor_bound(e1), conductor_bound(e2));
  rep.level = lcm(n1, n2);
  rep.bound = bound ? *bound : sturm_bound(rep.level);
  for (long l : primes_up_to(rep.bound)) {
    if (l == p || mod_of(e1.discriminant(), l) == 0 || mod_of(e2.discriminant(), l) == 0) continue;
    rep.checked.push_back(l);
    long x = point_count(e1, l).a, y = point_count(e2, l).a;
    if (((x - y) % p + p) % p != 0) rep.failures.push_back({l, x, y});
  }
  rep.congruent = rep.failures.empty();
  return rep;
}

std::vector<UnitRow> unit_analysis(const EllipticCurveQ& e, const std::vector<long>& sigma, long p) {
  std::vector<UnitRow> rows;
  for (long l : sigma) {
    if (l == p) continue;
    UnitRow r{l, euler_factor_motive(e, l, p), Q(0), 0};
    r.value = r.euler.evaluate(Q(1));
    if (r.value.is_zero()) throw Error(ErrorCode::ZeroDivisorEulerValue, "Euler factor vanishes at 1");
    r.valuation = valuation(r.value, p);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::pair<long, long> residual_frobenius_data(const EllipticCurveQ& e, long p, long ell) {
  if (ell == p) throw Error(ErrorCode::PrimeEqualsP, "ell must differ from p");
  long a = point_count(e, ell).a;
  return {((a % p) + p) % p, ell % p};
}

AlgebraicFamily<Q> congruent_pair_family(const EllipticCurveQ& e1, const EllipticCurveQ& e2, long p,
                                        const std::vector<long>& sigma) {
  FamilyComponent<Q> c1, c2;
  for (long l : sigma) {
    if (l == p) continue;
    c1.local.emplace(l, local_wd_model(e1, l, p));
    c2.local.emplace(l, local_wd_model(e2, l, p));
  }
  RationalField qq;
  RingHom<Q, Q> id({{"kind", "identity"}}, qq, [](const Q& x) { return x; });
  std::vector<FamilyPoint<Q>> points{{"E1 " + e1.to_string(), 0, id, true}, {"E2 " + e2.to_string(), 1, id, true}};
  return AlgebraicFamily<Q>("Q x Q", p, sigma, {c1, c2}, points);
}

ExampleReport congruent_pair_example() {
  ExampleReport rep;
  const auto e1 = example_curve_e1();
  const auto e2 = example_curve_e2();
  const long p = 5;
  auto add = [&](std::string name, std::string expected, std::string actual) {
    bool ok = expected == actual;
    rep.checks.push_back({std::move(name), std::move(expected), std::move(actual), ok});
  };
  const std::pair<const char*, const EllipticCurveQ*> curves[] = {{"E1", &e1}, {"E2", &e2}};
  const long a5[] = {2, -3}, a7[] = {-2, 1}, a13[] = {-1, -1};
  const char* types[2][3] = {{"additive", "good", "nonsplit-multiplicative"},
                             {"additive", "split-multiplicative", "nonsplit-multiplicative"}};
  const char* eulers[2][3] = {{"(1)", "(1) + (2/7)*X + (1/7)*X^2", "(1) + (1/13)*X"},
                              {"(1)", "(1) + (-1/7)*X", "(1) + (1/13)*X"}};
  const char* vals[2] = {"0,1,0", "0,0,0"};
  const long sigma_l[] = {2, 7, 13};
  for (int k = 0; k < 2; ++k) {
    const auto& [name, e] = curves[k];
    std::string n(name);
    add(n + " a_5", std::to_string(a5[k]), std::to_string(hecke_eigenvalue(*e, 5)));
    add(n + " a_7", std::to_string(a7[k]), std::to_string(hecke_eigenvalue(*e, 7)));
    add(n + " a_13", std::to_string(a13[k]), std::to_string(hecke_eigenvalue(*e, 13)));
    for (int j = 0; j < 3; ++j) {
      long l = sigma_l[j];
      add(n + " reduction at " + std::to_string(l), types[k][j], reduction_type_name(reduction_type(*e, l)));
      add(n + " Euler factor at " + std::to_string(l), eulers[k][j], euler_factor_motive(*e, l, p).to_string("X"));
    }
    std::string v;
    for (const auto& row : unit_analysis(*e, {2, 7, 13}, p)) v += (v.empty() ? "" : ",") + std::to_string(row.valuation);
    add(n + " 5-valuations of Eul(1) at 2,7,13", vals[k], v);
  }
  rep.congruence = congruence_check(e1, e2, p, std::nullopt,
                                    std::make_pair(Integer(kExampleConductorE1), Integer(kExampleConductorE2)));
  add("Sturm bound", "112", std::to_string(rep.congruence.bound));
  add("congruence failures mod 5", "0", std::to_string(rep.congruence.failures.size()));
  auto fam = congruent_pair_family(e1, e2, p, {2, 5, 7, 13});
  rep.obstruction = obstruction_scan(fam, fam.points()[0], fam.points()[1]);
  add("domain family obstruction", "impossible", rep.obstruction.impossible ? "impossible" : "possible");
  rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(), [](const ExampleCheck& c) { return c.pass; });
  return rep;
}

}  // namespace eulerdet
