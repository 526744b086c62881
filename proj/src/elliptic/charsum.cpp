#include "eulerdet/elliptic/charsum.hpp"

#include <cstdlib>
#include <string_view>

#include "eulerdet/errors.hpp"

namespace eulerdet::simd {

std::vector<std::int32_t> quadratic_character_table(std::uint32_t ell) {
  if (ell < 3 || ell % 2 == 0) throw Error(ErrorCode::InvalidArgument, "character table needs an odd prime");
  std::vector<std::int32_t> chi(ell, -1);
  chi[0] = 0;
  for (std::uint64_t y = 1; y <= ell / 2; ++y) chi[(y * y) % ell] = 1;
  return chi;
}

namespace detail {

DifferenceState difference_state(const CubicModEll& g, std::uint64_t x0, std::uint64_t h) {
  const std::uint64_t m = g.ell;
  auto eval = [&](std::uint64_t x) {
    x %= m;
    std::uint64_t r = g.c[3];
    for (int k = 2; k >= 0; --k) r = (r * x + g.c[k]) % m;
    return r;
  };
  std::uint64_t y0 = eval(x0), y1 = eval(x0 + h), y2 = eval(x0 + 2 * h), y3 = eval(x0 + 3 * h);
  std::uint64_t d1 = (y1 + m - y0) % m;
  std::uint64_t d2 = (y2 + 2 * m - 2 * y1 + y0) % m;
  std::uint64_t d3 = (y3 + 3 * y1 + 3 * m - 3 * y2 - y0 + m) % m;
  return {static_cast<std::uint32_t>(y0), static_cast<std::uint32_t>(d1), static_cast<std::uint32_t>(d2),
          static_cast<std::uint32_t>(d3)};
}

}  // namespace detail

long char_sum_scalar(const CubicModEll& g, const std::int32_t* chi) {
  auto s = detail::difference_state(g, 0, 1);
  long sum = 0;
  for (std::uint32_t x = 0; x < g.ell; ++x) {
    sum += chi[s.v];
    s.v = detail::add_mod(s.v, s.d1, g.ell);
    s.d1 = detail::add_mod(s.d1, s.d2, g.ell);
    s.d2 = detail::add_mod(s.d2, s.d3, g.ell);
  }
  return sum;
}

#if !defined(EULERDET_HAVE_AVX2)
long char_sum_avx2(const CubicModEll&, const std::int32_t*) {
  throw Error(ErrorCode::InvalidArgument, "AVX2 kernel not compiled in");
}
#endif

#if !defined(__aarch64__)
long char_sum_neon(const CubicModEll&, const std::int32_t*) {
  throw Error(ErrorCode::InvalidArgument, "NEON kernel not compiled in");
}
#endif

bool kernel_available(Kernel k) {
  switch (k) {
    case Kernel::Scalar: return true;
    case Kernel::Avx2:
#if defined(EULERDET_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Kernel::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::string kernel_name(Kernel k) {
  switch (k) {
    case Kernel::Scalar: return "scalar";
    case Kernel::Avx2: return "avx2";
    case Kernel::Neon: return "neon";
  }
  return "?";
}

Kernel active_kernel() {
  static const Kernel chosen = [] {
    if (const char* env = std::getenv("EULERDET_SIMD")) {
      std::string_view want(env);
      for (Kernel k : {Kernel::Scalar, Kernel::Avx2, Kernel::Neon}) {
        if (want == kernel_name(k) && kernel_available(k)) return k;
      }
    }
    if (kernel_available(Kernel::Avx2)) return Kernel::Avx2;
    if (kernel_available(Kernel::Neon)) return Kernel::Neon;
    return Kernel::Scalar;
  }();
  return chosen;
}

long char_sum(const CubicModEll& g, const std::int32_t* chi, Kernel k) {
  switch (k) {
    case Kernel::Avx2: return char_sum_avx2(g, chi);
    case Kernel::Neon: return char_sum_neon(g, chi);
    case Kernel::Scalar: break;
  }
  return char_sum_scalar(g, chi);
}

}  // namespace eulerdet::simd
