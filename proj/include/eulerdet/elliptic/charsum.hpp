#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Sum of the quadratic character over the values of a cubic mod ell:
//   S = sum_{x in F_ell} chi(c3 x^3 + c2 x^2 + c1 x + c0).
// Values are walked by forward differences, so no division happens in the
// inner loop. The AVX2 and NEON variants run 8 and 4 residue classes of x in
// parallel; all variants return identical results.
namespace eulerdet::simd {

enum class Kernel { Scalar, Avx2, Neon };

struct CubicModEll {
  std::uint32_t ell = 0;  // odd prime, < 2^30
  std::uint32_t c[4] = {0, 0, 0, 0};  // c[k] multiplies x^k, reduced mod ell
};

// chi[v] in {0, 1, -1} for v in [0, ell).
std::vector<std::int32_t> quadratic_character_table(std::uint32_t ell);

long char_sum_scalar(const CubicModEll& g, const std::int32_t* chi);
long char_sum_avx2(const CubicModEll& g, const std::int32_t* chi);
long char_sum_neon(const CubicModEll& g, const std::int32_t* chi);

bool kernel_available(Kernel k);
std::string kernel_name(Kernel k);

// Best available kernel, or the one named by EULERDET_SIMD
// (scalar | avx2 | neon) when that is available.
Kernel active_kernel();

long char_sum(const CubicModEll& g, const std::int32_t* chi, Kernel k);
inline long char_sum(const CubicModEll& g, const std::int32_t* chi) { return char_sum(g, chi, active_kernel()); }

namespace detail {

// Start value and first three forward differences of g at x0 with step h.
struct DifferenceState {
  std::uint32_t v, d1, d2, d3;
};
DifferenceState difference_state(const CubicModEll& g, std::uint64_t x0, std::uint64_t h);

inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t m) {
  std::uint32_t s = a + b;
  return s >= m ? s - m : s;
}

}  // namespace detail

}  // namespace eulerdet::simd
