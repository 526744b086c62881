#include <immintrin.h>

#include "eulerdet/elliptic/charsum.hpp"

namespace eulerdet::simd {

long char_sum_avx2(const CubicModEll& g, const std::int32_t* chi) {
  constexpr std::uint32_t kLanes = 8;
  const std::uint32_t m = g.ell;
  const std::uint32_t rounds = m / kLanes;
  alignas(32) std::uint32_t v[kLanes], d1[kLanes], d2[kLanes], d3[kLanes];
  for (std::uint32_t k = 0; k < kLanes; ++k) {
    auto s = detail::difference_state(g, k, kLanes);
    v[k] = s.v;
    d1[k] = s.d1;
    d2[k] = s.d2;
    d3[k] = s.d3;
  }
  __m256i vv = _mm256_load_si256(reinterpret_cast<const __m256i*>(v));
  __m256i vd1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(d1));
  __m256i vd2 = _mm256_load_si256(reinterpret_cast<const __m256i*>(d2));
  const __m256i vd3 = _mm256_load_si256(reinterpret_cast<const __m256i*>(d3));
  const __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
  __m256i acc = _mm256_setzero_si256();
  // a + b - m wraps above a + b when a + b < m, so the unsigned min reduces.
  auto add_mod = [&](__m256i a, __m256i b) {
    __m256i s = _mm256_add_epi32(a, b);
    return _mm256_min_epu32(s, _mm256_sub_epi32(s, vm));
  };
  for (std::uint32_t r = 0; r < rounds; ++r) {
    acc = _mm256_add_epi32(acc, _mm256_i32gather_epi32(chi, vv, 4));
    vv = add_mod(vv, vd1);
    vd1 = add_mod(vd1, vd2);
    vd2 = add_mod(vd2, vd3);
  }
  alignas(32) std::int32_t lanes[kLanes];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  long sum = 0;
  for (auto x : lanes) sum += x;
  // Tail x in [rounds * 8, m).
  auto s = detail::difference_state(g, static_cast<std::uint64_t>(rounds) * kLanes, 1);
  for (std::uint32_t x = rounds * kLanes; x < m; ++x) {
    sum += chi[s.v];
    s.v = detail::add_mod(s.v, s.d1, m);
    s.d1 = detail::add_mod(s.d1, s.d2, m);
    s.d2 = detail::add_mod(s.d2, s.d3, m);
  }
  return sum;
}

}  // namespace eulerdet::simd
