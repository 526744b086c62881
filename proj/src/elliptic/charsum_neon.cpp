#if defined(__aarch64__)

#include <arm_neon.h>

#include "eulerdet/elliptic/charsum.hpp"

namespace eulerdet::simd {

long char_sum_neon(const CubicModEll& g, const std::int32_t* chi) {
  constexpr std::uint32_t kLanes = 4;
  const std::uint32_t m = g.ell;
  const std::uint32_t rounds = m / kLanes;
  std::uint32_t v[kLanes], d1[kLanes], d2[kLanes], d3[kLanes];
  for (std::uint32_t k = 0; k < kLanes; ++k) {
    auto s = detail::difference_state(g, k, kLanes);
    v[k] = s.v;
    d1[k] = s.d1;
    d2[k] = s.d2;
    d3[k] = s.d3;
  }
  uint32x4_t vv = vld1q_u32(v), vd1 = vld1q_u32(d1), vd2 = vld1q_u32(d2);
  const uint32x4_t vd3 = vld1q_u32(d3);
  const uint32x4_t vm = vdupq_n_u32(m);
  auto add_mod = [&](uint32x4_t a, uint32x4_t b) {
    uint32x4_t s = vaddq_u32(a, b);
    return vminq_u32(s, vsubq_u32(s, vm));
  };
  int32x4_t acc = vdupq_n_s32(0);
  for (std::uint32_t r = 0; r < rounds; ++r) {
    // No gather on NEON: four table loads into one vector.
    int32x4_t c = vdupq_n_s32(0);
    c = vsetq_lane_s32(chi[vgetq_lane_u32(vv, 0)], c, 0);
    c = vsetq_lane_s32(chi[vgetq_lane_u32(vv, 1)], c, 1);
    c = vsetq_lane_s32(chi[vgetq_lane_u32(vv, 2)], c, 2);
    c = vsetq_lane_s32(chi[vgetq_lane_u32(vv, 3)], c, 3);
    acc = vaddq_s32(acc, c);
    vv = add_mod(vv, vd1);
    vd1 = add_mod(vd1, vd2);
    vd2 = add_mod(vd2, vd3);
  }
  long sum = vaddvq_s32(acc);
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

#endif
