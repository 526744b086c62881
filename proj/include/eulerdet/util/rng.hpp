#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace eulerdet {

// Seeded generator with a platform-independent integer draw (the standard
// distributions are not specified bit-for-bit across library versions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [lo, hi]; the modulo bias is irrelevant at these ranges.
  long uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(gen_() % span);
  }

  bool coin() { return (gen_() & 1U) != 0; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(gen_() % i);
      std::swap(v[i - 1], v[j]);
    }
  }

  std::uint64_t fork() { return gen_() ^ 0x9e3779b97f4a7c15ULL; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace eulerdet
