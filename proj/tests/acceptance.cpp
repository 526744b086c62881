// Runs acceptance criteria 1-8 at full size and prints one line per
// criterion. Exit code 0 only if every criterion passes.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>

#include "eulerdet/suites/suites.hpp"

namespace {

// Wall-clock limits in seconds; criteria without a stated limit get none.
const std::map<int, double> kTimeLimit{{1, 5.0}, {2, 10.0}};

std::string summarize(const nlohmann::json& counts) {
  std::string s;
  for (const auto& [k, v] : counts.items()) {
    if (!s.empty()) s += ", ";
    s += k + "=" + v.dump();
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240601ULL;
  eulerdet::suites::SuiteOptions opts;
  opts.seed = seed;
  int failed = 0;
  for (const auto& entry : eulerdet::suites::all_suites()) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = entry.run(opts);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = true;
    if (auto it = kTimeLimit.find(entry.criterion); it != kTimeLimit.end()) in_time = secs < it->second;
    bool ok = r.pass && in_time;
    if (!ok) ++failed;
    std::printf("criterion %d [%s] %s: %ld cases, %.2f s%s; %s\n", entry.criterion, ok ? "PASS" : "FAIL",
                entry.name.c_str(), r.cases, secs, in_time ? "" : " (over time limit)", summarize(r.counts).c_str());
    for (const auto& f : r.failures) std::printf("    failure: %s\n", f.c_str());
  }
  std::printf("%s: %d of %zu criteria failed (seed %llu)\n", failed == 0 ? "ACCEPTED" : "REJECTED", failed,
              eulerdet::suites::all_suites().size(), static_cast<unsigned long long>(seed));
  return failed == 0 ? 0 : 1;
}
