#include <cstdio>

#include "coalg/verify.hpp"

int main() {
  coalg::AcceptanceConfig config;
  auto results = coalg::run_acceptance(config);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    std::printf("[%s] criterion %2d: %-28s %8.1f ms  %s\n", r.passed ? "PASS" : "FAIL",
                r.number, r.name.c_str(), r.millis, r.detail.c_str());
  }
  std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES above");
  return all ? 0 : 1;
}
