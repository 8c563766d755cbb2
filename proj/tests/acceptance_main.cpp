// Acceptance gate: runs every criterion, prints one pass/fail line each, and
// exits nonzero if any fails or the suite blows its runtime budget.

#include "roboline/acceptance.hpp"

#include <chrono>
#include <cstdio>

int main() {
  auto started = std::chrono::steady_clock::now();
  auto results = roboline::run_acceptance_suite();
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);

  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("%s %2d. %s\n", r.pass ? "[ ok ]" : "[FAIL]", r.number, r.name.c_str());
    if (!r.pass) {
      all_pass = false;
      std::printf("       -> %s\n", r.detail.c_str());
    }
  }
  std::printf("wall time: %lld ms (budget 30000 ms)\n",
              static_cast<long long>(elapsed.count()));
  if (elapsed.count() >= 30000) {
    std::printf("[FAIL] runtime budget exceeded\n");
    all_pass = false;
  }
  std::printf("%s\n", all_pass ? "acceptance: PASS" : "acceptance: FAIL");
  return all_pass ? 0 : 1;
}
