// One line per reproduction check; exit status is nonzero if any fails.

#include <cstdio>

#include "dilates/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& r : dilates::acceptance::run_all()) {
    std::printf("[%s] criterion %-3s %-58s %7.2fs (limit %gs)  %s\n", r.passed ? "PASS" : "FAIL", r.id.c_str(),
                r.name.c_str(), r.seconds, r.limit_seconds, r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  std::printf("%d check(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}
