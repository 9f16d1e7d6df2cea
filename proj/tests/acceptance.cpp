#include <cstdio>

#include "renyibet/verify.hpp"

int main() {
  renyibet::verify::SuiteOptions opts;
  int failed = 0;
  renyibet::verify::run_all(opts, [&](const renyibet::verify::CheckResult& r) {
    std::printf("%s criterion %d: %s (%.2fs) %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  });
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
