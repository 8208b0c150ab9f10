// Runs every criterion and prints one line each; exit status is the AND.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "thetakit/acceptance.hpp"

int main(int argc, char** argv) {
  thetakit::AcceptanceOptions options;
  if (argc > 1) options.seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  for (int id = 1; id <= thetakit::kCriterionCount; ++id) {
    const auto r = thetakit::run_criterion(id, options.seed);
    std::printf("%s  [%2d] %-66s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.summary.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  std::printf("%d/%d criteria passed (seed %llu)\n", thetakit::kCriterionCount - failed, thetakit::kCriterionCount,
              static_cast<unsigned long long>(options.seed));
  return failed == 0 ? 0 : 1;
}
