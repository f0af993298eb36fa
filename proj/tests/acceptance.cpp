// Runs the full acceptance suite; one line per criterion, exit status 1 on any failure.

#include <cstdio>
#include <cstdlib>

#include "eestat/validation.hpp"

int main(int argc, char** argv) {
  eestat::ValidationConfig cfg;
  if (argc > 1) cfg.seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  eestat::run_validation(cfg, [&](const eestat::CriterionResult& r) {
    std::printf("[%s] criterion %2d: %s (%.1f s) | %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  });
  std::printf("%d of %d criteria passed\n", eestat::kCriterionCount - failed, eestat::kCriterionCount);
  return failed == 0 ? 0 : 1;
}
