// Runs every acceptance check at desk scale and prints one line per check.
// Usage: acceptance [--smoke] [--seed N] [--only ID]...

#include <cstdlib>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <vector>

#include "cubefree/claims.hpp"

int main(int argc, char** argv) {
  cubefree::ClaimOptions opts;
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--smoke")) {
      opts.level = cubefree::ClaimLevel::kSmoke;
    } else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) {
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
      only.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--smoke] [--seed N] [--only ID]...\n";
      return 2;
    }
  }
  if (only.empty()) only = cubefree::claim_ids();
  int failed = 0;
  for (int id : only) {
    const cubefree::ClaimResult r = cubefree::run_claim(id, opts);
    std::cout << (r.passed ? "PASS" : "FAIL") << " [" << std::setw(2) << r.id << "] " << r.name << ": "
              << r.statement << " | " << r.instances << " instances, " << std::fixed << std::setprecision(1)
              << r.elapsed_ms / 1000.0 << " s (limit " << r.limit_ms / 1000.0 << " s) | " << r.detail;
    if (!r.counterexample.empty()) std::cout << " | counterexample: " << r.counterexample;
    std::cout << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << only.size() - failed << "/" << only.size() << std::endl;
  return failed ? 1 : 0;
}
