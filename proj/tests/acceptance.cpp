#include <cstdio>
#include <cstring>
#include <iostream>

#include "hardy/verify.hpp"

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) {
      quick = true;
    } else {
      std::cerr << "usage: acceptance [--quick]\n";
      return 2;
    }
  }

  const hardy::VerifyReport report = hardy::run_acceptance(quick, &std::cerr);

  for (const hardy::CheckResult& r : report.results) {
    std::printf("%s %s value=%.17g expected=%.17g tol=%.17g\n",
                r.pass ? "PASS" : "FAIL", r.check.c_str(), r.value, r.expected, r.tol);
    if (!r.pass && !r.detail.empty()) std::printf("     %s\n", r.detail.c_str());
  }
  std::printf("%s\n", report.passed() ? "ALL CHECKS PASSED" : "CHECK FAILURES PRESENT");
  return report.passed() ? 0 : 1;
}
