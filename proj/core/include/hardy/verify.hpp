#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hardy {

/// One acceptance check: headline value vs expected within tol, plus detail.
struct CheckResult {
  std::string check;
  double value = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  bool quick = false;
  std::vector<CheckResult> results;
  bool passed() const;
};

/// Runs the acceptance suite. quick selects a fast smoke subset; the full
/// suite solves dense spectra up to dimension 4096. Progress lines go to
/// *progress when non-null.
VerifyReport run_acceptance(bool quick, std::ostream* progress = nullptr);

}  // namespace hardy
