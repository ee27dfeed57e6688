#pragma once

#include <string>
#include <vector>

#include "configdensity/bessel.hpp"
#include "configdensity/bounds.hpp"

namespace configdensity {

enum class VerifyLevel { fast, full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::fast;
  /// J0 used by every J0-dependent check; tests substitute a faulty one to
  /// confirm the suite notices.
  J0Function j0 = bessel_j0;
  /// Called after each check completes, e.g. to stream progress.
  void (*on_report)(const BoundReport&) = nullptr;
};

struct VerifyOutcome {
  std::vector<BoundReport> reports;
  bool all_passed = false;
  /// 0 when every check passed, 1 otherwise.
  int exit_code = 1;
};

/// Runs the registered identities and inequalities. The full level adds the
/// large-grid checks (1024^2 smoothing gap, ball radius 32).
VerifyOutcome verify_suite(const VerifyOptions& options = {});

/// One line per check: PASS/FAIL, name, lhs, rhs, margin, then extras.
std::string format_report(const BoundReport& r);

/// J0 with the sign flipped, for fault injection.
double j0_sign_flipped(double x) noexcept;

}  // namespace configdensity
