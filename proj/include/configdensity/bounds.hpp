#pragma once

#include <string>
#include <utility>
#include <vector>

#include "configdensity/field.hpp"
#include "configdensity/functionals.hpp"

namespace configdensity {

/// Outcome of one identity or inequality check: passed iff lhs <= rhs + slack
/// (for identities lhs is the error and rhs the tolerance).
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool passed = false;
  std::string detail;
  /// Extra named quantities worth printing next to the check.
  std::vector<std::pair<std::string, double>> extras;
};

BoundReport make_report(std::string name, double lhs, double rhs, double slack = 0.0,
                        std::string detail = {});

struct SmoothingParams {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

/// lambda1 = (delta^3/14)^3 / 2 and lambda2 = 168 M / delta^3, i.e. a factor
/// two of room in 2 lambda1^{1/3} < delta^3/7 and 12 M / lambda2 < delta^3/7.
/// Throws Error("invalid_delta") unless 0 < delta <= 1 and
/// Error("invalid_parameter") unless M > 0.
SmoothingParams choose_smoothing_params(double delta, double M);

/// The set a field is declared to live in: an axis-aligned box or a ball.
struct DeclaredSupport {
  enum class Shape { box, ball } shape = Shape::box;
  std::vector<double> lo, hi;  // box
  std::vector<double> center;  // ball
  double radius = 0.0;         // ball

  static DeclaredSupport make_box(std::vector<double> lo, std::vector<double> hi);
  static DeclaredSupport make_ball(std::vector<double> center, double radius);

  double measure(int dim) const;
  bool contains(std::span<const double> p) const;
};

/// For each alpha: |D(g; t, alpha) - D4(g; t, t lambda2)| against
/// delta^3 m(B)/7 + ||g * P_{t lambda1} - g * P_{t lambda2}||_1, passing with
/// slack 1e-6 m(B). Throws Error("support_mismatch") if a nonzero cell centre
/// lies outside the declared support.
std::vector<BoundReport> d1_d4_gap_check(const DensityField& f, const std::vector<double>& alphas,
                                         double t, double delta, double M,
                                         const DeclaredSupport& support,
                                         const QuadratureOptions& q = {});

}  // namespace configdensity
