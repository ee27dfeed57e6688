#pragma once

namespace configdensity {

/// Bessel function of the first kind, order zero. Absolute error below 1e-10
/// on |x| <= 1e6 (typically a few ulp of the result's scale).
double bessel_j0(double x) noexcept;

/// Signature used wherever J0 can be substituted, e.g. for fault injection in
/// the verification suite.
using J0Function = double (*)(double);

}  // namespace configdensity
