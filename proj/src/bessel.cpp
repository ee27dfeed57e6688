#include "configdensity/bessel.hpp"

#include <cmath>
#include <numbers>

namespace configdensity {

namespace {

// Sum of (-x^2/4)^k / (k!)^2. Below 8 the largest term is ~113, so the
// cancellation costs at most two digits.
double j0_series(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Miller's backward recurrence J_{n-1} = (2n/x) J_n - J_{n+1}, normalised by
// J_0 + 2 sum J_{2k} = 1.
double j0_miller(double x) {
  int start = static_cast<int>(x + 30.0 + 3.0 * std::cbrt(x) * 4.0);
  if (start % 2) ++start;
  double next = 0.0;
  double cur = 1e-30;
  double norm = 0.0;
  for (int n = start; n > 0; --n) {
    const double prev = (2.0 * n / x) * cur - next;
    next = cur;
    cur = prev;
    // cur now holds J_{n-1}.
    if ((n - 1) % 2 == 0 && n - 1 > 0) norm += 2.0 * cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
    }
  }
  norm += cur;
  return cur / norm;
}

// Hankel expansion with the full asymptotic series, truncated once terms drop
// below 1e-17 or start growing.
double j0_asymptotic(double x) {
  const double inv8x = 1.0 / (8.0 * x);
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= odd * odd * inv8x / k;
    if (term > last) break;
    last = term;
    switch (k % 4) {
      case 1: q -= term; break;
      case 2: p -= term; break;
      case 3: q += term; break;
      case 0: p += term; break;
    }
    if (term < 1e-17) break;
  }
  // cos(x - pi/4) and sin(x - pi/4) without forming x - pi/4, which would
  // round away the low bits of large x.
  const double c = std::cos(x);
  const double s = std::sin(x);
  const double cos_chi = (c + s) * std::numbers::sqrt2 * 0.5;
  const double sin_chi = (s - c) * std::numbers::sqrt2 * 0.5;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

}  // namespace

double bessel_j0(double x) noexcept {
  x = std::abs(x);
  if (x < 8.0) return j0_series(x);
  if (x < 40.0) return j0_miller(x);
  return j0_asymptotic(x);
}

}  // namespace configdensity
