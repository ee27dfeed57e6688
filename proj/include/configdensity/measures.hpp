#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace configdensity {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

/// Trapezoid rule for the normalised arc-length measure on the unit circle:
/// y_j = (cos 2 pi j/n, sin 2 pi j/n), weight 1/n, and perp_j = y_j rotated
/// anticlockwise by a quarter turn.
struct CircleQuadrature {
  std::vector<Vec2> nodes;
  std::vector<Vec2> perp;
  double weight = 0.0;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Throws Error("too_few_nodes") for n < 4. Multiples of four put nodes
/// exactly on the axes.
CircleQuadrature circle_quadrature(std::size_t n);

/// Node count used for the circle average of |nu^| at frequency norm r:
/// max(256, 64 ceil(r)). The integrand has a square-root cusp of width ~1/r
/// near <y, xi> = 0, so fewer nodes per unit of r leaves errors above 1e-6.
std::size_t nu_average_circle_nodes(double xi_norm);

/// Node count for circle averages of a field sampled at spacing h on a
/// circle of radius t: one node per grid step of arc length, at least 64,
/// rounded up to a multiple of 8.
std::size_t circle_nodes_for_radius(double t, double h);

/// Gauss-Laguerre rule for integral_0^inf e^{-s} phi(s) ds.
struct RayQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Golub-Welsch eigen-decomposition followed by Newton refinement of each
/// node. Exact for polynomials of degree <= 2m-1. Throws
/// Error("too_few_nodes") for m < 2.
RayQuadrature ray_quadrature(std::size_t m);

/// Gauss-Legendre rule on [-1, 1]. Throws Error("too_few_nodes") for m < 1.
RayQuadrature gauss_legendre(std::size_t m);

/// Deterministic, roughly uniform directions on S^2 (Fibonacci lattice).
std::vector<Vec3> sphere_directions(std::size_t n);

/// Transform of the exponential ray measure
///   nu_y^alpha(A) = integral_0^inf e^{-s} chi_A(2 alpha y_perp + s y) ds
/// in closed form: e^{-4 pi i alpha <y_perp, xi>} / (1 + 2 pi i <y, xi>).
std::complex<double> nu_hat_closed(const Vec2& y, double alpha, const Vec2& xi);

/// The defining integral evaluated numerically. Plain Gauss-Laguerre cannot
/// resolve e^{-i omega s} once omega = 2 pi <y, xi> exceeds a few units, so
/// [0, 40] is split into Gauss-Legendre panels of rq.size() nodes, each
/// spanning a bounded number of oscillations, and the remaining tail
/// e^{-40} integral_0^inf e^{-u} phi(40 + u) du uses the Laguerre rule.
std::complex<double> nu_hat_numeric(const Vec2& y, double alpha, const Vec2& xi,
                                    const RayQuadrature& rq);

/// The defining integral with the Laguerre rule alone; accurate only for
/// small |<y, xi>|.
std::complex<double> nu_hat_laguerre(const Vec2& y, double alpha, const Vec2& xi,
                                     const RayQuadrature& rq);

/// Circle-quadrature value of integral |nu_y^alpha^(xi)| d sigma(y).
double nu_abs_circle_average(const Vec2& xi, double alpha, const CircleQuadrature& cq);

/// integral_0^1 d theta / sqrt(1 + 4 pi^2 |xi|^2 cos^2 2 pi theta), through the
/// arithmetic-geometric mean: 1 / AGM(sqrt(1 + a^2), 1) with a = 2 pi |xi|.
double nu_abs_circle_average_exact(double xi_norm);

}  // namespace configdensity
