#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "configdensity/bessel.hpp"
#include "configdensity/field.hpp"

namespace configdensity {

enum class Method { spatial, spectral };
std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct FunctionalResult {
  std::string name;  // "pair", "d1", "d4", "colinear"
  double value = 0.0;
  Method method = Method::spatial;
  double t = 0.0;
  std::optional<double> alpha;
  Grid grid;
  std::size_t circle_nodes = 0;
  std::size_t ray_nodes = 0;
  std::int64_t elapsed_ns = 0;
};

/// Quadrature sizes. circle_nodes = 0 picks one node per grid step of arc
/// length (see circle_nodes_for_radius).
struct QuadratureOptions {
  std::size_t circle_nodes = 0;
  std::size_t ray_nodes = 64;
  J0Function j0 = bessel_j0;
};

/// I(g, t) = integral integral g(x) g(x - t y) d sigma(y) dx for d = 2.
/// Spatial: sum_x h^2 g(x) (1/n) sum_j g(x - t y_j), interpolated reads.
/// Spectral: sum_k |g^(xi_k)|^2 J0(2 pi t |xi_k|) dxi^2 on a 2x padded grid.
/// t = 0 gives ||g||_2^2. Errors: invalid_scale (t < 0),
/// circle_measure_requires_2d, requires_compact_support (spectral on a
/// periodic field).
FunctionalResult pair_correlation(const DensityField& f, double t, Method method,
                                  const QuadratureOptions& q = {});

/// D(g; t, alpha) = integral integral integral e^{-s} g(x) g(x + t y)
///   g(x + t (2 alpha y_perp + s y)) ds d sigma(y) dx,
/// which equals t^2 D1^alpha(Z_t g). Every sampled triple spans a triangle of
/// area alpha t^2. Errors: invalid_parameter (alpha or t not positive),
/// circle_measure_requires_2d.
FunctionalResult triangle_d1(const DensityField& f, double alpha, double t,
                             const QuadratureOptions& q = {});

/// D4 at scale t: integral integral g(x) g(x + t y) (g * P_{t lambda2})(x)
/// d sigma(y) dx, i.e. t^2 D4(Z_t g) with smoothing parameter lambda2.
FunctionalResult triangle_d4(const DensityField& f, double lambda2, double t = 1.0,
                             const QuadratureOptions& q = {});

/// ||g * P_lambda1 - g * P_lambda2||_1 over the convolution torus (2x padded
/// for zero_outside fields). Throws Error("invalid_lambda") for negative
/// arguments.
double smoothing_gap(const DensityField& f, double lambda1, double lambda2);

/// integral integral g(x) g(x + t y) g(x + 2 t y) d sigma(y) dx with sigma
/// the normalised measure on the unit circle (d = 2) or sphere (d = 3, a
/// Fibonacci point set of n_dirs directions). n_dirs = 0 picks a default.
/// Errors: requires_d_ge_2, invalid_scale.
FunctionalResult colinear_triple(const DensityField& f, double t, std::size_t n_dirs = 0);

}  // namespace configdensity
