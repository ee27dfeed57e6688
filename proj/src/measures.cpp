#include "configdensity/measures.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "configdensity/error.hpp"

namespace configdensity {

namespace {

constexpr double kPi = std::numbers::pi;

// Laguerre L_m and L_{m-1} at x by the three-term recurrence.
void laguerre_pair(std::size_t m, double x, double& lm, double& lm1) {
  double p0 = 1.0;
  double p1 = 1.0 - x;
  if (m == 1) {
    lm = p1;
    lm1 = p0;
    return;
  }
  for (std::size_t k = 1; k < m; ++k) {
    const double kk = static_cast<double>(k);
    const double p2 = ((2.0 * kk + 1.0 - x) * p1 - kk * p0) / (kk + 1.0);
    p0 = p1;
    p1 = p2;
  }
  lm = p1;
  lm1 = p0;
}

double laguerre(std::size_t m, double x) {
  double lm = 0.0;
  double lm1 = 0.0;
  laguerre_pair(m, x, lm, lm1);
  return lm;
}

}  // namespace

CircleQuadrature circle_quadrature(std::size_t n) {
  if (n < 4) throw Error("too_few_nodes", "circle quadrature needs at least 4 nodes");
  CircleQuadrature q;
  q.weight = 1.0 / static_cast<double>(n);
  q.nodes.resize(n);
  q.perp.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    // Split 2 pi j/n into whole quarter turns plus a remainder in [0, pi/2),
    // then fold the remainder into the first octant so that axis points and
    // diagonal symmetries come out exact.
    const std::size_t quarter = (4 * j) / n;
    const std::size_t rem = 4 * j - quarter * n;  // angle = pi/2 * rem/n
    double c = 0.0;
    double s = 0.0;
    if (2 * rem <= n) {
      const double phi = 0.5 * kPi * static_cast<double>(rem) / static_cast<double>(n);
      c = std::cos(phi);
      s = std::sin(phi);
    } else {
      const double phi = 0.5 * kPi * static_cast<double>(n - rem) / static_cast<double>(n);
      c = std::sin(phi);
      s = std::cos(phi);
    }
    Vec2 y{c, s};
    for (std::size_t r = 0; r < quarter; ++r) y = {-y[1], y[0]};
    q.nodes[j] = y;
    q.perp[j] = {-y[1], y[0]};
  }
  return q;
}

std::size_t nu_average_circle_nodes(double xi_norm) {
  const double blocks = std::ceil(std::max(0.0, xi_norm));
  return std::max<std::size_t>(256, 64 * static_cast<std::size_t>(blocks));
}

std::size_t circle_nodes_for_radius(double t, double h) {
  std::size_t n = 64;
  if (t > 0.0 && h > 0.0) {
    n = std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(2.0 * kPi * t / h)));
  }
  return (n + 7) / 8 * 8;
}

RayQuadrature ray_quadrature(std::size_t m) {
  if (m < 2) throw Error("too_few_nodes", "ray quadrature needs at least 2 nodes");
  // Jacobi matrix of the monic Laguerre recurrence: diagonal 2k+1,
  // off-diagonal k.
  Eigen::VectorXd diag(static_cast<Eigen::Index>(m));
  Eigen::VectorXd off(static_cast<Eigen::Index>(m - 1));
  for (std::size_t k = 0; k < m; ++k) diag[static_cast<Eigen::Index>(k)] = 2.0 * k + 1.0;
  for (std::size_t k = 1; k < m; ++k) off[static_cast<Eigen::Index>(k - 1)] = static_cast<double>(k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error("quadrature_failure", "tridiagonal eigen-solve did not converge");
  }

  RayQuadrature q;
  q.nodes.resize(m);
  q.weights.resize(m);
  const double mm = static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) {
    double x = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
    // Newton on L_m using L_m'(x) = m (L_m - L_{m-1}) / x.
    for (int it = 0; it < 8; ++it) {
      double lm = 0.0;
      double lm1 = 0.0;
      laguerre_pair(m, x, lm, lm1);
      const double deriv = mm * (lm - lm1) / x;
      const double step = lm / deriv;
      x -= step;
      if (std::abs(step) <= 1e-16 * x) break;
    }
    const double l_next = laguerre(m + 1, x);
    q.nodes[i] = x;
    q.weights[i] = x / ((mm + 1.0) * (mm + 1.0) * l_next * l_next);
  }
  return q;
}

RayQuadrature gauss_legendre(std::size_t m) {
  if (m < 1) throw Error("too_few_nodes", "Gauss-Legendre needs at least 1 node");
  RayQuadrature q;
  q.nodes.resize(m);
  q.weights.resize(m);
  const double mm = static_cast<double>(m);
  for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (mm + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= m; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = mm * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[i] = -x;
    q.nodes[m - 1 - i] = x;
    q.weights[i] = w;
    q.weights[m - 1 - i] = w;
  }
  return q;
}

std::vector<Vec3> sphere_directions(std::size_t n) {
  if (n < 1) throw Error("too_few_nodes", "need at least one direction");
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    out[i] = {r * std::cos(phi), r * std::sin(phi), z};
  }
  return out;
}

std::complex<double> nu_hat_closed(const Vec2& y, double alpha, const Vec2& xi) {
  const Vec2 yp{-y[1], y[0]};
  const double along = y[0] * xi[0] + y[1] * xi[1];
  const double across = yp[0] * xi[0] + yp[1] * xi[1];
  const std::complex<double> phase = std::polar(1.0, -4.0 * kPi * alpha * across);
  return phase / std::complex<double>(1.0, 2.0 * kPi * along);
}

std::complex<double> nu_hat_numeric(const Vec2& y, double alpha, const Vec2& xi,
                                    const RayQuadrature& rq) {
  constexpr double kCut = 40.0;
  const Vec2 yp{-y[1], y[0]};
  const double omega = 2.0 * kPi * (y[0] * xi[0] + y[1] * xi[1]);
  const double across = yp[0] * xi[0] + yp[1] * xi[1];
  const std::complex<double> offset = std::polar(1.0, -4.0 * kPi * alpha * across);

  const std::size_t m = rq.size();
  const RayQuadrature gl = gauss_legendre(m);
  // About m/(4 pi) oscillations per panel keeps each panel well resolved.
  const double panel_target = static_cast<double>(m) / (2.0 * (std::abs(omega) + 1.0));
  const auto panels = static_cast<std::size_t>(std::ceil(kCut / panel_target));
  const double len = kCut / static_cast<double>(panels);

  std::complex<double> acc(0.0, 0.0);
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = len * static_cast<double>(p);
    std::complex<double> part(0.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const double s = a + 0.5 * len * (gl.nodes[i] + 1.0);
      part += gl.weights[i] * std::exp(-s) * std::polar(1.0, -omega * s);
    }
    acc += 0.5 * len * part;
  }
  std::complex<double> tail(0.0, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    tail += rq.weights[i] * std::polar(1.0, -omega * (kCut + rq.nodes[i]));
  }
  acc += std::exp(-kCut) * tail;
  return offset * acc;
}

std::complex<double> nu_hat_laguerre(const Vec2& y, double alpha, const Vec2& xi,
                                     const RayQuadrature& rq) {
  const Vec2 yp{-y[1], y[0]};
  const double omega = 2.0 * kPi * (y[0] * xi[0] + y[1] * xi[1]);
  const double across = yp[0] * xi[0] + yp[1] * xi[1];
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = 0; i < rq.size(); ++i) {
    acc += rq.weights[i] * std::polar(1.0, -omega * rq.nodes[i]);
  }
  return std::polar(1.0, -4.0 * kPi * alpha * across) * acc;
}

double nu_abs_circle_average(const Vec2& xi, double alpha, const CircleQuadrature& cq) {
  double acc = 0.0;
  for (std::size_t j = 0; j < cq.size(); ++j) {
    acc += std::abs(nu_hat_closed(cq.nodes[j], alpha, xi));
  }
  return acc * cq.weight;
}

double nu_abs_circle_average_exact(double xi_norm) {
  const double a = 2.0 * kPi * xi_norm;
  double p = std::sqrt(1.0 + a * a);
  double q = 1.0;
  for (int it = 0; it < 64 && std::abs(p - q) > 1e-16 * p; ++it) {
    const double next_p = 0.5 * (p + q);
    q = std::sqrt(p * q);
    p = next_p;
  }
  return 1.0 / p;
}

}  // namespace configdensity
