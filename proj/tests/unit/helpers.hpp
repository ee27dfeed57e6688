#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "configdensity/error.hpp"
#include "configdensity/field.hpp"

namespace testing {

// Code of the configdensity::Error thrown by fn, or "" if nothing is thrown.
inline std::string error_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const configdensity::Error& e) {
    return e.code();
  }
  return "";
}

inline configdensity::Grid square(double lo, double hi, double h, int dim = 2) {
  const std::vector<double> a(static_cast<std::size_t>(dim), lo), b(static_cast<std::size_t>(dim), hi);
  return configdensity::Grid::covering(a, b, h);
}

inline configdensity::DensityField uniform_noise(const configdensity::Grid& g, std::uint64_t seed,
                                                 configdensity::Boundary b =
                                                     configdensity::Boundary::zero_outside) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(g.size());
  for (auto& x : v) x = u(rng);
  return configdensity::DensityField(g, std::move(v), b);
}

}  // namespace testing
