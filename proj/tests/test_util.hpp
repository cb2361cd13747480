#pragma once

#include <random>

#include "gdkp/coupling.hpp"

namespace gdkp::testing {

// Uniform point of U(2): eta in [0, pi), m uniform on the 3-sphere.
inline Coupling random_coupling(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 3.14159265358979);
  Eigen::Vector4d m(n(rng), n(rng), n(rng), n(rng));
  return make_coupling(u(rng), m.normalized());
}

inline Coupling random_permeable(std::mt19937_64& rng, double min_radius = 0.05) {
  for (;;) {
    const Coupling c = random_coupling(rng);
    if (permeable_radius(c) > min_radius) return c;
  }
}

}  // namespace gdkp::testing
