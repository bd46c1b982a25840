#pragma once

#include <random>

#include "hifst/image.hpp"

namespace hifst {

// Deterministic value mappings on top of mt19937. The standard distributions
// are implementation-defined, so seeded outputs would differ across standard
// libraries; these do not.
inline double uniform01(std::mt19937& gen) {
  return gen() * (1.0 / 4294967296.0);  // [0, 1)
}

// Box-Muller, one sample per call (the second is discarded to keep the
// stream position independent of call pairing).
inline double standard_normal(std::mt19937& gen) {
  double u1 = uniform01(gen);
  double u2 = uniform01(gen);
  while (u1 <= 0.0) u1 = uniform01(gen);
  constexpr double two_pi = 6.283185307179586;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

// Adds zero-mean Gaussian noise with the given variance (intensity scale
// [0,1]) and clamps the result to [0,1]. Variance 0 returns the input
// unchanged. Same seed, same output.
GrayImage add_gaussian_noise(const GrayImage& img, double variance,
                             unsigned seed);

}  // namespace hifst
