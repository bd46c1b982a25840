#include "hifst/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace hifst {

GrayImage add_gaussian_noise(const GrayImage& img, double variance,
                             unsigned seed) {
  if (variance < 0.0) throw std::invalid_argument("variance must be >= 0");
  if (variance == 0.0) return img;
  const double stddev = std::sqrt(variance);
  std::mt19937 gen(seed);
  GrayImage out(img.height(), img.width());
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    double v = img.data()[p] + stddev * standard_normal(gen);
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
    out.data()[p] = v;
  }
  return out;
}

}  // namespace hifst
