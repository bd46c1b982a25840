#pragma once

#include "hifst/image.hpp"

namespace hifst {

// Sampled, renormalized Gaussian kernel. The default (sigma 0.5, radius 1)
// is the 3x3 denoising pre-filter applied before gradient computation.
struct GaussianParams {
  double sigma = 0.5;
  int radius = 1;
  void validate() const;
};

// Returns the 1-D kernel weights for [-radius, radius], normalized to sum 1.
std::vector<double> gaussian_kernel(const GaussianParams& params);

// Convolution with the separable 2-D Gaussian, replicate padding at borders.
GrayImage gaussian_filter(const GrayImage& img, const GaussianParams& params,
                          int threads = 1);

// Roberts cross gradient magnitude: sqrt((d0)^2 + (d1)^2) where d0 is the
// main-diagonal difference p(i,j) - p(i+1,j+1) and d1 the anti-diagonal
// difference p(i,j+1) - p(i+1,j). The 2x2 kernels are anchored at their
// top-left element; replicate padding keeps output dimensions equal to the
// input's.
GrayImage gradient_magnitude(const GrayImage& img, int threads = 1);

}  // namespace hifst
