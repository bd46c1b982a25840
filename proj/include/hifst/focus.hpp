#pragma once

#include "hifst/image.hpp"
#include "hifst/postproc.hpp"

namespace hifst {

struct FocusParams {
  double threshold = 0.98;
  double presmooth_sigma = 5.0;
  void validate() const;
};

// Camera focus points map: Gaussian-smooth the blur map (radius ceil(3*sigma)),
// min-max normalize, threshold. Returns a binary (0/1) image.
GrayImage focus_points(const BlurMap& blur_map, const FocusParams& params);

// Depth-of-field proxy: the median blur-map value (lower median for an even
// pixel count).
double dof_estimate(const BlurMap& blur_map);

// Spatially-varying re-blur: target sigma(i,j) = strength * (1 - D(i,j)),
// realized by blending `levels` precomputed uniformly blurred copies with
// linear interpolation over sigma. Pixels with D = 1 pass through unchanged.
GrayImage magnify_blur(const GrayImage& img, const BlurMap& blur_map,
                       double strength, int levels = 8);

}  // namespace hifst
