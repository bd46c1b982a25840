#pragma once

#include "hifst/config.hpp"
#include "hifst/image.hpp"

namespace hifst {

struct SmoothParams {
  double sigma_s = 15.0;
  double sigma_r = 0.3;
  int iterations = 3;
  void validate() const;
};

// Recursive-filter variant of the domain transform. Each iteration runs a
// horizontal then a vertical pair of causal/anti-causal 1-D recursions with
// per-sample feedback a^d, where d = 1 + (sigma_s/sigma_r)*|delta guide| is
// the transformed-domain distance between neighbors and
// a = exp(-sqrt(2)/sigma_H_i), sigma_H_i = sigma_s*sqrt(3)*2^(It-i)/sqrt(4^It-1).
GrayImage domain_transform_smooth(const GrayImage& map, const GrayImage& guide,
                                  const SmoothParams& params, int threads = 1);

// Final normalized blur map (higher = sharper) plus the parameters that
// produced it.
struct BlurMap {
  GrayImage map;
  PipelineConfig params;
};

// Min-max normalization to [0,1]; constant maps become all zeros.
BlurMap normalize_map(const GrayImage& map, const PipelineConfig& params);

}  // namespace hifst
