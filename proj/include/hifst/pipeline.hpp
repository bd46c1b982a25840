#pragma once

#include "hifst/config.hpp"
#include "hifst/image.hpp"
#include "hifst/postproc.hpp"

namespace hifst {

// Intermediate products of a detection run, for diagnostics and testing.
struct PipelineTrace {
  GrayImage prefiltered;  // Gaussian-denoised input
  GrayImage gradient;     // Roberts gradient magnitudes
  GrayImage pooled;       // T: max over normalized layers (grid resolution)
  GrayImage entropy;      // local entropy of T
  GrayImage weighted;     // raw T .* entropy before smoothing (grid resolution)
};

// Full detection pipeline: prefilter, gradient magnitudes, multiscale fused
// and sorted high-frequency decomposition, layer normalization, max pooling,
// entropy weighting, edge-preserving smoothing, final normalization.
// Input values are expected in [0,1]. Higher output intensity = sharper.
BlurMap detect_blur_map(const GrayImage& input, const PipelineConfig& config,
                        PipelineTrace* trace = nullptr);

}  // namespace hifst
