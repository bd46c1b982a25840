#include "hifst/pipeline.hpp"

#include "hifst/parallel.hpp"
#include "hifst/preproc.hpp"
#include "hifst/transform.hpp"

namespace hifst {

BlurMap detect_blur_map(const GrayImage& input, const PipelineConfig& config,
                        PipelineTrace* trace) {
  config.validate();
  const int threads = resolve_thread_count(config.threads);

  GrayImage prefiltered = gaussian_filter(
      input, GaussianParams{config.gaussian_sigma, config.gaussian_radius},
      threads);
  GrayImage gradient = gradient_magnitude(prefiltered, threads);

  FusedStack stack =
      fuse_and_sort(gradient, config.scales, config.stride, threads);
  auto [normalized, stats] = layer_normalize(std::move(stack));
  GrayImage pooled = max_pool(normalized);
  GrayImage entropy = local_entropy(
      pooled, EntropyParams{config.entropy_window, config.entropy_bins},
      threads);
  GrayImage weighted = weight_map(pooled, entropy);

  GrayImage raw = config.stride > 1
                      ? upsample_nearest(weighted, input.height(),
                                         input.width(), config.stride)
                      : weighted;

  const GrayImage guide = config.smooth_guide == SmoothGuide::InputImage
                              ? input
                              : normalize01(raw);
  GrayImage smoothed = domain_transform_smooth(
      raw, guide,
      SmoothParams{config.smooth_sigma_s, config.smooth_sigma_r,
                   config.smooth_iterations},
      threads);

  if (trace) {
    trace->prefiltered = std::move(prefiltered);
    trace->gradient = std::move(gradient);
    trace->pooled = std::move(pooled);
    trace->entropy = std::move(entropy);
    trace->weighted = std::move(weighted);
  }
  return normalize_map(smoothed, config);
}

}  // namespace hifst
