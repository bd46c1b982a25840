#include "hifst/focus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hifst/preproc.hpp"

namespace hifst {

void FocusParams::validate() const {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("focus threshold must lie in (0,1]");
  }
  if (!(presmooth_sigma > 0.0)) {
    throw std::invalid_argument("presmooth sigma must be > 0");
  }
}

GrayImage focus_points(const BlurMap& blur_map, const FocusParams& params) {
  params.validate();
  const int radius = static_cast<int>(std::ceil(3.0 * params.presmooth_sigma));
  GrayImage smoothed = gaussian_filter(
      blur_map.map, GaussianParams{params.presmooth_sigma, radius});
  GrayImage normalized = normalize01(smoothed);
  GrayImage out(normalized.height(), normalized.width());
  for (std::size_t p = 0; p < normalized.pixel_count(); ++p) {
    out.data()[p] = normalized.data()[p] >= params.threshold ? 1.0 : 0.0;
  }
  return out;
}

double dof_estimate(const BlurMap& blur_map) {
  std::vector<double> v = blur_map.map.data();
  const std::size_t mid = (v.size() - 1) / 2;  // lower median when even
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  return v[mid];
}

GrayImage magnify_blur(const GrayImage& img, const BlurMap& blur_map,
                       double strength, int levels) {
  if (strength < 0.0) throw std::invalid_argument("strength must be >= 0");
  if (levels < 2) throw std::invalid_argument("levels must be >= 2");
  if (!img.same_size(blur_map.map)) {
    throw std::invalid_argument("image and blur map dimensions must match");
  }
  if (strength == 0.0) return img;

  // Level k is the image uniformly blurred with sigma_k = strength*k/(L-1);
  // level 0 is the untouched input.
  std::vector<GrayImage> blurred;
  blurred.reserve(levels);
  blurred.push_back(img);
  for (int k = 1; k < levels; ++k) {
    const double sigma = strength * k / (levels - 1);
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    blurred.push_back(gaussian_filter(img, GaussianParams{sigma, radius}));
  }

  GrayImage out(img.height(), img.width());
  const GrayImage& d = blur_map.map;
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    double x = (1.0 - d.data()[p]) * (levels - 1);  // position in sigma space
    if (x <= 0.0) {
      out.data()[p] = blurred[0].data()[p];
      continue;
    }
    int k0 = static_cast<int>(x);
    if (k0 >= levels - 1) k0 = levels - 2;
    const double f = std::min(x - k0, 1.0);
    out.data()[p] =
        (1.0 - f) * blurred[k0].data()[p] + f * blurred[k0 + 1].data()[p];
  }
  return out;
}

}  // namespace hifst
