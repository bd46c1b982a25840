#pragma once

#include <string>
#include <vector>

#include "hifst/image.hpp"

namespace hifst {

enum class RegionShape { HalfPlane, CenteredSquare, Disk };

struct SyntheticParams {
  int count = 20;
  int size = 256;
  std::vector<double> blur_sigmas{2.0, 4.0};
  unsigned seed = 7;
  int square_size = 0;  // 0 = half the image side
  double disk_radius_frac = 0.3;

  int effective_square() const { return square_size > 0 ? square_size : size / 2; }
  void validate() const;
};

struct LabeledImage {
  std::string stem;
  GrayImage image;  // values in [0,1]
  GrayImage mask;   // 1 = sharp region, 0 = blurred region
};

// One seeded image/mask pair: a textured sharp region (half-plane, centered
// square, or disk, cycling with the index) composited over the same texture
// blurred with one of the configured sigmas. Deterministic in (params, index).
LabeledImage make_synthetic(int index, const SyntheticParams& params);

std::vector<LabeledImage> make_suite(const SyntheticParams& params);

// Writes <out_dir>/images/<stem>.png and <out_dir>/masks/<stem>.png.
void write_suite(const std::vector<LabeledImage>& suite,
                 const std::string& out_dir);

}  // namespace hifst
