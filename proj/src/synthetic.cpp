#include "hifst/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "hifst/imageio.hpp"
#include "hifst/preproc.hpp"
#include "hifst/rng.hpp"

namespace hifst {
namespace {

GrayImage noise_field(int size, std::mt19937& gen) {
  GrayImage out(size, size);
  for (double& v : out.data()) v = uniform01(gen);
  return out;
}

GrayImage shape_mask(RegionShape shape, int size, int variant,
                     const SyntheticParams& params) {
  GrayImage mask(size, size, 0.0);
  switch (shape) {
    case RegionShape::HalfPlane: {
      // Rotate the sharp side through left/right/top/bottom.
      const int side = variant % 4;
      for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
          bool sharp = false;
          if (side == 0) sharp = j < size / 2;
          if (side == 1) sharp = j >= size / 2;
          if (side == 2) sharp = i < size / 2;
          if (side == 3) sharp = i >= size / 2;
          mask(i, j) = sharp ? 1.0 : 0.0;
        }
      }
      break;
    }
    case RegionShape::CenteredSquare: {
      const int side = params.effective_square();
      const int lo = (size - side) / 2;
      const int hi = lo + side;
      for (int i = lo; i < hi; ++i) {
        for (int j = lo; j < hi; ++j) mask(i, j) = 1.0;
      }
      break;
    }
    case RegionShape::Disk: {
      const double c = (size - 1) / 2.0;
      const double r = params.disk_radius_frac * size;
      for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
          const double di = i - c;
          const double dj = j - c;
          mask(i, j) = di * di + dj * dj <= r * r ? 1.0 : 0.0;
        }
      }
      break;
    }
  }
  return mask;
}

const char* shape_name(RegionShape shape) {
  switch (shape) {
    case RegionShape::HalfPlane:
      return "half";
    case RegionShape::CenteredSquare:
      return "square";
    case RegionShape::Disk:
      return "disk";
  }
  return "?";
}

}  // namespace

void SyntheticParams::validate() const {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  if (size < 32) throw std::invalid_argument("size must be >= 32");
  if (blur_sigmas.empty()) throw std::invalid_argument("need at least one blur sigma");
  for (double s : blur_sigmas) {
    if (!(s > 0.0)) throw std::invalid_argument("blur sigmas must be > 0");
  }
  if (square_size != 0 && (square_size < 8 || square_size > size)) {
    throw std::invalid_argument("square size out of range");
  }
  if (!(disk_radius_frac > 0.0 && disk_radius_frac < 0.5)) {
    throw std::invalid_argument("disk radius fraction must lie in (0, 0.5)");
  }
}

LabeledImage make_synthetic(int index, const SyntheticParams& params) {
  params.validate();
  if (index < 0) throw std::invalid_argument("index must be >= 0");
  std::mt19937 gen(params.seed + 0x9E3779B9u * static_cast<unsigned>(index + 1));

  // Two-octave texture: fine noise over a smoother large-scale field, then
  // stretched to full [0,1] contrast.
  GrayImage fine = noise_field(params.size, gen);
  GrayImage coarse = normalize01(gaussian_filter(noise_field(params.size, gen),
                                                 GaussianParams{8.0, 24}));
  GrayImage tex(params.size, params.size);
  for (std::size_t p = 0; p < tex.pixel_count(); ++p) {
    tex.data()[p] = 0.6 * fine.data()[p] + 0.4 * coarse.data()[p];
  }
  tex = normalize01(tex);

  const RegionShape shape = static_cast<RegionShape>(index % 3);
  const double sigma = params.blur_sigmas[index % params.blur_sigmas.size()];
  GrayImage mask = shape_mask(shape, params.size, index / 3, params);

  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  GrayImage blurred = gaussian_filter(tex, GaussianParams{sigma, radius});

  // Feathered composite: a hard seam would plant artificial high
  // frequencies inside the blurred region along the boundary.
  GrayImage alpha = gaussian_filter(mask, GaussianParams{1.5, 5});
  GrayImage image(params.size, params.size);
  for (std::size_t p = 0; p < image.pixel_count(); ++p) {
    const double a = alpha.data()[p];
    double v = a * tex.data()[p] + (1.0 - a) * blurred.data()[p];
    image.data()[p] = std::min(1.0, std::max(0.0, v));
  }

  char stem[64];
  std::snprintf(stem, sizeof(stem), "synth_%03d_%s_s%g", index,
                shape_name(shape), sigma);
  return LabeledImage{stem, std::move(image), std::move(mask)};
}

std::vector<LabeledImage> make_suite(const SyntheticParams& params) {
  params.validate();
  std::vector<LabeledImage> suite;
  suite.reserve(params.count);
  for (int i = 0; i < params.count; ++i) {
    suite.push_back(make_synthetic(i, params));
  }
  return suite;
}

void write_suite(const std::vector<LabeledImage>& suite,
                 const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path images = fs::path(out_dir) / "images";
  const fs::path masks = fs::path(out_dir) / "masks";
  std::error_code ec;
  fs::create_directories(images, ec);
  fs::create_directories(masks, ec);
  if (ec) throw io_error("cannot create output directories under " + out_dir);
  for (const LabeledImage& item : suite) {
    save_map(item.image, (images / (item.stem + ".png")).string(),
             MapFormat::Png8);
    save_map(item.mask, (masks / (item.stem + ".png")).string(),
             MapFormat::Png8);
  }
}

}  // namespace hifst
