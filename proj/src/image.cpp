#include "hifst/image.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hifst {

GrayImage::GrayImage(int height, int width, double fill)
    : height_(height), width_(width) {
  if (height < 1 || width < 1) {
    throw std::invalid_argument("GrayImage dimensions must be >= 1");
  }
  data_.assign(pixel_count(), fill);
}

GrayImage::GrayImage(int height, int width, std::vector<double> data)
    : height_(height), width_(width), data_(std::move(data)) {
  if (height < 1 || width < 1) {
    throw std::invalid_argument("GrayImage dimensions must be >= 1");
  }
  if (data_.size() != pixel_count()) {
    throw std::invalid_argument("GrayImage data length must equal height*width");
  }
}

std::pair<double, double> value_range(const GrayImage& img) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : img.data()) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return {lo, hi};
}

bool all_finite(const GrayImage& img) {
  for (double v : img.data()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

GrayImage normalize01(const GrayImage& img) {
  auto [lo, hi] = value_range(img);
  GrayImage out(img.height(), img.width());
  if (hi <= lo) {
    return out;  // constant input: all zeros
  }
  const double scale = 1.0 / (hi - lo);
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    out.data()[p] = (img.data()[p] - lo) * scale;
  }
  return out;
}

GrayImage upsample_nearest(const GrayImage& src, int height, int width,
                           int stride) {
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  if (stride == 1 && src.height() == height && src.width() == width) {
    return src;
  }
  GrayImage out(height, width);
  for (int i = 0; i < height; ++i) {
    int si = std::min(i / stride, src.height() - 1);
    for (int j = 0; j < width; ++j) {
      int sj = std::min(j / stride, src.width() - 1);
      out(i, j) = src(si, sj);
    }
  }
  return out;
}

}  // namespace hifst
