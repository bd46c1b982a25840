#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace hifst {

// Row-major single-channel raster of double-precision values. This is the
// carrier type for every stage of the pipeline: luminance images, gradient
// magnitudes, pooled layers, entropy maps, and blur maps. Instances are
// treated as immutable once constructed and are safe to share read-only
// across worker threads.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int height, int width, double fill = 0.0);
  GrayImage(int height, int width, std::vector<double> data);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
  }
  bool empty() const { return data_.empty(); }

  double operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * width_ + j];
  }
  double& operator()(int i, int j) {
    return data_[static_cast<std::size_t>(i) * width_ + j];
  }

  // Replicate-padded access: out-of-range indices clamp to the border pixel.
  double at_clamped(int i, int j) const {
    if (i < 0) i = 0;
    if (i >= height_) i = height_ - 1;
    if (j < 0) j = 0;
    if (j >= width_) j = width_ - 1;
    return (*this)(i, j);
  }

  std::span<const double> row(int i) const {
    return {data_.data() + static_cast<std::size_t>(i) * width_,
            static_cast<std::size_t>(width_)};
  }
  std::span<double> row(int i) {
    return {data_.data() + static_cast<std::size_t>(i) * width_,
            static_cast<std::size_t>(width_)};
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool same_size(const GrayImage& other) const {
    return height_ == other.height_ && width_ == other.width_;
  }

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

// (min, max) over all pixels.
std::pair<double, double> value_range(const GrayImage& img);

bool all_finite(const GrayImage& img);

// Min-max rescale to [0,1]; a constant image maps to all zeros.
GrayImage normalize01(const GrayImage& img);

// Nearest-neighbor expansion of a stride-decimated grid back to full
// resolution: out(i,j) = src(i/stride, j/stride).
GrayImage upsample_nearest(const GrayImage& src, int height, int width,
                           int stride);

}  // namespace hifst
