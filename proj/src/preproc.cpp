#include "hifst/preproc.hpp"

#include <cmath>
#include <stdexcept>

#include "hifst/parallel.hpp"

namespace hifst {

void GaussianParams::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian sigma must be > 0");
  if (radius < 1) throw std::invalid_argument("gaussian radius must be >= 1");
}

std::vector<double> gaussian_kernel(const GaussianParams& params) {
  params.validate();
  std::vector<double> w(2 * params.radius + 1);
  double sum = 0.0;
  for (int t = -params.radius; t <= params.radius; ++t) {
    double v = std::exp(-(static_cast<double>(t) * t) /
                        (2.0 * params.sigma * params.sigma));
    w[t + params.radius] = v;
    sum += v;
  }
  for (double& v : w) v /= sum;
  return w;
}

GrayImage gaussian_filter(const GrayImage& img, const GaussianParams& params,
                          int threads) {
  const std::vector<double> w = gaussian_kernel(params);
  const int r = params.radius;
  const int h = img.height();
  const int width = img.width();

  // Horizontal pass then vertical pass; the sampled 2-D kernel is exactly
  // the outer product of the normalized 1-D kernel with itself.
  GrayImage tmp(h, width);
  parallel_chunks(0, h, threads, [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      for (int j = 0; j < width; ++j) {
        double acc = 0.0;
        for (int t = -r; t <= r; ++t) {
          acc += w[t + r] * img.at_clamped(i, j + t);
        }
        tmp(i, j) = acc;
      }
    }
  });

  GrayImage out(h, width);
  parallel_chunks(0, h, threads, [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      for (int j = 0; j < width; ++j) {
        double acc = 0.0;
        for (int t = -r; t <= r; ++t) {
          acc += w[t + r] * tmp.at_clamped(i + t, j);
        }
        out(i, j) = acc;
      }
    }
  });
  return out;
}

GrayImage gradient_magnitude(const GrayImage& img, int threads) {
  const int h = img.height();
  const int w = img.width();
  GrayImage out(h, w);
  parallel_chunks(0, h, threads, [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      for (int j = 0; j < w; ++j) {
        const double p00 = img(i, j);
        const double p01 = img.at_clamped(i, j + 1);
        const double p10 = img.at_clamped(i + 1, j);
        const double p11 = img.at_clamped(i + 1, j + 1);
        const double dx = p00 - p11;
        const double dy = p01 - p10;
        out(i, j) = std::sqrt(dx * dx + dy * dy);
      }
    }
  });
  return out;
}

}  // namespace hifst
