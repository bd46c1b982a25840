#include "hifst/postproc.hpp"

#include <cmath>
#include <stdexcept>

#include "hifst/parallel.hpp"

namespace hifst {

void SmoothParams::validate() const {
  if (!(sigma_s > 0.0)) throw std::invalid_argument("sigma_s must be > 0");
  if (!(sigma_r > 0.0)) throw std::invalid_argument("sigma_r must be > 0");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
}

GrayImage domain_transform_smooth(const GrayImage& map, const GrayImage& guide,
                                  const SmoothParams& params, int threads) {
  params.validate();
  if (!map.same_size(guide)) {
    throw std::invalid_argument("map and guide dimensions must match");
  }
  const int h = map.height();
  const int w = map.width();
  const double ratio = params.sigma_s / params.sigma_r;

  // Transformed-domain distances between horizontal / vertical neighbors.
  // dh(i,j) is the distance between (i,j-1) and (i,j); dv between rows.
  GrayImage dh(h, w, 0.0);
  GrayImage dv(h, w, 0.0);
  for (int i = 0; i < h; ++i) {
    for (int j = 1; j < w; ++j) {
      dh(i, j) = 1.0 + ratio * std::abs(guide(i, j) - guide(i, j - 1));
    }
  }
  for (int i = 1; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      dv(i, j) = 1.0 + ratio * std::abs(guide(i, j) - guide(i - 1, j));
    }
  }

  GrayImage out = map;
  const int iters = params.iterations;
  GrayImage vh(h, w);
  GrayImage vv(h, w);
  for (int it = 0; it < iters; ++it) {
    const double sigma_h = params.sigma_s * std::sqrt(3.0) *
                           std::pow(2.0, iters - (it + 1)) /
                           std::sqrt(std::pow(4.0, iters) - 1.0);
    const double log_a = -std::sqrt(2.0) / sigma_h;

    parallel_chunks(0, h, threads, [&](int lo, int hi) {
      for (int i = lo; i < hi; ++i) {
        for (int j = 1; j < w; ++j) vh(i, j) = std::exp(log_a * dh(i, j));
      }
    });
    parallel_chunks(0, h, threads, [&](int lo, int hi) {
      for (int i = std::max(lo, 1); i < hi; ++i) {
        for (int j = 0; j < w; ++j) vv(i, j) = std::exp(log_a * dv(i, j));
      }
    });

    // Horizontal: causal then anti-causal recursion along each row.
    parallel_chunks(0, h, threads, [&](int lo, int hi) {
      for (int i = lo; i < hi; ++i) {
        auto row = out.row(i);
        for (int j = 1; j < w; ++j) {
          row[j] += vh(i, j) * (row[j - 1] - row[j]);
        }
        for (int j = w - 2; j >= 0; --j) {
          row[j] += vh(i, j + 1) * (row[j + 1] - row[j]);
        }
      }
    });

    // Vertical: same recursion along each column.
    parallel_chunks(0, w, threads, [&](int lo, int hi) {
      for (int j = lo; j < hi; ++j) {
        for (int i = 1; i < h; ++i) {
          out(i, j) += vv(i, j) * (out(i - 1, j) - out(i, j));
        }
        for (int i = h - 2; i >= 0; --i) {
          out(i, j) += vv(i + 1, j) * (out(i + 1, j) - out(i, j));
        }
      }
    });
  }
  return out;
}

BlurMap normalize_map(const GrayImage& map, const PipelineConfig& params) {
  if (!all_finite(map)) {
    throw std::invalid_argument("normalize_map requires finite values");
  }
  return BlurMap{normalize01(map), params};
}

}  // namespace hifst
