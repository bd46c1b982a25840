#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hifst/image.hpp"
#include "hifst/sliding_dct.hpp"

namespace hifst {

// Per-pixel truncated ascending-sorted fused high-frequency magnitudes.
// values is pixel-major: values[(i*width + j)*layers + t]. For every pixel
// the entries are non-decreasing in t, all >= 0, exactly `layers` of them.
struct FusedStack {
  int height = 0;
  int width = 0;
  int layers = 0;
  std::vector<double> values;

  std::span<const double> pixel(int i, int j) const {
    return {values.data() +
                (static_cast<std::size_t>(i) * width + j) * layers,
            static_cast<std::size_t>(layers)};
  }
  double at(int i, int j, int t) const { return pixel(i, j)[t]; }
};

// Per-layer global minima and maxima, taken over all pixels of each layer.
struct LayerStats {
  std::vector<double> min_value;
  std::vector<double> max_value;
};

// Histogram-based local Shannon entropy over a k x k window.
struct EntropyParams {
  int window = 7;
  int bins = 256;
  void validate() const;
};

// For every grid pixel, concatenates the high-frequency magnitudes of all
// scales and keeps the S = sum(M_r) smallest in ascending order, equivalent
// to fully sorting the fused vector and truncating. stride > 1 evaluates on
// the decimated grid only (preview mode; the stack then has grid dimensions).
FusedStack fuse_and_sort(const GrayImage& g, const ScaleSet& scales,
                         int stride = 1, int threads = 1);

// Min-max normalizes each layer to [0,1] using that layer's global extrema;
// degenerate layers (max == min) map to all zeros.
std::pair<FusedStack, LayerStats> layer_normalize(FusedStack stack);

// T(i,j) = max over layers of the normalized stack.
GrayImage max_pool(const FusedStack& stack);

// Local entropy of T: -sum_b p_b log2(p_b) where p_b is the fraction of the
// replicate-padded k x k window falling in histogram bin b (bins uniform
// over [0,1], last bin right-closed).
GrayImage local_entropy(const GrayImage& t, const EntropyParams& params,
                        int threads = 1);

// Hadamard product T .* w; dimensions must match.
GrayImage weight_map(const GrayImage& t, const GrayImage& w);

}  // namespace hifst
