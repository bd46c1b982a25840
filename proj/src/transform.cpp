#include "hifst/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hifst/parallel.hpp"

namespace hifst {

void EntropyParams::validate() const {
  if (window < 3 || window % 2 == 0) {
    throw std::invalid_argument("entropy window must be odd and >= 3");
  }
  if (bins < 2) throw std::invalid_argument("entropy bins must be >= 2");
}

FusedStack fuse_and_sort(const GrayImage& g, const ScaleSet& scales,
                         int stride, int threads) {
  scales.validate();
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  const int gh = grid_extent(g.height(), stride);
  const int gw = grid_extent(g.width(), stride);
  const int s = scales.layer_budget();

  FusedStack stack;
  stack.height = gh;
  stack.width = gw;
  stack.layers = s;
  stack.values.assign(static_cast<std::size_t>(gh) * gw * s, 0.0);
  std::vector<int> counts(static_cast<std::size_t>(gh) * gw, 0);
  // Current heap maximum per pixel, kept in a compact array: most candidate
  // values are rejected against it without touching the heap slab at all.
  std::vector<double> bounds(static_cast<std::size_t>(gh) * gw,
                             std::numeric_limits<double>::infinity());

  // Each pixel keeps its S smallest magnitudes in a max-heap carved out of
  // the flat value buffer. The kept multiset is the same whatever order the
  // scales and planes arrive in, so banding is free to differ per scale.
  auto push_value = [&](std::size_t p, double v) {
    if (v >= bounds[p]) return;
    double* heap = stack.values.data() + p * s;
    int& n = counts[p];
    if (n < s) {
      heap[n++] = v;
      std::push_heap(heap, heap + n);
      if (n == s) bounds[p] = heap[0];
    } else {
      std::pop_heap(heap, heap + s);
      heap[s - 1] = v;
      std::push_heap(heap, heap + s);
      bounds[p] = heap[0];
    }
  };

  for (int m : scales.sizes) {
    parallel_chunks(0, gh, threads, [&](int lo, int hi) {
      hf_plane_band(g, m, stride, lo, hi,
                    [&](int, int gi, std::span<const double> vals) {
                      const std::size_t base =
                          static_cast<std::size_t>(gi) * gw;
                      for (int gj = 0; gj < gw; ++gj) {
                        push_value(base + gj, vals[gj]);
                      }
                    });
    });
  }

  parallel_chunks(0, gh, threads, [&](int lo, int hi) {
    for (int gi = lo; gi < hi; ++gi) {
      for (int gj = 0; gj < gw; ++gj) {
        double* heap =
            stack.values.data() + (static_cast<std::size_t>(gi) * gw + gj) * s;
        std::sort(heap, heap + s);
      }
    }
  });
  return stack;
}

std::pair<FusedStack, LayerStats> layer_normalize(FusedStack stack) {
  const int s = stack.layers;
  LayerStats stats;
  stats.min_value.assign(s, std::numeric_limits<double>::infinity());
  stats.max_value.assign(s, -std::numeric_limits<double>::infinity());

  const std::size_t pixels =
      static_cast<std::size_t>(stack.height) * stack.width;
  for (std::size_t p = 0; p < pixels; ++p) {
    const double* v = stack.values.data() + p * s;
    for (int t = 0; t < s; ++t) {
      if (v[t] < stats.min_value[t]) stats.min_value[t] = v[t];
      if (v[t] > stats.max_value[t]) stats.max_value[t] = v[t];
    }
  }

  std::vector<double> scale(s);
  for (int t = 0; t < s; ++t) {
    const double range = stats.max_value[t] - stats.min_value[t];
    scale[t] = range > 0.0 ? 1.0 / range : 0.0;  // degenerate layer -> zeros
  }
  for (std::size_t p = 0; p < pixels; ++p) {
    double* v = stack.values.data() + p * s;
    for (int t = 0; t < s; ++t) {
      v[t] = (v[t] - stats.min_value[t]) * scale[t];
    }
  }
  return {std::move(stack), std::move(stats)};
}

GrayImage max_pool(const FusedStack& stack) {
  GrayImage out(stack.height, stack.width);
  const std::size_t pixels =
      static_cast<std::size_t>(stack.height) * stack.width;
  for (std::size_t p = 0; p < pixels; ++p) {
    const double* v = stack.values.data() + p * stack.layers;
    double best = v[0];
    for (int t = 1; t < stack.layers; ++t) best = std::max(best, v[t]);
    out.data()[p] = best;
  }
  return out;
}

GrayImage local_entropy(const GrayImage& t, const EntropyParams& params,
                        int threads) {
  params.validate();
  const int k = params.window;
  const int bins = params.bins;
  const int half = k / 2;
  const int h = t.height();
  const int w = t.width();
  const int samples = k * k;

  // p*log2(p) lookup for window counts 0..k^2; replicate padding keeps the
  // window population constant.
  std::vector<double> plogp(samples + 1, 0.0);
  for (int c = 1; c <= samples; ++c) {
    const double p = static_cast<double>(c) / samples;
    plogp[c] = p * std::log2(p);
  }

  GrayImage out(h, w);
  parallel_chunks(0, h, threads, [&](int lo, int hi) {
    std::vector<int> hist(bins, 0);
    std::vector<int> touched(samples);
    for (int i = lo; i < hi; ++i) {
      for (int j = 0; j < w; ++j) {
        int n_touched = 0;
        for (int di = -half; di <= half; ++di) {
          for (int dj = -half; dj <= half; ++dj) {
            double v = t.at_clamped(i + di, j + dj);
            int b = static_cast<int>(v * bins);
            if (b >= bins) b = bins - 1;  // v == 1 falls in the last bin
            if (b < 0) b = 0;
            if (hist[b]++ == 0) touched[n_touched++] = b;
          }
        }
        double entropy = 0.0;
        for (int c = 0; c < n_touched; ++c) {
          const int b = touched[c];
          entropy -= plogp[hist[b]];
          hist[b] = 0;  // leave the histogram clean for the next pixel
        }
        out(i, j) = entropy;
      }
    }
  });
  return out;
}

GrayImage weight_map(const GrayImage& t, const GrayImage& w) {
  if (!t.same_size(w)) {
    throw std::invalid_argument("weight_map requires equal dimensions");
  }
  GrayImage out(t.height(), t.width());
  for (std::size_t p = 0; p < t.pixel_count(); ++p) {
    out.data()[p] = t.data()[p] * w.data()[p];
  }
  return out;
}

}  // namespace hifst
