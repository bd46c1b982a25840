#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "hifst/image.hpp"

namespace hifst {

// The patch sizes used for multiscale fusion. Sizes must be odd (patches
// center on a pixel) and strictly increasing.
struct ScaleSet {
  std::vector<int> sizes{7, 15, 31, 63};

  static ScaleSet single(int size) { return ScaleSet{{size}}; }

  // S, the number of fused layers retained per pixel.
  int layer_budget() const;
  // Total per-pixel coefficient count before truncation.
  std::size_t fused_length() const;
  void validate() const;
};

// Orthonormal DCT-II basis, row-major: basis[k*m + x] holds
// alpha(k) * cos(pi*(2x+1)*k / (2m)) with alpha(0)=sqrt(1/m), else sqrt(2/m).
std::vector<double> dct_basis(int m);

// Orthonormal 2-D DCT-II of an m x m patch. Coefficient (0,0) of a constant
// patch with value c equals m*c.
void dct2(std::span<const double> patch, int m, std::span<double> coeffs);

// Number of high-frequency index pairs: (m^2 + m) / 2.
std::size_t high_freq_count(int m);

// Index pairs (u, v) with u+v >= m-1, in row-major order (by u, then v).
std::vector<std::pair<int, int>> high_freq_indices(int m);

// Unsorted per-patch vector of |high-frequency DCT coefficient| values, in
// high_freq_indices order.
struct HfPatchVector {
  int scale = 0;
  std::vector<double> values;
};

// Naive reference path: extract the replicate-padded m x m patch centered at
// (i, j), run a dense dct2, and sample the high-frequency magnitudes.
HfPatchVector hf_magnitudes_at(const GrayImage& g, int i, int j, int m);

// Materialized per-pixel coefficient magnitudes for one scale: one plane per
// high-frequency index pair, in high_freq_indices order. Intended for
// moderate image sizes (tests, diagnostics); the detection pipeline streams
// planes instead of materializing them.
struct HfPlaneStack {
  int scale = 0;
  std::vector<GrayImage> planes;

  HfPatchVector at(int i, int j) const;
};

// Optimized separable path over all pixels. Values match hf_magnitudes_at
// everywhere to floating-point reassociation tolerance.
HfPlaneStack hf_magnitudes_plane(const GrayImage& g, int m, int threads = 1);

// Streaming core shared by hf_magnitudes_plane and the fusion stage.
//
// Computes the |coefficient| planes of scale m over the stride-decimated
// grid (samples at pixel (gi*stride, gj*stride)), restricted to grid rows
// [grow0, grow1). Rows are emitted in order: for each index pair k
// (high_freq_indices order), for each grid row, sink(k, grid_row, values)
// with one value per grid column.
//
// Row-pass intermediates (one 1-D row correlation per basis vector) are
// computed once per band and shared across every index pair of the scale.
using HfRowSink =
    std::function<void(int pair, int grid_row, std::span<const double>)>;
void hf_plane_band(const GrayImage& g, int m, int stride, int grow0, int grow1,
                   const HfRowSink& sink);

// Grid extent of an axis decimated by `stride`: ceil(extent / stride).
int grid_extent(int extent, int stride);

}  // namespace hifst
