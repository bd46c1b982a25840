#include "hifst/sliding_dct.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hifst/parallel.hpp"

namespace hifst {

int ScaleSet::layer_budget() const {
  int s = 0;
  for (int m : sizes) s += m;
  return s;
}

std::size_t ScaleSet::fused_length() const {
  std::size_t n = 0;
  for (int m : sizes) n += high_freq_count(m);
  return n;
}

void ScaleSet::validate() const {
  if (sizes.empty()) throw std::invalid_argument("scale set must be non-empty");
  int prev = 0;
  for (int m : sizes) {
    if (m < 3 || m % 2 == 0) {
      throw std::invalid_argument("patch sizes must be odd and >= 3");
    }
    if (m <= prev) {
      throw std::invalid_argument("patch sizes must be strictly increasing");
    }
    prev = m;
  }
}

std::vector<double> dct_basis(int m) {
  if (m < 1) throw std::invalid_argument("dct size must be >= 1");
  std::vector<double> basis(static_cast<std::size_t>(m) * m);
  const double a0 = std::sqrt(1.0 / m);
  const double ak = std::sqrt(2.0 / m);
  for (int k = 0; k < m; ++k) {
    const double amp = k == 0 ? a0 : ak;
    for (int x = 0; x < m; ++x) {
      basis[static_cast<std::size_t>(k) * m + x] =
          amp * std::cos(std::numbers::pi * (2 * x + 1) * k / (2.0 * m));
    }
  }
  return basis;
}

void dct2(std::span<const double> patch, int m, std::span<double> coeffs) {
  const std::size_t n = static_cast<std::size_t>(m) * m;
  if (patch.size() != n || coeffs.size() != n) {
    throw std::invalid_argument("dct2 buffer sizes must be m*m");
  }
  const std::vector<double> basis = dct_basis(m);
  // rows first: W[u][y] = sum_x B[u][x] * P[x][y]
  std::vector<double> w(n, 0.0);
  for (int u = 0; u < m; ++u) {
    for (int x = 0; x < m; ++x) {
      const double c = basis[static_cast<std::size_t>(u) * m + x];
      for (int y = 0; y < m; ++y) {
        w[static_cast<std::size_t>(u) * m + y] +=
            c * patch[static_cast<std::size_t>(x) * m + y];
      }
    }
  }
  // then columns: C[u][v] = sum_y W[u][y] * B[v][y]
  for (int u = 0; u < m; ++u) {
    for (int v = 0; v < m; ++v) {
      double acc = 0.0;
      for (int y = 0; y < m; ++y) {
        acc += w[static_cast<std::size_t>(u) * m + y] *
               basis[static_cast<std::size_t>(v) * m + y];
      }
      coeffs[static_cast<std::size_t>(u) * m + v] = acc;
    }
  }
}

std::size_t high_freq_count(int m) {
  return (static_cast<std::size_t>(m) * m + m) / 2;
}

std::vector<std::pair<int, int>> high_freq_indices(int m) {
  if (m < 1) throw std::invalid_argument("dct size must be >= 1");
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(high_freq_count(m));
  for (int u = 0; u < m; ++u) {
    for (int v = 0; v < m; ++v) {
      if (u + v >= m - 1) pairs.emplace_back(u, v);
    }
  }
  return pairs;
}

HfPatchVector hf_magnitudes_at(const GrayImage& g, int i, int j, int m) {
  if (m < 1 || m % 2 == 0) throw std::invalid_argument("patch size must be odd");
  if (i < 0 || i >= g.height() || j < 0 || j >= g.width()) {
    throw std::invalid_argument("pixel outside image");
  }
  const int h = m / 2;
  std::vector<double> patch(static_cast<std::size_t>(m) * m);
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      patch[static_cast<std::size_t>(x) * m + y] =
          g.at_clamped(i + x - h, j + y - h);
    }
  }
  std::vector<double> coeffs(patch.size());
  dct2(patch, m, coeffs);

  HfPatchVector out;
  out.scale = m;
  out.values.reserve(high_freq_count(m));
  for (auto [u, v] : high_freq_indices(m)) {
    out.values.push_back(std::abs(coeffs[static_cast<std::size_t>(u) * m + v]));
  }
  return out;
}

HfPatchVector HfPlaneStack::at(int i, int j) const {
  HfPatchVector out;
  out.scale = scale;
  out.values.reserve(planes.size());
  for (const GrayImage& p : planes) out.values.push_back(p(i, j));
  return out;
}

int grid_extent(int extent, int stride) {
  return (extent + stride - 1) / stride;
}

void hf_plane_band(const GrayImage& g, int m, int stride, int grow0, int grow1,
                   const HfRowSink& sink) {
  if (m < 1 || m % 2 == 0) throw std::invalid_argument("patch size must be odd");
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  const int n1 = g.height();
  const int n2 = g.width();
  const int gw = grid_extent(n2, stride);
  const int half = m / 2;
  if (grow0 < 0 || grow1 > grid_extent(n1, stride) || grow0 >= grow1) {
    throw std::invalid_argument("bad grid row band");
  }

  const std::vector<double> basis = dct_basis(m);

  // Row pass: R[v][t][gj] = sum_y b_v(y) * G(row_t, gj*stride + y - half),
  // where row_t spans the band's image rows plus a half-patch halo on each
  // side, replicate-clamped.
  const int row_lo = grow0 * stride - half;
  const int rows_needed = (grow1 - 1 - grow0) * stride + 2 * half + 1;
  std::vector<double> rowpass(static_cast<std::size_t>(m) * rows_needed * gw);
  std::vector<double> padded(static_cast<std::size_t>(n2) + m - 1);
  const auto rp = [&](int v, int t) {
    return rowpass.data() +
           (static_cast<std::size_t>(v) * rows_needed + t) * gw;
  };

  for (int t = 0; t < rows_needed; ++t) {
    int ir = row_lo + t;
    if (ir < 0) ir = 0;
    if (ir >= n1) ir = n1 - 1;
    for (int x = 0; x < static_cast<int>(padded.size()); ++x) {
      padded[x] = g.at_clamped(ir, x - half);
    }
    if (stride == 1) {
      for (int v = 0; v < m; ++v) {
        double* dst = rp(v, t);
        std::fill(dst, dst + gw, 0.0);
        const double* b = basis.data() + static_cast<std::size_t>(v) * m;
        for (int y = 0; y < m; ++y) {
          const double c = b[y];
          const double* src = padded.data() + y;
          for (int j = 0; j < gw; ++j) dst[j] += c * src[j];
        }
      }
    } else {
      for (int v = 0; v < m; ++v) {
        double* dst = rp(v, t);
        const double* b = basis.data() + static_cast<std::size_t>(v) * m;
        for (int gj = 0; gj < gw; ++gj) {
          const double* src = padded.data() + gj * stride;
          double acc = 0.0;
          for (int y = 0; y < m; ++y) acc += b[y] * src[y];
          dst[gj] = acc;
        }
      }
    }
  }

  // Column pass, shared row-pass planes: for pair (u, v) the coefficient row
  // at grid row gi is sum_x b_u(x) * R[v][(gi-grow0)*stride + x][:].
  const auto pairs = high_freq_indices(m);
  std::vector<double> acc(gw);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [u, v] = pairs[k];
    const double* bu = basis.data() + static_cast<std::size_t>(u) * m;
    for (int gi = grow0; gi < grow1; ++gi) {
      std::fill(acc.begin(), acc.end(), 0.0);
      const int t0 = (gi - grow0) * stride;
      for (int x = 0; x < m; ++x) {
        const double c = bu[x];
        const double* src = rp(v, t0 + x);
        for (int j = 0; j < gw; ++j) acc[j] += c * src[j];
      }
      for (int j = 0; j < gw; ++j) acc[j] = std::abs(acc[j]);
      sink(static_cast<int>(k), gi, std::span<const double>(acc.data(), gw));
    }
  }
}

HfPlaneStack hf_magnitudes_plane(const GrayImage& g, int m, int threads) {
  HfPlaneStack stack;
  stack.scale = m;
  stack.planes.assign(high_freq_count(m), GrayImage(g.height(), g.width()));

  parallel_chunks(0, g.height(), threads, [&](int lo, int hi) {
    hf_plane_band(g, m, 1, lo, hi,
                  [&](int pair, int row, std::span<const double> vals) {
                    std::copy(vals.begin(), vals.end(),
                              stack.planes[pair].row(row).begin());
                  });
  });
  return stack;
}

}  // namespace hifst
