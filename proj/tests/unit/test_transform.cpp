#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>

#include "hifst/preproc.hpp"
#include "hifst/transform.hpp"
#include "support/oracle.hpp"
#include "support/testutil.hpp"

using namespace hifst;
using namespace hifst::testing;

TEST_CASE("fuse_and_sort matches the full-sort-then-truncate oracle") {
  GrayImage img = random_image(16, 16, 314);
  ScaleSet scales{{7, 15}};
  FusedStack stack = fuse_and_sort(img, scales);
  REQUIRE(stack.layers == 22);

  // Same-values oracle: the optimized planes, concatenated and fully sorted.
  // Selection must agree exactly, not just to tolerance.
  HfPlaneStack p7 = hf_magnitudes_plane(img, 7);
  HfPlaneStack p15 = hf_magnitudes_plane(img, 15);
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      std::vector<double> fused = p7.at(i, j).values;
      auto v15 = p15.at(i, j).values;
      fused.insert(fused.end(), v15.begin(), v15.end());
      std::sort(fused.begin(), fused.end());
      auto got = stack.pixel(i, j);
      for (int t = 0; t < stack.layers; ++t) {
        CHECK(got[t] == fused[t]);
      }
    }
  }

  // Independent naive oracle, to floating-point tolerance.
  for (int i : {0, 7, 15}) {
    for (int j : {0, 8, 15}) {
      auto naive = oracle_fused_sorted_at(img, scales, i, j, stack.layers);
      auto got = stack.pixel(i, j);
      for (int t = 0; t < stack.layers; ++t) {
        CHECK(got[t] == doctest::Approx(naive[t]).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("fused stack of a constant image is all zeros") {
  GrayImage img(10, 10, 0.4);
  FusedStack stack = fuse_and_sort(img, ScaleSet{{3, 5}});
  for (double v : stack.values) CHECK(v < 1e-12);
}

TEST_CASE("fused layers are non-decreasing in t") {
  GrayImage img = random_image(12, 14, 2024);
  FusedStack stack = fuse_and_sort(img, ScaleSet{{3, 7}});
  for (int i = 0; i < stack.height; ++i) {
    for (int j = 0; j < stack.width; ++j) {
      auto px = stack.pixel(i, j);
      for (int t = 1; t < stack.layers; ++t) {
        CHECK(px[t] >= px[t - 1]);
      }
    }
  }
}

TEST_CASE("stride-decimated fusion equals the full stack subsampled") {
  GrayImage img = random_image(15, 13, 77);
  ScaleSet scales{{3, 5}};
  FusedStack full = fuse_and_sort(img, scales, 1);
  FusedStack dec = fuse_and_sort(img, scales, 2);
  REQUIRE(dec.height == 8);
  REQUIRE(dec.width == 7);
  for (int gi = 0; gi < dec.height; ++gi) {
    for (int gj = 0; gj < dec.width; ++gj) {
      auto a = dec.pixel(gi, gj);
      auto b = full.pixel(gi * 2, gj * 2);
      for (int t = 0; t < dec.layers; ++t) CHECK(a[t] == b[t]);
    }
  }
}

TEST_CASE("fusion is bit-identical across worker counts") {
  GrayImage img = random_image(18, 12, 5150);
  FusedStack one = fuse_and_sort(img, ScaleSet{{3, 7}}, 1, 1);
  FusedStack three = fuse_and_sort(img, ScaleSet{{3, 7}}, 1, 3);
  REQUIRE(one.values.size() == three.values.size());
  for (std::size_t k = 0; k < one.values.size(); ++k) {
    CHECK(one.values[k] == three.values[k]);
  }
}

TEST_CASE("layer_normalize maps {2,4,6} to {0, 0.5, 1}") {
  FusedStack stack;
  stack.height = 1;
  stack.width = 3;
  stack.layers = 1;
  stack.values = {2.0, 4.0, 6.0};
  auto [normalized, stats] = layer_normalize(std::move(stack));
  CHECK(normalized.values[0] == doctest::Approx(0.0));
  CHECK(normalized.values[1] == doctest::Approx(0.5));
  CHECK(normalized.values[2] == doctest::Approx(1.0));
  CHECK(stats.min_value[0] == 2.0);
  CHECK(stats.max_value[0] == 6.0);
}

TEST_CASE("normalized layers lie in [0,1] and attain both extremes") {
  GrayImage img = random_image(14, 14, 808);
  auto [normalized, stats] =
      layer_normalize(fuse_and_sort(img, ScaleSet{{3, 5}}));
  for (int t = 0; t < normalized.layers; ++t) {
    double lo = 2.0, hi = -1.0;
    for (int i = 0; i < normalized.height; ++i) {
      for (int j = 0; j < normalized.width; ++j) {
        const double v = normalized.at(i, j, t);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    if (stats.max_value[t] > stats.min_value[t]) {
      CHECK(lo == doctest::Approx(0.0));
      CHECK(hi == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("degenerate layers normalize to zero") {
  GrayImage img(8, 8, 0.25);
  auto [normalized, stats] = layer_normalize(fuse_and_sort(img, ScaleSet{{3}}));
  for (double v : normalized.values) CHECK(v == 0.0);
}

TEST_CASE("max_pool takes the per-pixel layer maximum") {
  FusedStack stack;
  stack.height = 1;
  stack.width = 2;
  stack.layers = 3;
  stack.values = {0.1, 0.2, 0.9, 0.5, 0.4, 0.3};
  GrayImage t = max_pool(stack);
  CHECK(t(0, 0) == 0.9);
  CHECK(t(0, 1) == 0.5);

  FusedStack zeros;
  zeros.height = 2;
  zeros.width = 2;
  zeros.layers = 2;
  zeros.values.assign(8, 0.0);
  GrayImage tz = max_pool(zeros);
  for (double v : tz.data()) CHECK(v == 0.0);
}

TEST_CASE("pooled map is invariant under global image scaling") {
  GrayImage img = random_image(16, 16, 3141);
  ScaleSet scales{{7, 15}};
  auto t_of = [&](const GrayImage& g) {
    auto [n, st] = layer_normalize(fuse_and_sort(g, scales));
    return max_pool(n);
  };
  GrayImage t1 = t_of(img);
  GrayImage scaled = img;
  for (double& v : scaled.data()) v *= 37.5;
  GrayImage t2 = t_of(scaled);
  CHECK(max_abs_diff(t1, t2) <= 1e-8);
}

TEST_CASE("local entropy of a constant map is zero") {
  GrayImage t(9, 9, 0.7);
  GrayImage w = local_entropy(t, EntropyParams{});
  for (double v : w.data()) CHECK(v == 0.0);
}

TEST_CASE("49 distinct bins in a 7x7 window give entropy log2(49)") {
  GrayImage t(7, 7);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      t(i, j) = (static_cast<double>(i * 7 + j) + 0.5) / 256.0;
    }
  }
  GrayImage w = local_entropy(t, EntropyParams{7, 256});
  CHECK(w(3, 3) == doctest::Approx(std::log2(49.0)).epsilon(1e-12));
}

TEST_CASE("entropy respects the max-entropy bound and matches the oracle") {
  GrayImage t = normalize01(random_image(13, 11, 46));
  for (auto [k, bins] : {std::pair{7, 256}, std::pair{3, 4}, std::pair{5, 16}}) {
    GrayImage w = local_entropy(t, EntropyParams{k, bins});
    const double bound = std::log2(std::min(static_cast<double>(k) * k,
                                            static_cast<double>(bins)));
    for (int i = 0; i < t.height(); ++i) {
      for (int j = 0; j < t.width(); ++j) {
        CHECK(w(i, j) >= 0.0);
        CHECK(w(i, j) <= bound + 1e-12);
        CHECK(w(i, j) ==
              doctest::Approx(oracle_entropy_at(t, i, j, k, bins)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("weight_map is the pointwise product") {
  GrayImage t(2, 2);
  t(0, 0) = 0.5;
  t(0, 1) = 0.0;
  t(1, 0) = 1.0;
  t(1, 1) = 0.25;
  GrayImage w(2, 2, 2.0);
  GrayImage d = weight_map(t, w);
  CHECK(d(0, 0) == 1.0);
  CHECK(d(0, 1) == 0.0);  // absorbing zero regardless of the weight
  CHECK(d(1, 0) == 2.0);
  CHECK(d(1, 1) == 0.5);

  GrayImage zeros(2, 2, 0.0);
  GrayImage dz = weight_map(t, zeros);
  for (double v : dz.data()) CHECK(v == 0.0);

  CHECK_THROWS_AS(weight_map(t, GrayImage(3, 2)), std::invalid_argument);
}

TEST_CASE("pooled map separates sharp noise from blurred noise") {
  // Left half: white noise. Right half: the same noise heavily blurred.
  const int n = 40;
  GrayImage noise = random_image(n, n, 1612);
  GrayImage blurred = gaussian_filter(noise, GaussianParams{2.0, 6});
  GrayImage img(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      img(i, j) = j < n / 2 ? noise(i, j) : blurred(i, j);
    }
  }
  GrayImage g = gradient_magnitude(gaussian_filter(img, GaussianParams{}));
  auto [normalized, stats] = layer_normalize(fuse_and_sort(g, ScaleSet{{7, 15}}));
  GrayImage t = max_pool(normalized);

  double sharp_mean = 0.0, blur_mean = 0.0;
  int sharp_n = 0, blur_n = 0;
  for (int i = 8; i < n - 8; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j >= 8 && j < n / 2 - 8) {
        sharp_mean += t(i, j);
        ++sharp_n;
      } else if (j >= n / 2 + 8 && j < n - 8) {
        blur_mean += t(i, j);
        ++blur_n;
      }
    }
  }
  CHECK(sharp_mean / sharp_n > blur_mean / blur_n);
}

TEST_CASE("entropy params validate") {
  CHECK_THROWS_AS(local_entropy(GrayImage(5, 5), EntropyParams{4, 256}),
                  std::invalid_argument);
  CHECK_THROWS_AS(local_entropy(GrayImage(5, 5), EntropyParams{7, 1}),
                  std::invalid_argument);
}
