#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "hifst/focus.hpp"
#include "hifst/preproc.hpp"
#include "support/testutil.hpp"

using namespace hifst;
using namespace hifst::testing;

namespace {

BlurMap as_map(GrayImage img) {
  return BlurMap{std::move(img), PipelineConfig{}};
}

int count_ones(const GrayImage& f) {
  int n = 0;
  for (double v : f.data()) {
    if (v == 1.0) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("constant blur map yields an empty focus map") {
  GrayImage f = focus_points(as_map(GrayImage(32, 32, 0.6)), FocusParams{});
  for (double v : f.data()) CHECK(v == 0.0);
}

TEST_CASE("any non-constant map produces at least one focus pixel") {
  GrayImage d(40, 40, 0.1);
  d(20, 20) = 0.8;
  d(20, 21) = 0.7;
  GrayImage f = focus_points(as_map(d), FocusParams{});
  CHECK(count_ones(f) >= 1);
  for (double v : f.data()) CHECK((v == 0.0 || v == 1.0));
}

TEST_CASE("focus pixel count is non-increasing in the threshold") {
  GrayImage d = normalize01(random_image(48, 48, 2718));
  int prev = d.pixel_count() + 1;
  for (double th : {0.90, 0.95, 0.98, 1.0}) {
    GrayImage f = focus_points(as_map(d), FocusParams{th, 5.0});
    const int n = count_ones(f);
    CHECK(n <= prev);
    prev = n;
  }
}

TEST_CASE("dof_estimate is the lower median") {
  SUBCASE("all zeros") {
    CHECK(dof_estimate(as_map(GrayImage(6, 6, 0.0))) == 0.0);
  }
  SUBCASE("odd count with one extra zero") {
    GrayImage d(1, 5);
    d(0, 0) = 0.0;
    d(0, 1) = 0.0;
    d(0, 2) = 0.0;
    d(0, 3) = 1.0;
    d(0, 4) = 1.0;
    CHECK(dof_estimate(as_map(d)) == 0.0);
  }
  SUBCASE("even count takes the lower middle value") {
    GrayImage d(1, 4);
    d(0, 0) = 0.1;
    d(0, 1) = 0.2;
    d(0, 2) = 0.3;
    d(0, 3) = 0.4;
    CHECK(dof_estimate(as_map(d)) == 0.2);
  }
}

TEST_CASE("dof_estimate is monotone under pointwise domination") {
  GrayImage a = normalize01(random_image(10, 10, 4));
  GrayImage b = a;
  for (double& v : b.data()) v *= 0.7;  // b <= a everywhere
  CHECK(dof_estimate(as_map(b)) <= dof_estimate(as_map(a)));
}

TEST_CASE("magnify_blur identity cases") {
  GrayImage img = random_image(24, 24, 12);
  SUBCASE("zero strength") {
    GrayImage out = magnify_blur(img, as_map(GrayImage(24, 24, 0.3)), 0.0);
    CHECK(max_abs_diff(out, img) == 0.0);
  }
  SUBCASE("fully sharp map") {
    GrayImage out = magnify_blur(img, as_map(GrayImage(24, 24, 1.0)), 3.0);
    CHECK(max_abs_diff(out, img) == 0.0);
  }
}

TEST_CASE("fully blurred map reproduces a uniform gaussian blur") {
  GrayImage img = random_image(32, 32, 2025);
  const double strength = 2.5;
  GrayImage out = magnify_blur(img, as_map(GrayImage(32, 32, 0.0)), strength);
  const int radius = static_cast<int>(std::ceil(3.0 * strength));
  GrayImage reference = gaussian_filter(img, GaussianParams{strength, radius});
  CHECK(max_abs_diff(out, reference) <= 1e-3);
}

TEST_CASE("uniform-map magnification never increases total variation") {
  GrayImage img = random_image(20, 20, 99);
  GrayImage out = magnify_blur(img, as_map(GrayImage(20, 20, 0.5)), 2.0);
  auto tv = [](const GrayImage& x) {
    double acc = 0.0;
    for (int i = 0; i < x.height(); ++i) {
      for (int j = 1; j < x.width(); ++j) acc += std::abs(x(i, j) - x(i, j - 1));
    }
    for (int i = 1; i < x.height(); ++i) {
      for (int j = 0; j < x.width(); ++j) acc += std::abs(x(i, j) - x(i - 1, j));
    }
    return acc;
  };
  CHECK(tv(out) <= tv(img) + 1e-6);
}

TEST_CASE("focus and magnify parameter validation") {
  CHECK_THROWS_AS(focus_points(as_map(GrayImage(4, 4)), FocusParams{0.0, 5.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(focus_points(as_map(GrayImage(4, 4)), FocusParams{0.5, 0.0}),
                  std::invalid_argument);
  GrayImage img(4, 4);
  CHECK_THROWS_AS(magnify_blur(img, as_map(GrayImage(4, 4)), -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(magnify_blur(img, as_map(GrayImage(4, 5)), 1.0),
                  std::invalid_argument);
}
