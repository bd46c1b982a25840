#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>

#include "hifst/eval.hpp"
#include "hifst/imageio.hpp"
#include "hifst/pipeline.hpp"
#include "hifst/synthetic.hpp"
#include "support/testutil.hpp"

using namespace hifst;
using namespace hifst::testing;

namespace {

BlurMap as_map(GrayImage img) {
  return BlurMap{std::move(img), PipelineConfig{}};
}

GrayImage checker_gt(int n) {
  GrayImage gt(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) gt(i, j) = j < n / 2 ? 1.0 : 0.0;
  }
  return gt;
}

}  // namespace

TEST_CASE("a perfect detector scores 1/1 at every positive threshold") {
  GrayImage gt = checker_gt(8);
  PrCurve curve = pr_curve(as_map(gt), gt);
  REQUIRE(curve.entries.size() == 256);
  for (int tau = 1; tau <= 255; ++tau) {
    CHECK(curve.entries[tau].precision == 1.0);
    CHECK(curve.entries[tau].recall == 1.0);
  }
  // tau = 0 predicts everything sharp.
  CHECK(curve.entries[0].recall == 1.0);
  CHECK(curve.entries[0].precision == doctest::Approx(0.5));
}

TEST_CASE("an inverted detector scores 0/0 at mid threshold") {
  GrayImage gt = checker_gt(8);
  GrayImage inv = gt;
  for (double& v : inv.data()) v = 1.0 - v;
  PrCurve curve = pr_curve(as_map(inv), gt);
  CHECK(curve.entries[128].precision == 0.0);
  CHECK(curve.entries[128].recall == 0.0);
}

TEST_CASE("recall is non-increasing and TP+FN is constant across thresholds") {
  GrayImage map = normalize01(random_image(16, 16, 5));
  GrayImage gt = binarize_mask(random_image(16, 16, 6));
  ConfusionSweep sweep = confusion_sweep(map, gt);
  for (int tau = 1; tau < 256; ++tau) {
    CHECK(sweep.tp[tau] + sweep.fn[tau] == sweep.tp[0] + sweep.fn[0]);
  }
  PrCurve curve = curve_from_counts(sweep);
  for (int tau = 1; tau < 256; ++tau) {
    CHECK(curve.entries[tau].recall <= curve.entries[tau - 1].recall);
  }
}

TEST_CASE("curves depend only on the 8-bit quantized map") {
  GrayImage a(4, 4);
  for (int q = 0; q < 16; ++q) a.data()[q] = q * 17 / 255.0;
  GrayImage b = a;
  for (double& v : b.data()) v += 0.4 / 255.0;  // stays in the same bin
  GrayImage gt = binarize_mask(random_image(4, 4, 9));
  PrCurve ca = pr_curve(as_map(a), gt);
  PrCurve cb = pr_curve(as_map(b), gt);
  for (int tau = 0; tau < 256; ++tau) {
    CHECK(ca.entries[tau].precision == cb.entries[tau].precision);
    CHECK(ca.entries[tau].recall == cb.entries[tau].recall);
  }
}

TEST_CASE("f_measure") {
  CHECK(f_measure(1.0, 1.0) == doctest::Approx(1.0));
  CHECK(f_measure(1.0, 0.0) == 0.0);
  CHECK(f_measure(0.0, 0.0) == 0.0);
  CHECK(f_measure(0.5, 0.5) == doctest::Approx(0.5));
  CHECK(f_measure(0.5, 1.0, 2.0) == doctest::Approx(3.0 * 0.5 / 2.0));
}

TEST_CASE("pr_curve requires matching dimensions") {
  CHECK_THROWS_AS(confusion_sweep(GrayImage(3, 3), GrayImage(3, 4)),
                  std::invalid_argument);
}

TEST_CASE("run_dataset aggregates and writes CSVs") {
  namespace fs = std::filesystem;
  const std::string root = temp_path("dataset");
  fs::remove_all(root);
  fs::create_directories(fs::path(root) / "images");
  fs::create_directories(fs::path(root) / "masks");

  SyntheticParams sp;
  sp.count = 2;
  sp.size = 48;
  sp.blur_sigmas = {2.0};
  LabeledImage one = make_synthetic(0, sp);
  // Two identical image/mask pairs under different stems.
  for (const char* stem : {"a_pair", "b_pair"}) {
    save_map(one.image, (fs::path(root) / "images" / (std::string(stem) + ".png")).string(),
             MapFormat::Png8);
    save_map(one.mask, (fs::path(root) / "masks" / (std::string(stem) + ".png")).string(),
             MapFormat::Png8);
  }

  PipelineConfig cfg;
  cfg.scales = ScaleSet{{3, 7}};
  cfg.threads = 1;
  const std::string out = (fs::path(root) / "csv").string();
  DatasetResult result = run_dataset((fs::path(root) / "images").string(),
                                     (fs::path(root) / "masks").string(), cfg, out);
  REQUIRE(result.per_image.size() == 2);
  CHECK(result.warnings == 0);

  SUBCASE("duplicated pairs leave the aggregate equal to the individual curve") {
    for (int tau = 0; tau < 256; ++tau) {
      CHECK(result.aggregate.entries[tau].precision ==
            doctest::Approx(result.per_image[0].curve.entries[tau].precision));
      CHECK(result.aggregate.entries[tau].recall ==
            doctest::Approx(result.per_image[0].curve.entries[tau].recall));
    }
  }

  SUBCASE("per-image and aggregate CSVs exist with the fixed schema") {
    CHECK(fs::exists(fs::path(out) / "a_pair.csv"));
    CHECK(fs::exists(fs::path(out) / "b_pair.csv"));
    std::ifstream in(fs::path(out) / "aggregate.csv");
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "threshold,precision,recall,f_measure");
    int lines = 0;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) ++lines;
    }
    CHECK(lines == 256);
  }
}

TEST_CASE("run_dataset records a warning and skips images without masks") {
  namespace fs = std::filesystem;
  const std::string root = temp_path("dataset_missing");
  fs::remove_all(root);
  fs::create_directories(fs::path(root) / "images");
  fs::create_directories(fs::path(root) / "masks");

  SyntheticParams sp;
  sp.count = 1;
  sp.size = 48;
  LabeledImage one = make_synthetic(0, sp);
  save_map(one.image, (fs::path(root) / "images/with_mask.png").string(),
           MapFormat::Png8);
  save_map(one.mask, (fs::path(root) / "masks/with_mask.png").string(),
           MapFormat::Png8);
  save_map(one.image, (fs::path(root) / "images/orphan.png").string(),
           MapFormat::Png8);
  // Mask with mismatched dimensions: recorded and skipped, not fatal.
  save_map(one.image, (fs::path(root) / "images/bad_mask.png").string(),
           MapFormat::Png8);
  save_map(GrayImage(8, 8, 1.0), (fs::path(root) / "masks/bad_mask.png").string(),
           MapFormat::Png8);

  PipelineConfig cfg;
  cfg.scales = ScaleSet{{3}};
  cfg.threads = 1;
  DatasetResult result = run_dataset((fs::path(root) / "images").string(),
                                     (fs::path(root) / "masks").string(), cfg, "");
  CHECK(result.warnings == 2);
  CHECK(result.per_image.size() == 1);
  CHECK(result.per_image[0].stem == "with_mask");
}

TEST_CASE("noise_sweep determinism and zero-variance identity") {
  SyntheticParams sp;
  sp.count = 1;
  sp.size = 48;
  LabeledImage item = make_synthetic(0, sp);
  PipelineConfig cfg;
  cfg.scales = ScaleSet{{3, 7}};
  cfg.threads = 1;

  const double variances[] = {0.0, 1e-4};
  auto run1 = noise_sweep(item.image, item.mask, variances, 99, cfg);
  auto run2 = noise_sweep(item.image, item.mask, variances, 99, cfg);
  REQUIRE(run1.size() == 2);

  BlurMap clean = detect_blur_map(item.image, cfg);
  PrCurve clean_curve = pr_curve(clean, item.mask);
  for (int tau = 0; tau < 256; ++tau) {
    // variance 0 is exactly the no-noise curve
    CHECK(run1[0].second.entries[tau].precision ==
          clean_curve.entries[tau].precision);
    CHECK(run1[0].second.entries[tau].recall == clean_curve.entries[tau].recall);
    // same seed, same curves
    CHECK(run1[1].second.entries[tau].precision ==
          run2[1].second.entries[tau].precision);
    CHECK(run1[1].second.entries[tau].recall ==
          run2[1].second.entries[tau].recall);
  }
}

TEST_CASE("scale_ablation returns one curve per scale plus multiscale") {
  SyntheticParams sp;
  sp.count = 1;
  sp.size = 48;
  LabeledImage item = make_synthetic(0, sp);
  PipelineConfig cfg;
  cfg.threads = 1;
  auto curves = scale_ablation(item.image, item.mask, ScaleSet{{3, 7}}, cfg);
  REQUIRE(curves.size() == 3);
  CHECK(curves[0].first == "M=3");
  CHECK(curves[1].first == "M=7");
  CHECK(curves[2].first == "multiscale");
  for (const auto& [label, curve] : curves) {
    CHECK(curve.entries.size() == 256);
  }
}

TEST_CASE("binarize_mask thresholds at one half") {
  GrayImage raw(1, 3);
  raw(0, 0) = 0.2;
  raw(0, 1) = 0.500001;
  raw(0, 2) = 1.0;
  GrayImage mask = binarize_mask(raw);
  CHECK(mask(0, 0) == 0.0);
  CHECK(mask(0, 1) == 1.0);
  CHECK(mask(0, 2) == 1.0);
}
