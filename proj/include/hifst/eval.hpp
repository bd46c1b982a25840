#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hifst/config.hpp"
#include "hifst/image.hpp"
#include "hifst/postproc.hpp"

namespace hifst {

// Binarizes a loaded ground-truth image at 0.5; 1 (white) = sharp.
GrayImage binarize_mask(const GrayImage& img);

struct PrPoint {
  int threshold = 0;
  double precision = 0.0;
  double recall = 0.0;
};

// One entry per threshold 0..255. Recall is non-increasing in threshold.
struct PrCurve {
  std::vector<PrPoint> entries;
};

// Confusion counts of the sharp class for every threshold tau in [0,255]:
// prediction = round(map*255) >= tau. Summable across images for
// micro-averaged aggregation.
struct ConfusionSweep {
  std::array<std::int64_t, 256> tp{};
  std::array<std::int64_t, 256> fp{};
  std::array<std::int64_t, 256> fn{};

  ConfusionSweep& operator+=(const ConfusionSweep& other);
};

ConfusionSweep confusion_sweep(const GrayImage& map, const GrayImage& gt);

// Precision/recall per threshold; 0/0 counts as 1 for both ratios.
PrCurve curve_from_counts(const ConfusionSweep& counts);

PrCurve pr_curve(const BlurMap& map, const GrayImage& gt);

// (1+beta2)*p*r / (beta2*p + r); 0 when the denominator is 0.
double f_measure(double precision, double recall, double beta2 = 1.0);

// Largest F-measure over the curve's thresholds.
double max_f_measure(const PrCurve& curve, double beta2 = 1.0);

void write_pr_csv(const PrCurve& curve, const std::string& path);

struct ImageResult {
  std::string stem;
  PrCurve curve;
};

struct DatasetResult {
  PrCurve aggregate;  // micro-averaged: summed counts across images
  std::vector<ImageResult> per_image;
  int warnings = 0;  // images skipped for missing masks
};

// Runs the detection pipeline over every image in images_dir (sorted by
// filename), pairing each with the mask of identical stem in masks_dir
// (extensions tried: png, pgm, bmp). Writes one CSV per image plus
// aggregate.csv into out_dir (skipped when out_dir is empty).
DatasetResult run_dataset(const std::string& images_dir,
                          const std::string& masks_dir,
                          const PipelineConfig& config,
                          const std::string& out_dir);

// Adds seeded zero-mean Gaussian noise of each variance (clamped to [0,1]),
// runs the full pipeline, and evaluates. One (variance, curve) per input.
std::vector<std::pair<double, PrCurve>> noise_sweep(
    const GrayImage& image, const GrayImage& gt,
    std::span<const double> variances, unsigned seed,
    const PipelineConfig& config);

// Runs the pipeline once per single-scale configuration and once multiscale.
// Labels are "M=7", ..., "multiscale".
std::vector<std::pair<std::string, PrCurve>> scale_ablation(
    const GrayImage& image, const GrayImage& gt, const ScaleSet& scales,
    const PipelineConfig& config);

}  // namespace hifst
