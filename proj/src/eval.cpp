#include "hifst/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "hifst/imageio.hpp"
#include "hifst/pipeline.hpp"
#include "hifst/rng.hpp"

namespace hifst {
namespace {
namespace fs = std::filesystem;

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".pgm" ||
         ext == ".pfm" || ext == ".bmp";
}

}  // namespace

GrayImage binarize_mask(const GrayImage& img) {
  GrayImage out(img.height(), img.width());
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    out.data()[p] = img.data()[p] > 0.5 ? 1.0 : 0.0;
  }
  return out;
}

ConfusionSweep& ConfusionSweep::operator+=(const ConfusionSweep& other) {
  for (int t = 0; t < 256; ++t) {
    tp[t] += other.tp[t];
    fp[t] += other.fp[t];
    fn[t] += other.fn[t];
  }
  return *this;
}

ConfusionSweep confusion_sweep(const GrayImage& map, const GrayImage& gt) {
  if (!map.same_size(gt)) {
    throw std::invalid_argument("map and ground truth dimensions must match");
  }
  // Histogram the 8-bit quantized map separately over sharp / non-sharp
  // ground truth, then sweep cumulatively from the top.
  std::array<std::int64_t, 256> pos{};
  std::array<std::int64_t, 256> neg{};
  for (std::size_t p = 0; p < map.pixel_count(); ++p) {
    int q = static_cast<int>(std::llround(map.data()[p] * 255.0));
    if (q < 0) q = 0;
    if (q > 255) q = 255;
    if (gt.data()[p] > 0.5) {
      ++pos[q];
    } else {
      ++neg[q];
    }
  }
  std::int64_t total_pos = 0;
  for (auto c : pos) total_pos += c;

  ConfusionSweep out;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  for (int tau = 255; tau >= 0; --tau) {
    tp += pos[tau];
    fp += neg[tau];
    out.tp[tau] = tp;
    out.fp[tau] = fp;
    out.fn[tau] = total_pos - tp;
  }
  return out;
}

PrCurve curve_from_counts(const ConfusionSweep& counts) {
  PrCurve curve;
  curve.entries.resize(256);
  for (int tau = 0; tau < 256; ++tau) {
    const std::int64_t tp = counts.tp[tau];
    const std::int64_t fp = counts.fp[tau];
    const std::int64_t fn = counts.fn[tau];
    PrPoint& pt = curve.entries[tau];
    pt.threshold = tau;
    pt.precision = tp + fp == 0 ? 1.0 : static_cast<double>(tp) / (tp + fp);
    pt.recall = tp + fn == 0 ? 1.0 : static_cast<double>(tp) / (tp + fn);
  }
  return curve;
}

PrCurve pr_curve(const BlurMap& map, const GrayImage& gt) {
  return curve_from_counts(confusion_sweep(map.map, gt));
}

double f_measure(double precision, double recall, double beta2) {
  const double denom = beta2 * precision + recall;
  if (denom == 0.0) return 0.0;
  return (1.0 + beta2) * precision * recall / denom;
}

double max_f_measure(const PrCurve& curve, double beta2) {
  double best = 0.0;
  for (const PrPoint& pt : curve.entries) {
    best = std::max(best, f_measure(pt.precision, pt.recall, beta2));
  }
  return best;
}

void write_pr_csv(const PrCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << "threshold,precision,recall,f_measure\n";
  char line[128];
  for (const PrPoint& pt : curve.entries) {
    std::snprintf(line, sizeof(line), "%d,%.9g,%.9g,%.9g\n", pt.threshold,
                  pt.precision, pt.recall,
                  f_measure(pt.precision, pt.recall));
    out << line;
  }
  if (!out) throw io_error("write failed: " + path);
}

DatasetResult run_dataset(const std::string& images_dir,
                          const std::string& masks_dir,
                          const PipelineConfig& config,
                          const std::string& out_dir) {
  config.validate();
  if (!fs::is_directory(images_dir)) {
    throw io_error("not a directory: " + images_dir);
  }
  if (!fs::is_directory(masks_dir)) {
    throw io_error("not a directory: " + masks_dir);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(images_dir)) {
    if (entry.is_regular_file() && is_image_file(entry.path())) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());  // deterministic image order

  if (!out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
  }

  DatasetResult result;
  ConfusionSweep total;
  for (const fs::path& file : files) {
    const std::string stem = file.stem().string();
    fs::path mask_path;
    for (const char* ext : {".png", ".pgm", ".bmp"}) {
      fs::path candidate = fs::path(masks_dir) / (stem + ext);
      if (fs::exists(candidate)) {
        mask_path = candidate;
        break;
      }
    }
    if (mask_path.empty()) {
      std::fprintf(stderr, "warning: no mask for %s, skipping\n",
                   file.string().c_str());
      ++result.warnings;
      continue;
    }

    ConfusionSweep counts;
    try {
      GrayImage image = load_image(file.string());
      GrayImage gt = binarize_mask(load_image(mask_path.string()));
      BlurMap map = detect_blur_map(image, config);
      counts = confusion_sweep(map.map, gt);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "warning: skipping %s: %s\n",
                   file.string().c_str(), e.what());
      ++result.warnings;
      continue;
    }
    total += counts;

    ImageResult ir;
    ir.stem = stem;
    ir.curve = curve_from_counts(counts);
    if (!out_dir.empty()) {
      write_pr_csv(ir.curve, (fs::path(out_dir) / (stem + ".csv")).string());
    }
    result.per_image.push_back(std::move(ir));
  }

  result.aggregate = curve_from_counts(total);
  if (!out_dir.empty()) {
    write_pr_csv(result.aggregate,
                 (fs::path(out_dir) / "aggregate.csv").string());
  }
  return result;
}

std::vector<std::pair<double, PrCurve>> noise_sweep(
    const GrayImage& image, const GrayImage& gt,
    std::span<const double> variances, unsigned seed,
    const PipelineConfig& config) {
  std::vector<std::pair<double, PrCurve>> out;
  out.reserve(variances.size());
  for (double variance : variances) {
    GrayImage noisy = add_gaussian_noise(image, variance, seed);
    BlurMap map = detect_blur_map(noisy, config);
    out.emplace_back(variance, pr_curve(map, gt));
  }
  return out;
}

std::vector<std::pair<std::string, PrCurve>> scale_ablation(
    const GrayImage& image, const GrayImage& gt, const ScaleSet& scales,
    const PipelineConfig& config) {
  std::vector<std::pair<std::string, PrCurve>> out;
  for (int m : scales.sizes) {
    PipelineConfig single = config;
    single.scales = ScaleSet::single(m);
    BlurMap map = detect_blur_map(image, single);
    out.emplace_back("M=" + std::to_string(m), pr_curve(map, gt));
  }
  PipelineConfig multi = config;
  multi.scales = scales;
  BlurMap map = detect_blur_map(image, multi);
  out.emplace_back("multiscale", pr_curve(map, gt));
  return out;
}

}  // namespace hifst
