#pragma once

#include <string>

#include "hifst/sliding_dct.hpp"

namespace hifst {

enum class SmoothGuide {
  InputImage,  // edge-preserve against the input image's boundaries
  MapItself,   // self-guided smoothing of the raw map
};

std::string to_string(SmoothGuide guide);
SmoothGuide smooth_guide_from_string(const std::string& name);

// Parses a comma-separated list of patch sizes, e.g. "7,15,31,63".
std::vector<int> parse_scale_list(const std::string& text);

// Every tunable of the detection pipeline, with the defaults used throughout.
// Serializes to a flat key-value text block (one `key = value` per line,
// '#' comments) and parses back losslessly.
struct PipelineConfig {
  ScaleSet scales;
  double gaussian_sigma = 0.5;
  int gaussian_radius = 1;
  int entropy_window = 7;
  int entropy_bins = 256;
  double smooth_sigma_s = 15.0;
  double smooth_sigma_r = 0.3;
  int smooth_iterations = 3;
  SmoothGuide smooth_guide = SmoothGuide::InputImage;
  double focus_threshold = 0.98;
  double focus_presmooth_sigma = 5.0;
  int stride = 1;
  int threads = 0;  // <= 0 means auto

  void validate() const;

  std::string to_key_values() const;
  static PipelineConfig from_key_values(const std::string& text);

  static PipelineConfig load_file(const std::string& path);
  void save_file(const std::string& path) const;

  bool operator==(const PipelineConfig& other) const;
};

}  // namespace hifst
