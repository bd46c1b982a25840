#include "hifst/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hifst/imageio.hpp"

namespace hifst {
namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    int out = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer for '" + key + "': " + v);
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double out = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number for '" + key + "': " + v);
  }
}

std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_int(key, item));
  }
  if (out.empty()) throw std::invalid_argument("empty list for '" + key + "'");
  return out;
}

}  // namespace

std::vector<int> parse_scale_list(const std::string& text) {
  return parse_int_list("scales", text);
}

std::string to_string(SmoothGuide guide) {
  return guide == SmoothGuide::InputImage ? "input-image" : "map-itself";
}

SmoothGuide smooth_guide_from_string(const std::string& name) {
  if (name == "input-image") return SmoothGuide::InputImage;
  if (name == "map-itself") return SmoothGuide::MapItself;
  throw std::invalid_argument("unknown smooth guide: " + name);
}

void PipelineConfig::validate() const {
  scales.validate();
  if (!(gaussian_sigma > 0.0)) throw std::invalid_argument("gaussian-sigma must be > 0");
  if (gaussian_radius < 1) throw std::invalid_argument("gaussian-radius must be >= 1");
  if (entropy_window < 3 || entropy_window % 2 == 0) {
    throw std::invalid_argument("entropy-window must be odd and >= 3");
  }
  if (entropy_bins < 2) throw std::invalid_argument("entropy-bins must be >= 2");
  if (!(smooth_sigma_s > 0.0)) throw std::invalid_argument("smooth-sigma-s must be > 0");
  if (!(smooth_sigma_r > 0.0)) throw std::invalid_argument("smooth-sigma-r must be > 0");
  if (smooth_iterations < 1) throw std::invalid_argument("smooth-iterations must be >= 1");
  if (!(focus_threshold > 0.0 && focus_threshold <= 1.0)) {
    throw std::invalid_argument("focus-th must lie in (0,1]");
  }
  if (!(focus_presmooth_sigma > 0.0)) {
    throw std::invalid_argument("focus-presmooth-sigma must be > 0");
  }
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
}

std::string PipelineConfig::to_key_values() const {
  std::ostringstream out;
  out << "scales = ";
  for (std::size_t i = 0; i < scales.sizes.size(); ++i) {
    if (i) out << ",";
    out << scales.sizes[i];
  }
  out << "\n";
  out << "gaussian-sigma = " << format_double(gaussian_sigma) << "\n";
  out << "gaussian-radius = " << gaussian_radius << "\n";
  out << "entropy-window = " << entropy_window << "\n";
  out << "entropy-bins = " << entropy_bins << "\n";
  out << "smooth-sigma-s = " << format_double(smooth_sigma_s) << "\n";
  out << "smooth-sigma-r = " << format_double(smooth_sigma_r) << "\n";
  out << "smooth-iterations = " << smooth_iterations << "\n";
  out << "smooth-guide = " << to_string(smooth_guide) << "\n";
  out << "focus-th = " << format_double(focus_threshold) << "\n";
  out << "focus-presmooth-sigma = " << format_double(focus_presmooth_sigma) << "\n";
  out << "stride = " << stride << "\n";
  out << "threads = " << threads << "\n";
  return out.str();
}

PipelineConfig PipelineConfig::from_key_values(const std::string& text) {
  PipelineConfig cfg;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line is not 'key = value': " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "scales") {
      cfg.scales.sizes = parse_int_list(key, value);
    } else if (key == "gaussian-sigma") {
      cfg.gaussian_sigma = parse_double(key, value);
    } else if (key == "gaussian-radius") {
      cfg.gaussian_radius = parse_int(key, value);
    } else if (key == "entropy-window") {
      cfg.entropy_window = parse_int(key, value);
    } else if (key == "entropy-bins") {
      cfg.entropy_bins = parse_int(key, value);
    } else if (key == "smooth-sigma-s") {
      cfg.smooth_sigma_s = parse_double(key, value);
    } else if (key == "smooth-sigma-r") {
      cfg.smooth_sigma_r = parse_double(key, value);
    } else if (key == "smooth-iterations") {
      cfg.smooth_iterations = parse_int(key, value);
    } else if (key == "smooth-guide") {
      cfg.smooth_guide = smooth_guide_from_string(value);
    } else if (key == "focus-th") {
      cfg.focus_threshold = parse_double(key, value);
    } else if (key == "focus-presmooth-sigma") {
      cfg.focus_presmooth_sigma = parse_double(key, value);
    } else if (key == "stride") {
      cfg.stride = parse_int(key, value);
    } else if (key == "threads") {
      cfg.threads = parse_int(key, value);
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  return cfg;
}

PipelineConfig PipelineConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_key_values(buf.str());
}

void PipelineConfig::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << to_key_values();
  if (!out) throw io_error("write failed: " + path);
}

bool PipelineConfig::operator==(const PipelineConfig& other) const {
  return scales.sizes == other.scales.sizes &&
         gaussian_sigma == other.gaussian_sigma &&
         gaussian_radius == other.gaussian_radius &&
         entropy_window == other.entropy_window &&
         entropy_bins == other.entropy_bins &&
         smooth_sigma_s == other.smooth_sigma_s &&
         smooth_sigma_r == other.smooth_sigma_r &&
         smooth_iterations == other.smooth_iterations &&
         smooth_guide == other.smooth_guide &&
         focus_threshold == other.focus_threshold &&
         focus_presmooth_sigma == other.focus_presmooth_sigma &&
         stride == other.stride && threads == other.threads;
}

}  // namespace hifst
