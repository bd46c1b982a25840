#pragma once

#include <stdexcept>
#include <string>

#include "hifst/image.hpp"

namespace hifst {

// File could not be opened, read, or written.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File was readable but is not a supported raster format, or is malformed.
class format_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MapFormat {
  Png8,   // 8-bit grayscale PNG, values must lie in [0,1]
  Pfm32,  // 32-bit float PFM, little-endian, scale -1.0
};

// Decodes PNG, JPEG, PGM, PFM, or uncompressed BMP into the canonical
// grayscale representation. Color inputs are converted with Rec. 601 weights
// (0.299, 0.587, 0.114); integer sample ranges rescale to [0,1]. The format
// is detected from the file's magic bytes, not its extension.
GrayImage load_image(const std::string& path);

// Writes a map. Png8 rounds value*255 half-up to the nearest byte and
// rejects values outside [0,1] (beyond a 1e-9 slack, which is clamped).
// Pfm32 stores raw float32 values and round-trips them exactly.
void save_map(const GrayImage& map, const std::string& path, MapFormat format);

}  // namespace hifst
