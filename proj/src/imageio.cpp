#include "hifst/imageio.hpp"

#include <jpeglib.h>
#include <png.h>

#include <bit>
#include <cmath>
#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace hifst {
namespace {

constexpr double kRec601R = 0.299;
constexpr double kRec601G = 0.587;
constexpr double kRec601B = 0.114;

double luma(double r, double g, double b) {
  return kRec601R * r + kRec601G * g + kRec601B * b;
}

struct FileHandle {
  std::FILE* fp = nullptr;
  explicit FileHandle(const std::string& path, const char* mode)
      : fp(std::fopen(path.c_str(), mode)) {}
  ~FileHandle() {
    if (fp) std::fclose(fp);
  }
  FileHandle(const FileHandle&) = delete;
  FileHandle& operator=(const FileHandle&) = delete;
};

// ---------------------------------------------------------------- PNG read

GrayImage load_png(const std::string& path) {
  FileHandle file(path, "rb");
  if (!file.fp) throw io_error("cannot open " + path);

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw io_error("libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw io_error("libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw format_error("malformed PNG: " + path);
  }

  png_init_io(png, file.fp);
  png_read_info(png, info);

  png_set_palette_to_rgb(png);
  png_set_expand_gray_1_2_4_to_8(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int depth = png_get_bit_depth(png, info);
  const int channels = png_get_channels(png, info);

  std::vector<std::uint8_t> raster(static_cast<std::size_t>(height) *
                                   png_get_rowbytes(png, info));
  std::vector<png_bytep> rows(height);
  for (png_uint_32 i = 0; i < height; ++i) {
    rows[i] = raster.data() + static_cast<std::size_t>(i) * png_get_rowbytes(png, info);
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  if (channels != 1 && channels != 3) {
    throw format_error("unsupported PNG channel layout in " + path);
  }

  GrayImage out(static_cast<int>(height), static_cast<int>(width));
  const double full = depth == 16 ? 65535.0 : 255.0;
  for (png_uint_32 i = 0; i < height; ++i) {
    const std::uint8_t* row = rows[i];
    for (png_uint_32 j = 0; j < width; ++j) {
      double samples[3];
      for (int c = 0; c < channels; ++c) {
        std::size_t k = (static_cast<std::size_t>(j) * channels + c);
        if (depth == 16) {
          // PNG stores 16-bit samples most significant byte first.
          samples[c] = (row[2 * k] << 8 | row[2 * k + 1]) / full;
        } else {
          samples[c] = row[k] / full;
        }
      }
      out(static_cast<int>(i), static_cast<int>(j)) =
          channels == 1 ? samples[0] : luma(samples[0], samples[1], samples[2]);
    }
  }
  return out;
}

// ---------------------------------------------------------------- PNG write

void save_png8(const GrayImage& map, const std::string& path) {
  std::vector<std::uint8_t> bytes(map.pixel_count());
  for (std::size_t p = 0; p < map.pixel_count(); ++p) {
    double v = map.data()[p];
    // Tolerate tiny numerical overshoot from convex filtering.
    if (v < 0.0 && v >= -1e-9) v = 0.0;
    if (v > 1.0 && v <= 1.0 + 1e-9) v = 1.0;
    if (v < 0.0 || v > 1.0) {
      throw std::invalid_argument("png8 requires map values in [0,1]");
    }
    bytes[p] = static_cast<std::uint8_t>(std::floor(v * 255.0 + 0.5));
  }

  FileHandle file(path, "wb");
  if (!file.fp) throw io_error("cannot open " + path + " for writing");

  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw io_error("libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw io_error("libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw io_error("PNG write failed: " + path);
  }

  png_init_io(png, file.fp);
  png_set_IHDR(png, info, map.width(), map.height(), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int i = 0; i < map.height(); ++i) {
    png_write_row(png, bytes.data() + static_cast<std::size_t>(i) * map.width());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

// --------------------------------------------------------------- JPEG read

struct JpegErrorHook {
  jpeg_error_mgr mgr;
  std::jmp_buf env;
};

void jpeg_error_exit_hook(j_common_ptr cinfo) {
  auto* hook = reinterpret_cast<JpegErrorHook*>(cinfo->err);
  std::longjmp(hook->env, 1);
}

GrayImage load_jpeg(const std::string& path) {
  FileHandle file(path, "rb");
  if (!file.fp) throw io_error("cannot open " + path);

  jpeg_decompress_struct cinfo;
  JpegErrorHook hook;
  cinfo.err = jpeg_std_error(&hook.mgr);
  hook.mgr.error_exit = jpeg_error_exit_hook;
  if (setjmp(hook.env)) {
    jpeg_destroy_decompress(&cinfo);
    throw format_error("malformed JPEG: " + path);
  }

  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file.fp);
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space =
      cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&cinfo);

  const int width = static_cast<int>(cinfo.output_width);
  const int height = static_cast<int>(cinfo.output_height);
  const int channels = cinfo.output_components;
  GrayImage out(height, width);
  std::vector<std::uint8_t> row(static_cast<std::size_t>(width) * channels);
  JSAMPROW rowp = row.data();
  while (cinfo.output_scanline < cinfo.output_height) {
    int i = static_cast<int>(cinfo.output_scanline);
    jpeg_read_scanlines(&cinfo, &rowp, 1);
    for (int j = 0; j < width; ++j) {
      if (channels == 1) {
        out(i, j) = row[j] / 255.0;
      } else {
        out(i, j) = luma(row[3 * j] / 255.0, row[3 * j + 1] / 255.0,
                         row[3 * j + 2] / 255.0);
      }
    }
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return out;
}

// ---------------------------------------------------------------- PGM read

int next_pnm_token(std::istream& in, std::string& token) {
  token.clear();
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) return 1;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  return token.empty() ? 0 : 1;
}

GrayImage load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::string magic, tok;
  next_pnm_token(in, magic);
  if (magic != "P5" && magic != "P2") {
    throw format_error("unsupported PNM variant in " + path);
  }
  long width = 0, height = 0, maxval = 0;
  if (!next_pnm_token(in, tok)) throw format_error("truncated PGM header");
  width = std::stol(tok);
  if (!next_pnm_token(in, tok)) throw format_error("truncated PGM header");
  height = std::stol(tok);
  if (!next_pnm_token(in, tok)) throw format_error("truncated PGM header");
  maxval = std::stol(tok);
  if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) {
    throw format_error("bad PGM header in " + path);
  }

  GrayImage out(static_cast<int>(height), static_cast<int>(width));
  const double full = static_cast<double>(maxval);
  if (magic == "P2") {
    for (std::size_t p = 0; p < out.pixel_count(); ++p) {
      if (!next_pnm_token(in, tok)) throw format_error("truncated PGM data");
      out.data()[p] = std::stol(tok) / full;
    }
  } else {
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<std::uint8_t> raw(out.pixel_count() * bytes);
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
      throw format_error("truncated PGM data in " + path);
    }
    for (std::size_t p = 0; p < out.pixel_count(); ++p) {
      // 16-bit PGM samples are most significant byte first.
      long v = bytes == 2 ? (raw[2 * p] << 8 | raw[2 * p + 1]) : raw[p];
      out.data()[p] = v / full;
    }
  }
  return out;
}

// ------------------------------------------------------------ PFM read/write

float swap_float_bytes(float f) {
  std::uint32_t u;
  std::memcpy(&u, &f, 4);
  u = ((u & 0xFF000000u) >> 24) | ((u & 0x00FF0000u) >> 8) |
      ((u & 0x0000FF00u) << 8) | ((u & 0x000000FFu) << 24);
  std::memcpy(&f, &u, 4);
  return f;
}

GrayImage load_pfm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::string magic, tok;
  next_pnm_token(in, magic);
  if (magic != "Pf" && magic != "PF") {
    throw format_error("not a PFM file: " + path);
  }
  const int channels = magic == "PF" ? 3 : 1;
  if (!next_pnm_token(in, tok)) throw format_error("truncated PFM header");
  long width = std::stol(tok);
  if (!next_pnm_token(in, tok)) throw format_error("truncated PFM header");
  long height = std::stol(tok);
  if (!next_pnm_token(in, tok)) throw format_error("truncated PFM header");
  double scale = std::stod(tok);
  if (width < 1 || height < 1 || scale == 0.0) {
    throw format_error("bad PFM header in " + path);
  }
  const bool file_little = scale < 0.0;
  const bool host_little = std::endian::native == std::endian::little;

  std::vector<float> raw(static_cast<std::size_t>(width) * height * channels);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size() * sizeof(float)));
  if (in.gcount() != static_cast<std::streamsize>(raw.size() * sizeof(float))) {
    throw format_error("truncated PFM data in " + path);
  }
  if (file_little != host_little) {
    for (float& f : raw) f = swap_float_bytes(f);
  }

  GrayImage out(static_cast<int>(height), static_cast<int>(width));
  for (long i = 0; i < height; ++i) {
    // PFM rasters are stored bottom row first.
    const float* row = raw.data() +
                       static_cast<std::size_t>(height - 1 - i) * width * channels;
    for (long j = 0; j < width; ++j) {
      double v;
      if (channels == 1) {
        v = row[j];
      } else {
        v = luma(row[3 * j], row[3 * j + 1], row[3 * j + 2]);
      }
      if (!std::isfinite(v)) {
        throw format_error("non-finite sample in " + path);
      }
      out(static_cast<int>(i), static_cast<int>(j)) = v;
    }
  }
  return out;
}

void save_pfm32(const GrayImage& map, const std::string& path) {
  if (!all_finite(map)) {
    throw std::invalid_argument("pfm32 requires finite map values");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << "Pf\n" << map.width() << " " << map.height() << "\n-1.0\n";
  const bool host_little = std::endian::native == std::endian::little;
  std::vector<float> row(map.width());
  for (int i = map.height() - 1; i >= 0; --i) {
    for (int j = 0; j < map.width(); ++j) {
      float f = static_cast<float>(map(i, j));
      row[j] = host_little ? f : swap_float_bytes(f);
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) throw io_error("write failed: " + path);
}

// ---------------------------------------------------------------- BMP read

std::uint32_t read_u32le(const std::uint8_t* p) {
  return p[0] | p[1] << 8 | p[2] << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}
std::uint16_t read_u16le(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | p[1] << 8);
}

// Uncompressed BI_RGB bitmaps only: 8-bit paletted, 24-bit, or 32-bit.
GrayImage load_bmp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (bytes.size() < 54 || bytes[0] != 'B' || bytes[1] != 'M') {
    throw format_error("not a BMP file: " + path);
  }
  const std::uint32_t data_offset = read_u32le(&bytes[10]);
  const std::uint32_t header_size = read_u32le(&bytes[14]);
  if (header_size < 40) throw format_error("unsupported BMP header in " + path);
  const std::int32_t raw_w = static_cast<std::int32_t>(read_u32le(&bytes[18]));
  const std::int32_t raw_h = static_cast<std::int32_t>(read_u32le(&bytes[22]));
  const std::uint16_t bpp = read_u16le(&bytes[28]);
  const std::uint32_t compression = read_u32le(&bytes[30]);
  if (compression != 0 || (bpp != 8 && bpp != 24 && bpp != 32)) {
    throw format_error("unsupported BMP encoding in " + path);
  }
  const bool bottom_up = raw_h > 0;
  const int width = raw_w;
  const int height = bottom_up ? raw_h : -raw_h;
  if (width < 1 || height < 1) throw format_error("bad BMP dims in " + path);

  std::uint32_t palette_count = read_u32le(&bytes[46]);
  if (bpp == 8 && palette_count == 0) palette_count = 256;
  const std::size_t palette_at = 14 + header_size;
  if (bpp == 8 && palette_at + palette_count * 4 > bytes.size()) {
    throw format_error("truncated BMP palette in " + path);
  }

  const std::size_t row_bytes = ((static_cast<std::size_t>(width) * bpp + 31) / 32) * 4;
  if (data_offset + row_bytes * height > bytes.size()) {
    throw format_error("truncated BMP data in " + path);
  }

  GrayImage out(height, width);
  for (int i = 0; i < height; ++i) {
    const int src_row = bottom_up ? height - 1 - i : i;
    const std::uint8_t* row = bytes.data() + data_offset + row_bytes * src_row;
    for (int j = 0; j < width; ++j) {
      double r, g, b;
      if (bpp == 8) {
        std::uint32_t idx = row[j];
        if (idx >= palette_count) idx = palette_count - 1;
        const std::uint8_t* pal = bytes.data() + palette_at + idx * 4;
        b = pal[0] / 255.0;
        g = pal[1] / 255.0;
        r = pal[2] / 255.0;
      } else {
        const std::uint8_t* px = row + static_cast<std::size_t>(j) * (bpp / 8);
        b = px[0] / 255.0;
        g = px[1] / 255.0;
        r = px[2] / 255.0;
      }
      out(i, j) = luma(r, g, b);
    }
  }
  return out;
}

}  // namespace

GrayImage load_image(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw io_error("cannot open " + path);
  std::uint8_t magic[4] = {0, 0, 0, 0};
  probe.read(reinterpret_cast<char*>(magic), 4);
  if (probe.gcount() < 2) throw format_error("file too short: " + path);
  probe.close();

  GrayImage img;
  if (magic[0] == 0x89 && magic[1] == 'P') {
    img = load_png(path);
  } else if (magic[0] == 0xFF && magic[1] == 0xD8) {
    img = load_jpeg(path);
  } else if (magic[0] == 'P' && (magic[1] == '5' || magic[1] == '2')) {
    img = load_pgm(path);
  } else if (magic[0] == 'P' && (magic[1] == 'f' || magic[1] == 'F')) {
    img = load_pfm(path);
  } else if (magic[0] == 'B' && magic[1] == 'M') {
    img = load_bmp(path);
  } else {
    throw format_error("unsupported image format: " + path);
  }
  if (!all_finite(img)) throw format_error("non-finite samples in " + path);
  return img;
}

void save_map(const GrayImage& map, const std::string& path, MapFormat format) {
  if (map.empty()) throw std::invalid_argument("cannot save an empty map");
  switch (format) {
    case MapFormat::Png8:
      save_png8(map, path);
      return;
    case MapFormat::Pfm32:
      save_pfm32(map, path);
      return;
  }
  throw std::invalid_argument("unknown map format");
}

}  // namespace hifst
