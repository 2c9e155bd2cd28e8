#pragma once

#include <png.h>

#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "../error.hpp"
#include "../image.hpp"

namespace aniso::io {

namespace detail {

struct MemoryReader {
  const unsigned char* data;
  std::size_t size;
  std::size_t pos;
};

inline void png_memory_read(png_structp png, png_bytep out, png_size_t n) {
  auto* r = static_cast<MemoryReader*>(png_get_io_ptr(png));
  if (r->pos + n > r->size) png_error(png, "unexpected end of PNG data");
  std::memcpy(out, r->data + r->pos, n);
  r->pos += n;
}

struct PngDecoded {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  int bit_depth = 0;
  int color_type = 0;
};

// No object with a destructor may live between setjmp and the libpng calls.
inline bool png_decode(MemoryReader* reader, PngDecoded* info, std::vector<double>* out,
                       char* error_text, std::size_t error_size) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) return false;
  png_infop pinfo = png_create_info_struct(png);
  if (pinfo == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    std::snprintf(error_text, error_size, "malformed PNG data");
    png_destroy_read_struct(&png, &pinfo, nullptr);
    return false;
  }
  png_set_read_fn(png, reader, png_memory_read);
  png_read_png(png, pinfo, PNG_TRANSFORM_EXPAND | PNG_TRANSFORM_STRIP_ALPHA, nullptr);
  info->width = png_get_image_width(png, pinfo);
  info->height = png_get_image_height(png, pinfo);
  info->bit_depth = png_get_bit_depth(png, pinfo);
  info->color_type = png_get_color_type(png, pinfo);
  png_bytepp rows = png_get_rows(png, pinfo);
  const bool gray = info->color_type == PNG_COLOR_TYPE_GRAY;
  if (gray && (info->bit_depth == 8 || info->bit_depth == 16)) {
    out->resize(static_cast<std::size_t>(info->width) * info->height);
    const double scale = info->bit_depth == 8 ? 1.0 / 255.0 : 1.0 / 65535.0;
    for (std::uint32_t y = 0; y < info->height; ++y) {
      const png_bytep row = rows[y];
      for (std::uint32_t x = 0; x < info->width; ++x) {
        const unsigned v = info->bit_depth == 8
                               ? row[x]
                               : (static_cast<unsigned>(row[2 * x]) << 8) | row[2 * x + 1];
        (*out)[static_cast<std::size_t>(y) * info->width + x] = v * scale;
      }
    }
  } else {
    std::snprintf(error_text, error_size, "expected an 8- or 16-bit grayscale PNG");
  }
  png_destroy_read_struct(&png, &pinfo, nullptr);
  return gray && (info->bit_depth == 8 || info->bit_depth == 16);
}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

inline bool png_encode(std::FILE* file, std::uint32_t width, std::uint32_t height,
                       const std::vector<png_bytep>* rows) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) return false;
  png_infop pinfo = png_create_info_struct(png);
  if (pinfo == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &pinfo);
    return false;
  }
  png_init_io(png, file);
  png_set_IHDR(png, pinfo, width, height, 16, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, pinfo);
  png_write_image(png, const_cast<png_bytepp>(rows->data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &pinfo);
  return true;
}

}  // namespace detail

/// Reads an 8- or 16-bit grayscale PNG, mapping codes linearly to [0, 1].
inline Image read_png(const std::string& path) {
  std::FILE* raw = std::fopen(path.c_str(), "rb");
  if (raw == nullptr) throw IoError("cannot open '" + path + "' for reading");
  std::unique_ptr<std::FILE, detail::FileCloser> file(raw);
  std::vector<unsigned char> data;
  unsigned char chunk[65536];
  std::size_t n = 0;
  while ((n = std::fread(chunk, 1, sizeof chunk, raw)) > 0) data.insert(data.end(), chunk, chunk + n);
  if (data.size() < 8 || png_sig_cmp(data.data(), 0, 8) != 0)
    throw IoError(path + ": not a PNG file");
  detail::MemoryReader reader{data.data(), data.size(), 0};
  detail::PngDecoded info;
  std::vector<double> samples;
  char error_text[128] = "cannot decode PNG";
  if (!detail::png_decode(&reader, &info, &samples, error_text, sizeof error_text))
    throw IoError(path + ": " + error_text);
  return Image(static_cast<int>(info.width), static_cast<int>(info.height), std::move(samples));
}

/// Writes a 16-bit grayscale PNG with [lo, hi] mapped linearly to the full
/// code range (values outside are clipped).
inline void write_png(const std::string& path, const Image& image, double lo, double hi) {
  const auto w = static_cast<std::uint32_t>(image.width());
  const auto h = static_cast<std::uint32_t>(image.height());
  std::vector<unsigned char> pixels(static_cast<std::size_t>(w) * h * 2);
  const double span = hi > lo ? hi - lo : 1.0;
  for (std::uint32_t y = 0; y < h; ++y) {
    for (std::uint32_t x = 0; x < w; ++x) {
      double t = (image(static_cast<int>(x), static_cast<int>(y)) - lo) / span;
      t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
      const auto code = static_cast<unsigned>(t * 65535.0 + 0.5);
      const std::size_t i = (static_cast<std::size_t>(y) * w + x) * 2;
      pixels[i] = static_cast<unsigned char>(code >> 8);
      pixels[i + 1] = static_cast<unsigned char>(code & 0xFF);
    }
  }
  std::vector<png_bytep> rows(h);
  for (std::uint32_t y = 0; y < h; ++y) rows[y] = pixels.data() + static_cast<std::size_t>(y) * w * 2;
  std::FILE* raw = std::fopen(path.c_str(), "wb");
  if (raw == nullptr) throw IoError("cannot open '" + path + "' for writing");
  std::unique_ptr<std::FILE, detail::FileCloser> file(raw);
  if (!detail::png_encode(raw, w, h, &rows)) throw IoError(path + ": PNG encoding failed");
}

/// Writes with the image's own [min, max] range.
inline void write_png(const std::string& path, const Image& image) {
  double lo = image.samples()[0];
  double hi = lo;
  for (double v : image.samples()) {
    lo = v < lo ? v : lo;
    hi = v > hi ? v : hi;
  }
  write_png(path, image, lo, hi);
}

}  // namespace aniso::io
