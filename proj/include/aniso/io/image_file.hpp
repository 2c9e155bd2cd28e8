#pragma once

#include <string>

#include "../error.hpp"
#include "../image.hpp"
#include "anim.hpp"
#include "png.hpp"

namespace aniso::io {

inline bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Reads an ANIM or grayscale PNG image, chosen by the file's magic bytes.
inline Image read_image(const std::string& path) {
  const auto data = detail::read_file(path);
  if (data.size() >= 4 && data[0] == 'A' && data[1] == 'N' && data[2] == 'I' && data[3] == 'M') {
    try {
      return decode_anim(data);
    } catch (const IoError& e) {
      throw IoError(path + ": " + e.what());
    }
  }
  return read_png(path);
}

/// Writes ANIM for `.anim` paths and 16-bit PNG (own min/max range) otherwise.
inline void write_image(const std::string& path, const Image& image) {
  if (has_suffix(path, ".png")) {
    write_png(path, image);
  } else {
    write_anim(path, image);
  }
}

}  // namespace aniso::io
