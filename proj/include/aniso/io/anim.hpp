#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "../error.hpp"
#include "../image.hpp"

namespace aniso::io {

// Raw little-endian float64 image: "ANIM", u32 width, u32 height,
// u32 reserved (0), then width * height samples row-major.
inline constexpr std::array<char, 4> kAnimMagic = {'A', 'N', 'I', 'M'};
inline constexpr std::size_t kAnimHeaderSize = 16;

namespace detail {

inline void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

inline std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

inline std::vector<unsigned char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return data;
}

inline void write_file(const std::string& path, const std::vector<unsigned char>& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace detail

inline std::vector<unsigned char> encode_anim(const Image& image) {
  std::vector<unsigned char> out(kAnimMagic.begin(), kAnimMagic.end());
  out.reserve(kAnimHeaderSize + 8 * image.size());
  detail::put_u32(out, static_cast<std::uint32_t>(image.width()));
  detail::put_u32(out, static_cast<std::uint32_t>(image.height()));
  detail::put_u32(out, 0);
  for (double v : image.samples()) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(bits >> (8 * i)));
  }
  return out;
}

inline Image decode_anim(const std::vector<unsigned char>& data) {
  if (data.size() < kAnimHeaderSize || std::memcmp(data.data(), kAnimMagic.data(), 4) != 0)
    throw IoError("not an ANIM image (bad magic)");
  const std::uint32_t w = detail::get_u32(data.data() + 4);
  const std::uint32_t h = detail::get_u32(data.data() + 8);
  const std::uint64_t n = static_cast<std::uint64_t>(w) * h;
  if (data.size() != kAnimHeaderSize + 8 * n) throw IoError("ANIM payload size does not match header");
  std::vector<double> samples(n);
  const unsigned char* p = data.data() + kAnimHeaderSize;
  for (std::uint64_t i = 0; i < n; ++i, p += 8) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(p[b]) << (8 * b);
    samples[i] = std::bit_cast<double>(bits);
  }
  return Image(static_cast<int>(w), static_cast<int>(h), std::move(samples));
}

inline Image read_anim(const std::string& path) {
  try {
    return decode_anim(detail::read_file(path));
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

inline void write_anim(const std::string& path, const Image& image) {
  detail::write_file(path, encode_anim(image));
}

}  // namespace aniso::io
