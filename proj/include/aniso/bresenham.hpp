#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

#include "angles.hpp"
#include "frequency.hpp"

namespace aniso {

struct GridPoint {
  int x;
  int y;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// Integer Bresenham rasterization from p0 to p1 inclusive, 8-connected.
inline std::vector<GridPoint> bresenham_line(GridPoint p0, GridPoint p1) {
  std::vector<GridPoint> out;
  const int dx = std::abs(p1.x - p0.x);
  const int dy = -std::abs(p1.y - p0.y);
  const int sx = p0.x < p1.x ? 1 : -1;
  const int sy = p0.y < p1.y ? 1 : -1;
  int err = dx + dy;
  int x = p0.x;
  int y = p0.y;
  out.reserve(static_cast<std::size_t>(std::max(dx, -dy)) + 1);
  while (true) {
    out.push_back({x, y});
    if (x == p1.x && y == p1.y) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
  return out;
}

/// Binary mask of the rasterized line through the zero frequency at
/// `angle_deg`, reaching the Nyquist radius on both sides. The zero frequency
/// itself is excluded, matching the other banks.
inline std::vector<double> line_mask(const FrequencyLayout& layout, double angle_deg) {
  std::vector<double> mask(layout.size(), 0.0);
  const auto [s, c] = sincos_deg(angle_deg);
  const double r = layout.nyquist_radius();
  const GridPoint end{static_cast<int>(std::lround(r * c)), static_cast<int>(std::lround(r * s))};
  for (const auto& p : bresenham_line({0, 0}, end)) {
    for (const GridPoint q : {p, GridPoint{-p.x, -p.y}}) {
      if ((q.x != 0 || q.y != 0) && layout.contains(q.x, q.y)) mask[layout.index(q.x, q.y)] = 1.0;
    }
  }
  return mask;
}

}  // namespace aniso
