#pragma once

#include <optional>
#include <string>
#include <vector>

#include "troplane/curve.hpp"
#include "troplane/intersect.hpp"

namespace troplane {

struct Viewport {
  Rational xmin, ymin, xmax, ymax;
};

struct RenderSpec {
  std::optional<Viewport> viewport;  // fitted to the scene when empty
  Rational scale = 80;               // pixels per unit
  std::vector<std::string> strokes = {"#1f4e99", "#c0392b", "#7a7a7a"};  // curves in order, cycling
  std::string chip_fill = "#111111";
  bool vertex_labels = false;
  bool chip_labels = true;  // multiplicities above 1
};

// Fixed element order: background, bounded edges, rays, chips, labels, per
// curve in input order. Coordinates are exact decimals at 6 places. Throws
// EmptyScene without curves and InvalidInput on an empty viewport.
std::string render_svg(const std::vector<TropicalCurve>& curves, const std::optional<Divisor>& divisor,
                       const RenderSpec& spec = {});

// Rounds half away from zero to 6 places.
std::string decimal6(const Rational& q);

}  // namespace troplane
