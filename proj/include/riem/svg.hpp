#pragma once

#include <array>
#include <string>
#include <vector>

#include "riem/error.hpp"

namespace riem {

/// Minimal SVG document builder for the plotting commands.  Coordinates are
/// final pixel positions (origin top-left, y down); callers do their own math
/// projection.  Every coordinate is checked finite at draw time, so an emitted
/// document can never contain NaN/Inf.
class SvgCanvas {
 public:
  SvgCanvas(int width, int height);

  /// Open polyline; needs at least two points.
  void polyline(const std::vector<std::array<double, 2>>& pixels, const std::string& stroke,
                double stroke_width);

  /// Closed polygon outline (fill "none").
  void polygon(const std::vector<std::array<double, 2>>& pixels, const std::string& stroke,
               double stroke_width);

  /// Circle outline or dot; pass fill "none" for outlines.
  void circle(double cx, double cy, double radius, const std::string& stroke,
              const std::string& fill, double stroke_width);

  /// Complete document text.
  std::string str() const;

 private:
  void append_points(const std::vector<std::array<double, 2>>& pixels);

  int width_;
  int height_;
  std::string body_;
};

}  // namespace riem
