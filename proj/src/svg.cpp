#include "riem/svg.hpp"

#include <cmath>
#include <cstdio>

namespace riem {

namespace {

std::string pixel(double v) {
  if (!std::isfinite(v)) {
    throw InvalidInputError("svg: non-finite coordinate");
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

SvgCanvas::SvgCanvas(int width, int height) : width_(width), height_(height) {
  if (width_ < 1 || height_ < 1) {
    throw InvalidInputError("svg: canvas must be at least 1 x 1");
  }
}

void SvgCanvas::append_points(const std::vector<std::array<double, 2>>& pixels) {
  body_ += " points=\"";
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    if (i > 0) {
      body_ += ' ';
    }
    body_ += pixel(pixels[i][0]);
    body_ += ',';
    body_ += pixel(pixels[i][1]);
  }
  body_ += "\"";
}

void SvgCanvas::polyline(const std::vector<std::array<double, 2>>& pixels,
                         const std::string& stroke, double stroke_width) {
  if (pixels.size() < 2) {
    throw InvalidInputError("svg: polyline needs at least two points");
  }
  body_ += "  <polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
           pixel(stroke_width) + "\"";
  append_points(pixels);
  body_ += "/>\n";
}

void SvgCanvas::polygon(const std::vector<std::array<double, 2>>& pixels,
                        const std::string& stroke, double stroke_width) {
  if (pixels.size() < 3) {
    throw InvalidInputError("svg: polygon needs at least three points");
  }
  body_ += "  <polygon fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
           pixel(stroke_width) + "\"";
  append_points(pixels);
  body_ += "/>\n";
}

void SvgCanvas::circle(double cx, double cy, double radius, const std::string& stroke,
                       const std::string& fill, double stroke_width) {
  if (!(radius >= 0.0)) {
    throw InvalidInputError("svg: circle radius must be nonnegative");
  }
  body_ += "  <circle cx=\"" + pixel(cx) + "\" cy=\"" + pixel(cy) + "\" r=\"" +
           pixel(radius) + "\" stroke=\"" + stroke + "\" fill=\"" + fill +
           "\" stroke-width=\"" + pixel(stroke_width) + "\"/>\n";
}

std::string SvgCanvas::str() const {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width_) +
         "\" height=\"" + std::to_string(height_) + "\" viewBox=\"0 0 " +
         std::to_string(width_) + " " + std::to_string(height_) + "\">\n" + body_ +
         "</svg>\n";
}

}  // namespace riem
