#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lcpatlas {

// Minimal deterministic SVG 1.1 writer: elements appear in insertion order,
// numbers are printed with at most six significant digits, output bytes are
// a pure function of the calls made.
class SvgScene {
 public:
  SvgScene(double width, double height);

  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double stroke_width = 1.0);
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                double stroke_width = 1.0);
  void rect(double x, double y, double w, double h, const std::string& fill);
  void circle(double cx, double cy, double r, const std::string& fill);
  void text(double x, double y, const std::string& content, double font_size = 12.0,
            const std::string& fill = "#000");

  std::string str() const;
  void write(const std::string& path) const;  // throws InputError on failure

 private:
  double width_;
  double height_;
  std::vector<std::string> elements_;
};

// Affine map from a data rectangle to a pixel rectangle with y flipped
// (data y grows upward, pixel y downward).
struct PlotFrame {
  double x0 = 0.0, x1 = 1.0;  // data range, x
  double y0 = 0.0, y1 = 1.0;  // data range, y
  double px = 0.0, py = 0.0;  // pixel top-left of the plotting area
  double pw = 1.0, ph = 1.0;  // pixel size of the plotting area

  double map_x(double x) const { return px + (x - x0) / (x1 - x0) * pw; }
  double map_y(double y) const { return py + (y1 - y) / (y1 - y0) * ph; }
};

}  // namespace lcpatlas
