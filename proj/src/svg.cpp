#include "lcpatlas/svg.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lcpatlas/types.hpp"

namespace lcpatlas {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

SvgScene::SvgScene(double width, double height) : width_(width), height_(height) {}

void SvgScene::line(double x1, double y1, double x2, double y2, const std::string& stroke,
                    double stroke_width) {
  elements_.push_back("<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) +
                      "\" y2=\"" + fmt(y2) + "\" stroke=\"" + escape(stroke) +
                      "\" stroke-width=\"" + fmt(stroke_width) + "\"/>");
}

void SvgScene::polyline(const std::vector<std::pair<double, double>>& pts,
                        const std::string& stroke, double stroke_width) {
  std::ostringstream os;
  os << "<polyline points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) os << " ";
    os << fmt(pts[i].first) << "," << fmt(pts[i].second);
  }
  os << "\" fill=\"none\" stroke=\"" << escape(stroke) << "\" stroke-width=\""
     << fmt(stroke_width) << "\"/>";
  elements_.push_back(os.str());
}

void SvgScene::rect(double x, double y, double w, double h, const std::string& fill) {
  elements_.push_back("<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(w) +
                      "\" height=\"" + fmt(h) + "\" fill=\"" + escape(fill) + "\"/>");
}

void SvgScene::circle(double cx, double cy, double r, const std::string& fill) {
  elements_.push_back("<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(r) +
                      "\" fill=\"" + escape(fill) + "\"/>");
}

void SvgScene::text(double x, double y, const std::string& content, double font_size,
                    const std::string& fill) {
  elements_.push_back("<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" font-size=\"" +
                      fmt(font_size) + "\" font-family=\"monospace\" fill=\"" + escape(fill) +
                      "\">" + escape(content) + "</text>");
}

std::string SvgScene::str() const {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(width_)
     << "\" height=\"" << fmt(height_) << "\" viewBox=\"0 0 " << fmt(width_) << " "
     << fmt(height_) << "\">\n";
  for (const auto& e : elements_) os << "  " << e << "\n";
  os << "</svg>\n";
  return os.str();
}

void SvgScene::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open output file: " + path);
  out << str();
  if (!out) throw InputError("failed writing output file: " + path);
}

}  // namespace lcpatlas
