#pragma once

#include <string>
#include <string_view>

namespace iorsp::svg {

std::string escape(std::string_view text);
std::string rgb(int r, int g, int b);

// Minimal append-only SVG document.
class Document {
 public:
  Document(double width, double height);

  void rect(double x, double y, double w, double h, std::string_view fill, std::string_view cls = {},
            std::string_view title = {}, double opacity = 1.0);
  void line(double x1, double y1, double x2, double y2, std::string_view stroke, double width = 1.0);
  void polyline(std::string_view points, std::string_view stroke, double width = 1.5, std::string_view cls = {});
  void text(double x, double y, std::string_view content, double size = 12.0, std::string_view anchor = "start");

  std::string finish() const;

 private:
  double width_, height_;
  std::string body_;
};

}  // namespace iorsp::svg
