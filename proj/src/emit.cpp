#include "mdlreg/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace mdlreg {

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc())
    throw std::runtime_error("fmt_double: to_chars failed");
  return std::string(buf, res.ptr);
}

void write_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("rename failed for " + path);
  }
}

std::string svg_line_chart(const std::string& title, const std::string& xlabel,
                           const std::string& ylabel,
                           const std::vector<SvgSeries>& series) {
  const int w = 720, h = 480, ml = 70, mr = 170, mt = 40, mb = 50;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (std::isnan(s.x[i]) || std::isnan(s.y[i])) continue;
      if (first) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        first = false;
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  auto sx = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr);
  };
  auto sy = [&](double y) {
    return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb);
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(w) + "\" height=\"" + std::to_string(h) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + std::to_string(w / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + title +
         "</text>\n";
  // axes
  out += "<line x1=\"" + std::to_string(ml) + "\" y1=\"" +
         std::to_string(h - mb) + "\" x2=\"" + std::to_string(w - mr) +
         "\" y2=\"" + std::to_string(h - mb) +
         "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + std::to_string(ml) + "\" y1=\"" + std::to_string(mt) +
         "\" x2=\"" + std::to_string(ml) + "\" y2=\"" + std::to_string(h - mb) +
         "\" stroke=\"black\"/>\n";
  out += "<text x=\"" + std::to_string((ml + w - mr) / 2) + "\" y=\"" +
         std::to_string(h - 12) + "\" text-anchor=\"middle\" font-size=\"12\">" +
         xlabel + "</text>\n";
  out += "<text x=\"16\" y=\"" + std::to_string((mt + h - mb) / 2) +
         "\" font-size=\"12\" transform=\"rotate(-90 16 " +
         std::to_string((mt + h - mb) / 2) + ")\" text-anchor=\"middle\">" +
         ylabel + "</text>\n";
  for (int t = 0; t <= 4; ++t) {
    double xv = xmin + (xmax - xmin) * t / 4.0;
    double yv = ymin + (ymax - ymin) * t / 4.0;
    out += "<text x=\"" + fmt_double(sx(xv)) + "\" y=\"" +
           std::to_string(h - mb + 16) +
           "\" text-anchor=\"middle\" font-size=\"10\">" + fmt_double(xv) +
           "</text>\n";
    out += "<text x=\"" + std::to_string(ml - 6) + "\" y=\"" +
           fmt_double(sy(yv) + 3) +
           "\" text-anchor=\"end\" font-size=\"10\">" + fmt_double(yv) +
           "</text>\n";
  }
  int legend_y = mt + 10;
  for (const auto& s : series) {
    out += "<polyline fill=\"none\" stroke=\"" + s.color +
           "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (std::isnan(s.x[i]) || std::isnan(s.y[i])) continue;
      out += fmt_double(sx(s.x[i])) + "," + fmt_double(sy(s.y[i])) + " ";
    }
    out += "\"/>\n";
    out += "<line x1=\"" + std::to_string(w - mr + 10) + "\" y1=\"" +
           std::to_string(legend_y) + "\" x2=\"" + std::to_string(w - mr + 34) +
           "\" y2=\"" + std::to_string(legend_y) + "\" stroke=\"" + s.color +
           "\" stroke-width=\"1.5\"/>\n";
    out += "<text x=\"" + std::to_string(w - mr + 40) + "\" y=\"" +
           std::to_string(legend_y + 4) + "\" font-size=\"11\">" + s.label +
           "</text>\n";
    legend_y += 18;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace mdlreg
