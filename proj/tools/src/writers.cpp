#include "pvclass_cli/writers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "pvclass_cli/config.hpp"

namespace pvclass::cli {

namespace {

std::string escape_xml(const std::string& s) {
  std::string out;
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

std::string svg_open(double width, double height) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.2f}\" height=\"{1:.2f}\" viewBox=\"0 0 {0:.2f} {1:.2f}\" "
      "font-family=\"sans-serif\" font-size=\"11\">\n"
      "<rect x=\"0\" y=\"0\" width=\"{0:.2f}\" height=\"{1:.2f}\" fill=\"#ffffff\"/>\n",
      width, height);
}

constexpr double kLeft = 90.0;
constexpr double kTop = 44.0;

std::string grid_header(const std::vector<std::string>& names, const std::string& title, std::size_t rows,
                        double& width, double& height) {
  width = kLeft + static_cast<double>(names.size()) * kCellSize + 20.0;
  height = kTop + static_cast<double>(rows) * kCellSize + 20.0;
  std::string s = svg_open(width, height);
  s += fmt::format("<text x=\"8\" y=\"16\" font-size=\"13\">{}</text>\n", escape_xml(title));
  for (std::size_t t = 0; t < names.size(); ++t) {
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                     kLeft + (static_cast<double>(t) + 0.5) * kCellSize, kTop - 6.0, escape_xml(names[t]));
  }
  return s;
}

std::string cell_outline(double x, double y) {
  return fmt::format("<rect x=\"{:.4f}\" y=\"{:.4f}\" width=\"{:.4f}\" height=\"{:.4f}\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n",
                     x, y, kCellSize, kCellSize);
}

}  // namespace

std::string num(double v) { return fmt::format("{}", v); }

std::string region_names(LabelSet s, const std::vector<std::string>& names) {
  if (s == 0) return "-";
  std::string out;
  for (std::size_t t = 0; t < names.size(); ++t) {
    if (s & (LabelSet{1} << t)) {
      if (!out.empty()) out += '+';
      out += names[t];
    }
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << content;
  if (!f) throw UsageError("write failed for '" + path + "'");
}

std::string pvalue_chart_svg(const std::vector<ChartRow>& rows, const std::vector<std::string>& names,
                             const std::string& title) {
  double width = 0.0;
  double height = 0.0;
  std::string s = grid_header(names, title, rows.size(), width, height);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double y0 = kTop + static_cast<double>(r) * kCellSize;
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", kLeft - 6.0,
                     y0 + kCellSize * 0.5 + 4.0, escape_xml(rows[r].label));
    for (std::size_t t = 0; t < names.size(); ++t) {
      const double x0 = kLeft + static_cast<double>(t) * kCellSize;
      s += cell_outline(x0, y0);
      const double p = rows[r].pvalues[t];
      const double side = kCellSize * std::sqrt(p);
      if (side <= 0.0) continue;
      s += fmt::format(
          "<rect class=\"pv\" data-row=\"{}\" data-class=\"{}\" data-p=\"{}\" x=\"{:.6f}\" y=\"{:.6f}\" "
          "width=\"{:.6f}\" height=\"{:.6f}\" fill=\"#3a5f9f\"/>\n",
          r, t + 1, num(p), x0 + 0.5 * (kCellSize - side), y0 + 0.5 * (kCellSize - side), side, side);
    }
  }
  return s + "</svg>\n";
}

std::string region_chart_svg(const std::vector<ChartRow>& rows, const std::vector<std::string>& names, double alpha,
                             const std::string& title) {
  double width = 0.0;
  double height = 0.0;
  std::string s = grid_header(names, title, rows.size(), width, height);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double y0 = kTop + static_cast<double>(r) * kCellSize;
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", kLeft - 6.0,
                     y0 + kCellSize * 0.5 + 4.0, escape_xml(rows[r].label));
    const LabelSet mask = region_mask(rows[r].pvalues, alpha);
    for (std::size_t t = 0; t < names.size(); ++t) {
      const double x0 = kLeft + static_cast<double>(t) * kCellSize;
      s += cell_outline(x0, y0);
      if (mask & (LabelSet{1} << t)) {
        s += fmt::format(
            "<rect class=\"member\" data-row=\"{}\" data-class=\"{}\" x=\"{:.4f}\" y=\"{:.4f}\" width=\"{:.4f}\" "
            "height=\"{:.4f}\" fill=\"#3a5f9f\"/>\n",
            r, t + 1, x0, y0, kCellSize, kCellSize);
      }
    }
  }
  return s + "</svg>\n";
}

std::string roc_svg(const std::vector<std::vector<RocCurve>>& curves, const std::vector<std::string>& names,
                    const std::string& title) {
  const std::size_t L = names.size();
  constexpr double panel = 150.0;
  constexpr double gap = 30.0;
  constexpr double left = 40.0;
  constexpr double top = 40.0;
  const double width = left + static_cast<double>(L) * (panel + gap);
  const double height = top + static_cast<double>(L) * (panel + gap);
  std::string s = svg_open(width, height);
  s += fmt::format("<text x=\"8\" y=\"16\" font-size=\"13\">{}</text>\n", escape_xml(title));
  for (std::size_t b = 0; b < L; ++b) {
    for (std::size_t t = 0; t < L; ++t) {
      const double x0 = left + static_cast<double>(t) * (panel + gap);
      const double y0 = top + static_cast<double>(b) * (panel + gap);
      const auto px = [&](double a) { return x0 + a * panel; };
      const auto py = [&](double v) { return y0 + (1.0 - v) * panel; };
      s += fmt::format("<g data-true=\"{}\" data-theta=\"{}\">\n", escape_xml(names[b]), escape_xml(names[t]));
      s += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"#000000\"/>\n",
                       x0, y0, panel, panel);
      s += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#999999\" stroke-dasharray=\"3,3\"/>\n",
                       px(0), py(0), px(1), py(1));
      s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">Y={} , theta={}</text>\n", x0, y0 - 4.0, escape_xml(names[b]),
                       escape_xml(names[t]));
      const RocCurve& c = curves[b][t];
      std::string path = fmt::format("M{:.3f},{:.3f}", px(0), py(c.value_at(0.0)));
      for (double a : c.breakpoints()) {
        if (a <= 0.0 || a > 1.0) continue;
        path += fmt::format(" L{:.3f},{:.3f} L{:.3f},{:.3f}", px(a), py(c.value_before(a)), px(a), py(c.value_at(a)));
      }
      path += fmt::format(" L{:.3f},{:.3f}", px(1), py(c.value_at(1.0)));
      s += fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.2\"/>\n</g>\n", path);
    }
  }
  return s + "</svg>\n";
}

std::string region_map_svg(const RegionMap& map, const std::vector<std::string>& names, const std::string& title) {
  const Lattice& lat = map.lattice;
  constexpr double cell = 3.0;
  constexpr double top = 30.0;
  const double plot_w = static_cast<double>(lat.nx) * cell;
  const double plot_h = static_cast<double>(lat.ny) * cell;
  const std::size_t L = map.num_classes;
  const std::size_t subsets = L < 7 ? (std::size_t{1} << L) : 0;
  const double width = plot_w + 160.0;
  const double height = std::max(top + plot_h + 30.0, top + 18.0 * static_cast<double>(subsets) + 30.0);
  std::string s = svg_open(width, height);
  s += fmt::format("<text x=\"8\" y=\"18\" font-size=\"13\">{}</text>\n", escape_xml(title));
  s += "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t iy = 0; iy < lat.ny; ++iy) {
    // y grows upward in the lattice, downward on screen
    const double y = top + static_cast<double>(lat.ny - 1 - iy) * cell;
    std::size_t ix = 0;
    while (ix < lat.nx) {
      const LabelSet m = map.at(ix, iy);
      std::size_t run = ix + 1;
      while (run < lat.nx && map.at(run, iy) == m) ++run;
      s += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"{}\"/>\n",
                       static_cast<double>(ix) * cell, y, static_cast<double>(run - ix) * cell, cell,
                       region_color(m, L));
      ix = run;
    }
  }
  s += "</g>\n";
  s += fmt::format("<text x=\"0\" y=\"{:.1f}\">x: [{}, {}]  y: [{}, {}]  alpha = {}</text>\n", top + plot_h + 16.0,
                   num(lat.x_min), num(lat.x_max), num(lat.y_min), num(lat.y_max), num(map.alpha));
  // legend ordered by size, then mask
  std::vector<LabelSet> order;
  for (LabelSet m = 0; m < subsets; ++m) order.push_back(m);
  std::stable_sort(order.begin(), order.end(),
                   [](LabelSet a, LabelSet b) { return std::popcount(a) < std::popcount(b); });
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double y = top + 18.0 * static_cast<double>(i);
    s += fmt::format(
        "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"12\" height=\"12\" fill=\"{}\" stroke=\"#000000\" stroke-width=\"0.5\"/>"
        "<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n",
        plot_w + 16.0, y, region_color(order[i], L), plot_w + 34.0, y + 10.0,
        order[i] == 0 ? std::string("empty") : "{" + escape_xml(region_names(order[i], names)) + "}");
  }
  return s + "</svg>\n";
}

}  // namespace pvclass::cli
