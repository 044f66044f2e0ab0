#include "sectorscope/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sectorscope::svg {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  if (!std::isfinite(v)) v = 0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
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

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) lo = 0, hi = 1;
    if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
};

// Maps data coordinates into a pixel box.
struct Frame {
  double x0, y0, w, h;
  Range xr, yr;

  double px(double x) const { return x0 + (x - xr.lo) / (xr.hi - xr.lo) * w; }
  double py(double y) const { return y0 + h - (y - yr.lo) / (yr.hi - yr.lo) * h; }
};

class Document {
 public:
  Document(int width, int height) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
         << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  void text(double x, double y, std::string_view s, const char* anchor = "start", int size = 11) {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor << "\" font-size=\""
         << size << "\">" << escape(s) << "</text>\n";
  }
  void line(double x1, double y1, double x2, double y2, const char* stroke = "black", double width = 1) {
    out_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
         << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"/>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& fill) {
    out_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
         << "\" fill=\"" << fill << "\"/>\n";
  }
  void circle(double x, double y, double r, const char* fill) {
    out_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r) << "\" fill=\"" << fill
         << "\"/>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, const char* stroke) {
    out_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) out_ << (i ? " " : "") << num(pts[i].first) << ',' << num(pts[i].second);
    out_ << "\"/>\n";
  }

  void axes(const Frame& f, std::string_view x_label, std::string_view y_label) {
    line(f.x0, f.y0 + f.h, f.x0 + f.w, f.y0 + f.h);
    line(f.x0, f.y0, f.x0, f.y0 + f.h);
    for (int t = 0; t <= 4; ++t) {
      const double xv = f.xr.lo + (f.xr.hi - f.xr.lo) * t / 4;
      const double yv = f.yr.lo + (f.yr.hi - f.yr.lo) * t / 4;
      text(f.px(xv), f.y0 + f.h + 14, num(xv), "middle", 9);
      text(f.x0 - 4, f.py(yv) + 3, num(yv), "end", 9);
    }
    if (!x_label.empty()) text(f.x0 + f.w / 2, f.y0 + f.h + 30, x_label, "middle");
    if (!y_label.empty()) text(f.x0 - 40, f.y0 - 8, y_label, "start");
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
};

void legend(Document& doc, std::span<const Series> series, double x, double y) {
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    doc.line(x, y + 14.0 * i, x + 16, y + 14.0 * i, color, 2);
    doc.text(x + 20, y + 14.0 * i + 4, series[i].label);
  }
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       std::span<const Series> series) {
  Frame f{70, 40, 520, 320, {}, {}};
  for (const auto& s : series) {
    for (double x : s.x) f.xr.add(x);
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      const double e = i < s.error.size() ? s.error[i] : 0;
      f.yr.add(s.y[i] - e);
      f.yr.add(s.y[i] + e);
    }
  }
  f.xr.finish();
  f.yr.finish();
  Document doc(760, 420);
  doc.text(380, 20, title, "middle", 14);
  doc.axes(f, x_label, y_label);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      pts.emplace_back(f.px(s.x[i]), f.py(s.y[i]));
      if (i < s.error.size() && s.error[i] > 0)
        doc.line(f.px(s.x[i]), f.py(s.y[i] - s.error[i]), f.px(s.x[i]), f.py(s.y[i] + s.error[i]), color);
    }
    doc.polyline(pts, color);
  }
  legend(doc, series, 605, 50);
  return doc.finish();
}

std::string path_chart(const std::string& title, std::span<const Series> series,
                       std::span<const LabeledPoint> anchors) {
  Frame f{70, 40, 520, 400, {}, {}};
  for (const auto& s : series) {
    for (double x : s.x) f.xr.add(x);
    for (double y : s.y) f.yr.add(y);
  }
  for (const auto& a : anchors) f.xr.add(a.x), f.yr.add(a.y);
  f.xr.finish();
  f.yr.finish();
  Document doc(760, 500);
  doc.text(380, 20, title, "middle", 14);
  doc.axes(f, "axis 1", "axis 2");
  for (const auto& a : anchors) {
    doc.circle(f.px(a.x), f.py(a.y), 2, "#999999");
    doc.text(f.px(a.x) + 3, f.py(a.y) - 3, a.label, "start", 8);
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      pts.emplace_back(f.px(s.x[i]), f.py(s.y[i]));
      doc.circle(pts.back().first, pts.back().second, 2.5, color);
    }
    doc.polyline(pts, color);
  }
  legend(doc, series, 605, 50);
  return doc.finish();
}

std::string scatter(const std::string& title, std::span<const LabeledPoint> points) {
  return path_chart(title, {}, points);
}

std::string heatmap(const std::string& title, const Eigen::MatrixXi& counts) {
  const double cell = 14;
  const double x0 = 40, y0 = 40;
  const int maxc = counts.size() ? std::max(1, counts.maxCoeff()) : 1;
  Document doc(static_cast<int>(x0 * 2 + cell * counts.rows()), static_cast<int>(y0 * 2 + cell * counts.cols()));
  doc.text(x0, 20, title, "start", 14);
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    for (Eigen::Index j = 0; j < counts.cols(); ++j) {
      if (counts(i, j) == 0) continue;
      const int shade = 255 - static_cast<int>(std::lround(235.0 * counts(i, j) / maxc));
      char fill[16];
      std::snprintf(fill, sizeof fill, "#%02x%02xff", shade, shade);
      doc.rect(x0 + cell * i, y0 + cell * (counts.cols() - 1 - j), cell, cell, fill);
    }
  }
  return doc.finish();
}

std::string factor_grid(const std::string& title, const CPModel& model, const StrategyTensor& tensor) {
  const double panel_w = 260, panel_h = 110, gap = 30;
  const int rows = model.rank;
  Document doc(static_cast<int>(3 * (panel_w + gap) + 60), static_cast<int>(rows * (panel_h + gap) + 70));
  doc.text(20, 20, title, "start", 14);
  const char* headers[] = {"investor", "sector", "temporal"};
  for (int m = 0; m < 3; ++m) doc.text(60 + m * (panel_w + gap) + panel_w / 2, 44, headers[m], "middle");

  for (int r = 0; r < rows; ++r) {
    const double y0 = 55 + r * (panel_h + gap);
    doc.text(10, y0 + panel_h / 2, std::to_string(r + 1) + " (" + num(model.weights[r]) + ")", "start", 9);
    const Eigen::MatrixXd* mats[] = {&model.investor_factors, &model.sector_factors, &model.temporal_factors};
    for (int m = 0; m < 3; ++m) {
      const Eigen::VectorXd col = mats[m]->col(r);
      Frame f{60 + m * (panel_w + gap), y0, panel_w, panel_h, {}, {}};
      f.xr = {0, static_cast<double>(std::max<Eigen::Index>(col.size() - 1, 1))};
      f.yr.add(0);
      for (double v : col) f.yr.add(v);
      f.yr.finish();
      doc.line(f.x0, f.py(0), f.x0 + f.w, f.py(0), "#999999");
      if (m < 2) {
        const double bw = panel_w / std::max<Eigen::Index>(col.size(), 1);
        for (Eigen::Index i = 0; i < col.size(); ++i) {
          const double top = std::min(f.py(col[i]), f.py(0));
          doc.rect(f.x0 + bw * i, top, std::max(bw * 0.8, 0.5), std::abs(f.py(col[i]) - f.py(0)),
                   kPalette[m]);
        }
        if (m == 1)
          for (Eigen::Index i = 0; i < col.size() && i < static_cast<Eigen::Index>(tensor.sectors.size()); ++i)
            if (std::abs(col[i]) == col.cwiseAbs().maxCoeff())
              doc.text(f.x0 + bw * i, y0 - 2, tensor.sectors[static_cast<std::size_t>(i)], "start", 8);
      } else {
        std::vector<std::pair<double, double>> pts;
        for (Eigen::Index i = 0; i < col.size(); ++i) pts.emplace_back(f.px(static_cast<double>(i)), f.py(col[i]));
        doc.polyline(pts, kPalette[2]);
        if (!tensor.years.empty()) {
          doc.text(f.x0, y0 + panel_h + 12, std::to_string(tensor.years.front()), "start", 8);
          doc.text(f.x0 + f.w, y0 + panel_h + 12, std::to_string(tensor.years.back()), "end", 8);
        }
      }
    }
  }
  return doc.finish();
}

}  // namespace sectorscope::svg
