#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "chenciner/diagram.hpp"

namespace chenciner {

struct RenderOptions {
  int width = 760;
  int height = 600;
  std::size_t max_orbit_points = 2000;  // deterministic stride subsampling
};

namespace svg {

inline std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string num3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

class Writer {
 public:
  Writer(int width, int height) {
    out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
            std::to_string(width) + "\" height=\"" + std::to_string(height) +
            "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) +
            "\">\n";
  }

  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& extra = "") {
    out_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
            "\" height=\"" + num(h) + "\" fill=\"" + fill + "\"" +
            (extra.empty() ? "" : " " + extra) + "/>\n";
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double width = 1.0, const std::string& dash = "") {
    out_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
            "\" y2=\"" + num(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" +
            num(width) + "\"" +
            (dash.empty() ? "" : " stroke-dasharray=\"" + dash + "\"") + "/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& stroke, double width, const std::string& dash = "") {
    if (pts.size() < 2) return;
    out_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
            num(width) + "\"" +
            (dash.empty() ? "" : " stroke-dasharray=\"" + dash + "\"") + " points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
      if (i) out_ += " ";
      out_ += num(pts[i].first) + "," + num(pts[i].second);
    }
    out_ += "\"/>\n";
  }

  void circle(double cx, double cy, double r, const std::string& stroke,
              const std::string& fill, double width = 1.0, const std::string& dash = "") {
    out_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) +
            "\" stroke=\"" + stroke + "\" fill=\"" + fill + "\" stroke-width=\"" +
            num(width) + "\"" +
            (dash.empty() ? "" : " stroke-dasharray=\"" + dash + "\"") + "/>\n";
  }

  void text(double x, double y, const std::string& s, int size = 12,
            const std::string& fill = "#263238", const std::string& anchor = "start") {
    out_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) +
            "\" font-family=\"monospace\" font-size=\"" + std::to_string(size) +
            "\" fill=\"" + fill + "\" text-anchor=\"" + anchor + "\">" + escape(s) +
            "</text>\n";
  }

  std::string finish() {
    out_ += "</svg>\n";
    return out_;
  }

 private:
  static std::string escape(const std::string& s) {
    std::string r;
    for (char c : s) {
      if (c == '&') r += "&amp;";
      else if (c == '<') r += "&lt;";
      else if (c == '>') r += "&gt;";
      else r += c;
    }
    return r;
  }
  std::string out_;
};

inline const char* region_fill(int region) {
  switch (region) {
    case 1: return "#ffd54f";
    case 2: return "#ef9a9a";
    case 3: return "#a5d6a7";
    case 4: return "#90caf9";
    case 5: return "#ce93d8";
    case 6: return "#ffab91";
    case 7: return "#80cbc4";
    case 8: return "#f48fb1";
    default: return "#eceff1";
  }
}

inline const char* region_blurb(int region) {
  switch (region) {
    case 1: return "1 stable origin + unstable circle";
    case 2: return "2 unstable origin";
    case 3: return "3 unstable origin + stable circle";
    case 4: return "4 stable origin";
    case 5: return "5 stable origin + semistable circle";
    case 6: return "6 unstable origin + semistable circle";
    case 7: return "7 two circles, stable outer";
    case 8: return "8 two circles, stable inner";
    default: return "on curve";
  }
}

}  // namespace svg

inline std::string render_diagram_svg(const DiagramSpec& d, const RenderOptions& opt = {}) {
  const double left = 70, top = 40, right = 180, bottom = 50;
  const double pw = opt.width - left - right, ph = opt.height - top - bottom;
  const DiagramWindow& w = d.window;
  auto px = [&](double a1) { return left + (a1 - w.a1_min) / (w.a1_max - w.a1_min) * pw; };
  auto py = [&](double a2) { return top + (w.a2_max - a2) / (w.a2_max - w.a2_min) * ph; };

  svg::Writer out(opt.width, opt.height);
  out.rect(0, 0, opt.width, opt.height, "#ffffff");
  out.rect(left, top, pw, ph, svg::region_fill(0));

  // Region cells, merging equal-region runs along each row.
  double cw = pw / d.nx, chh = ph / d.ny;
  for (int j = 0; j < d.ny; ++j) {
    int i = 0;
    while (i < d.nx) {
      int r = d.region_at(i, j);
      int i2 = i;
      while (i2 + 1 < d.nx && d.region_at(i2 + 1, j) == r) ++i2;
      if (r != 0)
        out.rect(left + i * cw, top + (d.ny - 1 - j) * chh, (i2 - i + 1) * cw, chh,
                 svg::region_fill(r));
      i = i2 + 1;
    }
  }

  auto curve_points = [&](const CurveTrace& t) {
    std::vector<std::pair<double, double>> pts;
    for (const ParameterPoint& p : t.points)
      if (p.alpha2 >= w.a2_min && p.alpha2 <= w.a2_max)
        pts.push_back({px(p.alpha1), py(p.alpha2)});
    return pts;
  };
  out.polyline(curve_points(d.b1), "#1b5e20", 2.0);
  out.polyline(curve_points(d.b2), "#0d47a1", 2.0, "8 4");
  out.polyline(curve_points(d.c), "#b71c1c", 2.0, "2 3");

  // Side annotations relative to the collision curve at mid-window.
  if (!d.c.points.empty()) {
    const ParameterPoint& mid = d.c.points[d.c.points.size() / 2];
    if (mid.alpha2 > w.a2_min && mid.alpha2 < w.a2_max) {
      out.text(px(mid.alpha1), py(mid.alpha2) - 14, "R1", 13, "#37474f", "middle");
      out.text(px(mid.alpha1), py(mid.alpha2) + 22, "R2", 13, "#37474f", "middle");
    }
  }

  out.rect(left, top, pw, ph, "none", "stroke=\"#263238\" stroke-width=\"1\"");
  for (int t = 0; t <= 4; ++t) {
    double a1 = w.a1_min + t * (w.a1_max - w.a1_min) / 4;
    double a2 = w.a2_min + t * (w.a2_max - w.a2_min) / 4;
    out.line(px(a1), top + ph, px(a1), top + ph + 5, "#263238");
    out.text(px(a1), top + ph + 18, svg::num3(a1), 10, "#263238", "middle");
    out.line(left - 5, py(a2), left, py(a2), "#263238");
    out.text(left - 8, py(a2) + 3, svg::num3(a2), 10, "#263238", "end");
  }
  out.text(left + pw / 2, opt.height - 14, "alpha1", 12, "#263238", "middle");
  out.text(18, top + ph / 2, "alpha2", 12, "#263238", "middle");
  out.text(left, 24, "bifurcation diagram, case " + case_label(d.dcase), 14);

  double lx = left + pw + 16, ly = top + 8;
  for (int r = 1; r <= 8; ++r) {
    out.rect(lx, ly - 9, 12, 12, svg::region_fill(r),
             "stroke=\"#263238\" stroke-width=\"0.5\"");
    out.text(lx + 18, ly + 1, svg::region_blurb(r), 9);
    ly += 18;
  }
  ly += 6;
  out.line(lx, ly, lx + 24, ly, "#1b5e20", 2.0);
  out.text(lx + 30, ly + 3, "B1: beta1 = 0", 10);
  ly += 16;
  out.line(lx, ly, lx + 24, ly, "#0d47a1", 2.0, "8 4");
  out.text(lx + 30, ly + 3, "B2: beta2 = 0", 10);
  ly += 16;
  out.line(lx, ly, lx + 24, ly, "#b71c1c", 2.0, "2 3");
  out.text(lx + 30, ly + 3, "C: delta = 0", 10);
  return out.finish();
}

inline std::string render_portrait_svg(const PhasePortraitSpec& spec,
                                       const RenderOptions& opt = {}) {
  const double cx = opt.width / 2.0, cy = opt.height / 2.0;
  const double margin = 50.0;
  double extent = spec.rho_max > 0 ? spec.rho_max : 0.1;
  double scale = (std::min(opt.width, opt.height) / 2.0 - margin) / extent;

  svg::Writer out(opt.width, opt.height);
  out.rect(0, 0, opt.width, opt.height, "#ffffff");
  out.line(cx - extent * scale, cy, cx + extent * scale, cy, "#b0bec5");
  out.line(cx, cy - extent * scale, cx, cy + extent * scale, "#b0bec5");

  for (const CircleRecord& c : spec.inventory.circles) {
    const char* color = c.stability == Stability::Stable ? "#2e7d32" : "#c62828";
    std::string dash = c.stability == Stability::Stable ? "" : "6 4";
    if (c.stability == Stability::SemistableOuterStable ||
        c.stability == Stability::SemistableInnerStable) {
      color = "#6a1b9a";
      dash = "10 3 2 3";
    }
    out.circle(cx, cy, c.radius * scale, color, "none", 2.0, dash);
  }

  static const char* orbit_colors[] = {"#ef6c00", "#00838f", "#5d4037", "#4527a0",
                                       "#9e9d24", "#263238"};
  for (size_t k = 0; k < spec.orbits.size(); ++k) {
    const OrbitTrace& tr = spec.orbits[k];
    size_t stride = tr.states.size() > opt.max_orbit_points
                        ? (tr.states.size() + opt.max_orbit_points - 1) / opt.max_orbit_points
                        : 1;
    const char* color = orbit_colors[k % 6];
    for (size_t i = 0; i < tr.states.size(); i += stride) {
      double x = cx + tr.states[i].x() * scale;
      double y = cy - tr.states[i].y() * scale;
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (x < -10 || x > opt.width + 10 || y < -10 || y > opt.height + 10) continue;
      out.circle(x, y, 1.2, "none", color);
    }
  }

  bool stable_origin = spec.inventory.origin == Stability::Stable;
  out.circle(cx, cy, 3.0, "#263238", stable_origin ? "#2e7d32" : "#c62828", 1.0);

  char head[160];
  std::snprintf(head, sizeof head, "phase portrait at (%.6g, %.6g), region %d",
                spec.at.alpha1, spec.at.alpha2, spec.inventory.region);
  out.text(16, 24, head, 13);
  double ly = 44;
  for (size_t k = 0; k < spec.orbits.size(); ++k) {
    char lab[120];
    std::snprintf(lab, sizeof lab, "rho0 = %.6g: %s", spec.starts[k],
                  verdict_name(spec.orbits[k].verdict));
    out.circle(20, ly - 4, 2.5, "none", orbit_colors[k % 6]);
    out.text(30, ly, lab, 10);
    ly += 15;
  }
  return out.finish();
}

}  // namespace chenciner
