#pragma once
// Deterministic SVG rendering of two-dimensional instances: the feasible cone
// as a shaded sector, the level hyperplane, the dual cone, the dual parameter
// line, and the optimal points, all inside a fixed [-3,3]^2 viewport.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "conedual/json_io.hpp"

namespace conedual {
namespace detail {

inline constexpr double kSvgSize = 480.0;   // pixels
inline constexpr double kViewHalf = 3.0;    // world units shown per half-axis
inline constexpr double kRayLength = 10.0;  // world units; clipped by the viewport

struct SvgPen {
  std::ostringstream os;

  static std::string fmt(double v) {
    if (std::abs(v) < 5e-4) v = 0.0;  // canonical zero keeps output byte-stable
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << v;
    return s.str();
  }

  static double px(double x) { return (x + kViewHalf) / (2 * kViewHalf) * kSvgSize; }
  static double py(double y) { return (kViewHalf - y) / (2 * kViewHalf) * kSvgSize; }

  void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill,
               double opacity) {
    os << "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      os << (i ? " " : "") << fmt(px(pts[i].first)) << "," << fmt(py(pts[i].second));
    }
    os << "\" fill=\"" << fill << "\" fill-opacity=\"" << fmt(opacity) << "\"/>\n";
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width,
            const std::string& dash = "") {
    os << "<line x1=\"" << fmt(px(x1)) << "\" y1=\"" << fmt(py(y1)) << "\" x2=\"" << fmt(px(x2))
       << "\" y2=\"" << fmt(py(y2)) << "\" stroke=\"" << stroke << "\" stroke-width=\""
       << fmt(width) << "\"";
    if (!dash.empty()) os << " stroke-dasharray=\"" << dash << "\"";
    os << "/>\n";
  }

  void dot(double x, double y, const std::string& fill) {
    os << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
       << "\" r=\"4\" fill=\"" << fill << "\"/>\n";
  }

  void text(double px_x, double px_y, const std::string& fill, const std::string& s) {
    os << "<text x=\"" << fmt(px_x) << "\" y=\"" << fmt(px_y) << "\" fill=\"" << fill
       << "\" font-family=\"monospace\" font-size=\"12\">" << s << "</text>\n";
  }
};

/// Shade the cone spanned by `gens` (2-D, already doubles).  A cone whose
/// generator directions cancel is a line or the whole plane and is drawn as
/// rays; anything else is a fan polygon between its extreme angles.
inline void shade_sector(SvgPen& pen, const std::vector<std::pair<double, double>>& gens,
                         const std::string& fill, double opacity) {
  std::vector<std::pair<double, double>> dirs;
  for (const auto& [x, y] : gens) {
    const double n = std::hypot(x, y);
    if (n > 1e-12) dirs.emplace_back(x / n, y / n);
  }
  if (dirs.empty()) return;  // the zero cone has nothing to shade

  double mx = 0, my = 0;
  for (const auto& [x, y] : dirs) {
    mx += x;
    my += y;
  }
  if (std::hypot(mx, my) < 1e-9) {
    // Opposite rays: a full line (or the whole plane when more directions
    // exist); draw the rays themselves.
    for (const auto& [x, y] : dirs) {
      pen.line(0, 0, kRayLength * x, kRayLength * y, fill, 2.5);
    }
    return;
  }
  const double center = std::atan2(my, mx);
  double lo = 0.0, hi = 0.0;
  for (const auto& [x, y] : dirs) {
    double delta = std::atan2(y, x) - center;
    while (delta > M_PI) delta -= 2 * M_PI;
    while (delta < -M_PI) delta += 2 * M_PI;
    lo = std::min(lo, delta);
    hi = std::max(hi, delta);
  }
  std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
  const int steps = std::max(1, static_cast<int>(std::ceil((hi - lo) / 0.4)));
  for (int i = 0; i <= steps; ++i) {
    const double a = center + lo + (hi - lo) * i / steps;
    pts.emplace_back(kRayLength * std::cos(a), kRayLength * std::sin(a));
  }
  pen.polygon(pts, fill, opacity);
}

template <class S>
inline std::vector<std::pair<double, double>> to_plane(const std::vector<VecT<S>>& xs) {
  std::vector<std::pair<double, double>> out;
  for (const auto& x : xs) {
    out.emplace_back(scalar_traits<S>::to_double(x[0]), scalar_traits<S>::to_double(x[1]));
  }
  return out;
}

}  // namespace detail

/// Render one two-dimensional instance with its report.  The output is pure
/// text with fixed-precision coordinates: identical inputs give identical
/// bytes.
template <class S>
inline std::string render_instance_svg(const GalleryEntry<S>& entry,
                                       const DualityReport<S>& report) {
  if (entry.instance.ambient_dim != 2) {
    throw PolicyError("the renderer covers two-dimensional instances only");
  }
  using detail::SvgPen;
  SvgPen pen;
  pen.os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << SvgPen::fmt(detail::kSvgSize)
         << "\" height=\"" << SvgPen::fmt(detail::kSvgSize) << "\" viewBox=\"0 0 "
         << SvgPen::fmt(detail::kSvgSize) << " " << SvgPen::fmt(detail::kSvgSize) << "\">\n";
  pen.os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  // axes
  pen.line(-detail::kViewHalf, 0, detail::kViewHalf, 0, "#cccccc", 1);
  pen.line(0, -detail::kViewHalf, 0, detail::kViewHalf, "#cccccc", 1);

  const auto K = make_intersection<S>({entry.instance.K1, entry.instance.K2});
  const auto& pp = K.poly_pair();
  // The dual cone's generators are exactly the canonical halfspaces.
  detail::shade_sector(pen, detail::to_plane<S>(pp.gens), "#4a90d9", 0.35);
  detail::shade_sector(pen, detail::to_plane<S>(pp.halfspaces), "#e27880", 0.22);

  // level hyperplane {<h,x> = 1}
  const double h1 = scalar_traits<S>::to_double(entry.instance.h[0]);
  const double h2 = scalar_traits<S>::to_double(entry.instance.h[1]);
  const double hn2 = h1 * h1 + h2 * h2;
  const double p0x = h1 / hn2, p0y = h2 / hn2;
  const double dn = std::sqrt(hn2);
  const double dx = -h2 / dn, dy = h1 / dn;
  pen.line(p0x - detail::kRayLength * dx, p0y - detail::kRayLength * dy,
           p0x + detail::kRayLength * dx, p0y + detail::kRayLength * dy, "#2d7d46", 2);

  // dual parameter line {q - t h}
  const double qx = scalar_traits<S>::to_double(entry.instance.q[0]);
  const double qy = scalar_traits<S>::to_double(entry.instance.q[1]);
  pen.line(qx - detail::kRayLength * h1 / dn, qy - detail::kRayLength * h2 / dn,
           qx + detail::kRayLength * h1 / dn, qy + detail::kRayLength * h2 / dn, "#b8860b", 2,
           "6,4");

  if (report.primal.solution) {
    pen.dot(scalar_traits<S>::to_double((*report.primal.solution)[0]),
            scalar_traits<S>::to_double((*report.primal.solution)[1]), "#1a4a7a");
  }
  if (report.dual_closure.t_star) {
    const double t = scalar_traits<S>::to_double(*report.dual_closure.t_star);
    pen.dot(qx - t * h1, qy - t * h2, "#8b2a32");
  }

  pen.text(10, 20, "#000000", entry.id);
  pen.text(10, 36, "#000000", "cell: " + to_string(report.cell));
  pen.text(10, 52, "#4a90d9", "feasible cone");
  pen.text(10, 68, "#e27880", "dual cone");
  pen.text(10, 84, "#2d7d46", "level hyperplane");
  pen.text(10, 100, "#b8860b", "dual line");
  pen.os << "</svg>\n";
  return pen.os.str();
}

/// Write the selected formats under `outdir`: `gallery.json`, `gallery.csv`,
/// and one SVG per two-dimensional entry.  Returns the written paths in a
/// deterministic order.
template <class S>
inline std::vector<std::filesystem::path> emit_reports(
    const std::vector<GalleryEntry<S>>& entries, const std::vector<DualityReport<S>>& reports,
    const std::set<std::string>& formats, const std::filesystem::path& outdir,
    const std::string& stem = "gallery") {
  if (entries.size() != reports.size()) {
    throw InvalidInstance("emit needs one report per gallery entry");
  }
  for (const auto& f : formats) {
    if (f != "json" && f != "csv" && f != "svg") {
      throw InvalidInstance("unknown emit format: " + f);
    }
  }
  std::filesystem::create_directories(outdir);
  std::vector<std::filesystem::path> written;
  if (formats.count("json")) {
    const auto path = outdir / (stem + ".json");
    write_text_file(path, reports_to_json(reports).dump(2) + "\n");
    written.push_back(path);
  }
  if (formats.count("csv")) {
    const auto path = outdir / (stem + ".csv");
    write_text_file(path, reports_to_csv(reports));
    written.push_back(path);
  }
  if (formats.count("svg")) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].instance.ambient_dim != 2) continue;
      const auto path = outdir / (entries[i].id + ".svg");
      write_text_file(path, render_instance_svg(entries[i], reports[i]));
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace conedual
