#include "polygame/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "polygame/types.hpp"

namespace polygame {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void open_svg(std::ostringstream& out, int width, int height, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  if (!title.empty())
    out << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">" << title << "</text>\n";
}

struct Range {
  double lo = 0.0, hi = 1.0;
  void grow(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (hi - lo < 1e-300) {
      lo -= 0.5;
      hi += 0.5;
    } else {
      const double margin = 0.05 * (hi - lo);
      lo -= margin;
      hi += margin;
    }
  }
};

}  // namespace

std::string render_series_svg(const std::vector<ObservableSeries>& series, const std::string& title) {
  if (series.empty()) throw ConfigError("csv", "no series to plot");
  for (const ObservableSeries& s : series)
    if (s.times.empty()) throw ConfigError("csv", "series '" + s.name + "' is empty");

  const int width = 720, height = 480;
  const double x0 = 70, x1 = width - 150, y0 = height - 50, y1 = 40;

  Range tr, vr;
  tr.lo = tr.hi = series.front().times.front();
  vr.lo = vr.hi = series.front().values.front();
  for (const ObservableSeries& s : series) {
    for (double t : s.times) tr.grow(t);
    for (double v : s.values) vr.grow(v);
  }
  tr.pad();
  vr.pad();

  const auto px = [&](double t) { return x0 + (t - tr.lo) / (tr.hi - tr.lo) * (x1 - x0); };
  const auto py = [&](double v) { return y0 + (v - vr.lo) / (vr.hi - vr.lo) * (y1 - y0); };

  std::ostringstream out;
  open_svg(out, width, height, title);

  out << "<g stroke=\"#444\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << coord(x0) << "\" y1=\"" << coord(y0) << "\" x2=\"" << coord(x1)
      << "\" y2=\"" << coord(y0) << "\"/>\n";
  out << "<line x1=\"" << coord(x0) << "\" y1=\"" << coord(y0) << "\" x2=\"" << coord(x0)
      << "\" y2=\"" << coord(y1) << "\"/>\n";
  out << "</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
  for (int k = 0; k <= 5; ++k) {
    const double t = tr.lo + (tr.hi - tr.lo) * k / 5.0;
    const double v = vr.lo + (vr.hi - vr.lo) * k / 5.0;
    out << "<text x=\"" << coord(px(t)) << "\" y=\"" << coord(y0 + 16)
        << "\" text-anchor=\"middle\">" << label(t) << "</text>\n";
    out << "<text x=\"" << coord(x0 - 6) << "\" y=\"" << coord(py(v) + 4)
        << "\" text-anchor=\"end\">" << label(v) << "</text>\n";
  }
  out << "<text x=\"" << coord((x0 + x1) / 2) << "\" y=\"" << coord(y0 + 34)
      << "\" text-anchor=\"middle\">t</text>\n";
  out << "</g>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < series[s].times.size(); ++k)
      out << coord(px(series[s].times[k])) << ',' << coord(py(series[s].values[k])) << ' ';
    out << "\"/>\n";
    const double ly = y1 + 14.0 * static_cast<double>(s);
    out << "<line x1=\"" << coord(x1 + 8) << "\" y1=\"" << coord(ly) << "\" x2=\"" << coord(x1 + 28)
        << "\" y2=\"" << coord(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << coord(x1 + 32) << "\" y=\"" << coord(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[s].name << "</text>\n";
  }

  out << "</svg>\n";
  return out.str();
}

std::string render_simplex_svg(const std::vector<Vec>& points, const std::string& title,
                               const Vec& mark) {
  if (points.empty()) throw ConfigError("csv", "no points to plot");
  for (const Vec& p : points)
    if (p.size() != 3) throw ConfigError("csv", "simplex plot needs 3-action strategies");
  if (mark.size() != 0 && mark.size() != 3)
    throw ConfigError("mark", "marker needs 3 barycentric coordinates");

  const int width = 520, height = 500;
  const double scale = 420, ox = 50, oy = height - 40;
  // Barycentric corners: action 1 bottom-left, 2 bottom-right, 3 top.
  const auto project = [&](const Vec& x) {
    const double u = x[1] + 0.5 * x[2];
    const double v = x[2] * std::sqrt(3.0) / 2.0;
    return std::make_pair(ox + scale * u, oy - scale * v);
  };

  std::ostringstream out;
  open_svg(out, width, height, title);

  Vec e1(3), e2(3), e3(3);
  e1 << 1, 0, 0;
  e2 << 0, 1, 0;
  e3 << 0, 0, 1;
  const auto [ax, ay] = project(e1);
  const auto [bx, by] = project(e2);
  const auto [cx, cy] = project(e3);
  out << "<polygon fill=\"none\" stroke=\"#444\" points=\"" << coord(ax) << ',' << coord(ay) << ' '
      << coord(bx) << ',' << coord(by) << ' ' << coord(cx) << ',' << coord(cy) << "\"/>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">\n";
  out << "<text x=\"" << coord(ax - 8) << "\" y=\"" << coord(ay + 14) << "\">1</text>\n";
  out << "<text x=\"" << coord(bx + 4) << "\" y=\"" << coord(by + 14) << "\">2</text>\n";
  out << "<text x=\"" << coord(cx) << "\" y=\"" << coord(cy - 8) << "\">3</text>\n";
  out << "</g>\n";

  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\" points=\"";
  for (const Vec& p : points) {
    const auto [u, v] = project(p);
    out << coord(u) << ',' << coord(v) << ' ';
  }
  out << "\"/>\n";

  const auto [su, sv] = project(points.front());
  out << "<circle cx=\"" << coord(su) << "\" cy=\"" << coord(sv)
      << "\" r=\"3.5\" fill=\"#2ca02c\"/>\n";
  if (mark.size() == 3) {
    const auto [mu, mv] = project(mark);
    out << "<path d=\"M " << coord(mu) << ' ' << coord(mv - 6) << " L " << coord(mu + 5.5) << ' '
        << coord(mv + 4) << " L " << coord(mu - 5.5) << ' ' << coord(mv + 4)
        << " Z\" fill=\"#d62728\"/>\n";
  }

  out << "</svg>\n";
  return out.str();
}

std::string render_cube_svg(const std::vector<Eigen::Vector3d>& points, const std::string& title) {
  if (points.empty()) throw ConfigError("csv", "no points to plot");

  const int width = 560, height = 540;
  const double scale = 330, ox = 70, oy = height - 80;
  // Cavalier parallel projection: depth recedes along (0.42, 0.30).
  const auto project = [&](double x, double y, double z) {
    const double u = x + 0.42 * y;
    const double v = z + 0.30 * y;
    return std::make_pair(ox + scale * u, oy - scale * v);
  };

  std::ostringstream out;
  open_svg(out, width, height, title);

  const int corners[8][3] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                             {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  const int edges[12][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 4},
                            {2, 6}, {3, 5}, {3, 6}, {4, 7}, {5, 7}, {6, 7}};
  out << "<g stroke=\"#999\" stroke-width=\"1\" stroke-dasharray=\"3,3\">\n";
  for (const auto& edge : edges) {
    const auto [u1, v1] =
        project(corners[edge[0]][0], corners[edge[0]][1], corners[edge[0]][2]);
    const auto [u2, v2] =
        project(corners[edge[1]][0], corners[edge[1]][1], corners[edge[1]][2]);
    out << "<line x1=\"" << coord(u1) << "\" y1=\"" << coord(v1) << "\" x2=\"" << coord(u2)
        << "\" y2=\"" << coord(v2) << "\"/>\n";
  }
  out << "</g>\n";

  const auto [d1u, d1v] = project(0, 0, 0);
  const auto [d2u, d2v] = project(1, 1, 1);
  out << "<line x1=\"" << coord(d1u) << "\" y1=\"" << coord(d1v) << "\" x2=\"" << coord(d2u)
      << "\" y2=\"" << coord(d2v) << "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";

  out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">\n";
  out << "<text x=\"" << coord(d1u - 28) << "\" y=\"" << coord(d1v + 14) << "\">(0,0,0)</text>\n";
  out << "<text x=\"" << coord(d2u + 4) << "\" y=\"" << coord(d2v - 6) << "\">(1,1,1)</text>\n";
  out << "</g>\n";

  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\" points=\"";
  for (const auto& p : points) {
    const auto [u, v] = project(p[0], p[1], p[2]);
    out << coord(u) << ',' << coord(v) << ' ';
  }
  out << "\"/>\n";
  const auto [su, sv] = project(points.front()[0], points.front()[1], points.front()[2]);
  out << "<circle cx=\"" << coord(su) << "\" cy=\"" << coord(sv)
      << "\" r=\"3.5\" fill=\"#2ca02c\"/>\n";

  out << "</svg>\n";
  return out.str();
}

}  // namespace polygame
