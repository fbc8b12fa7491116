#ifndef POLYGAME_SVG_HPP
#define POLYGAME_SVG_HPP

#include <string>
#include <vector>

#include "polygame/observe.hpp"

namespace polygame {

// Self-contained SVG 1.1 documents, hand-emitted polylines and labels.
// Numeric labels carry 6 significant digits.

// Observable-vs-time line chart, one polyline per series.
std::string render_series_svg(const std::vector<ObservableSeries>& series, const std::string& title);

// Barycentric projection of a 3-action strategy path onto the 2-simplex.
// mark, when nonempty, places an equilibrium star at that barycentric point.
std::string render_simplex_svg(const std::vector<Vec>& points, const std::string& title,
                               const Vec& mark = Vec());

// Parallel projection of the unit cube with the (0,0,0)-(1,1,1) equilibrium
// diagonal and the path of first coordinates of three binary agents.
std::string render_cube_svg(const std::vector<Eigen::Vector3d>& points, const std::string& title);

}  // namespace polygame

#endif  // POLYGAME_SVG_HPP
