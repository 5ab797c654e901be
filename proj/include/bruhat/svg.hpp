#pragma once

// SVG drawing of a rhombus tiling, i.e. a cubillage of Z([0,n], 2).

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bruhat/signs.hpp"
#include "bruhat/vertex_set.hpp"
#include "bruhat/zonotope.hpp"

namespace bruhat {

struct RenderOptions {
  bool labels = false;  // vertex labels A
  bool terms = false;   // signed tensor term inside each rhombus
  int unit = 40;        // pixels per coordinate step
};

/// Exact plane coordinates of ξ_A = Σ_{a∈A} (1, a): x = 2Σa - n|A| centres
/// the polygon, y = |A| is the height.
struct PlanePoint {
  long x = 0;
  long y = 0;
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

inline PlanePoint plane_point(VertexSet a, int n) {
  long sum = 0;
  for (int v : a) sum += v;
  return {2 * sum - static_cast<long>(n) * a.size(), a.size()};
}

/// The four corners of the rhombus of cube (L = {p < q}, A), in boundary
/// order A, A∪p, A∪p∪q, A∪q.
inline std::vector<VertexSet> rhombus_corners(VertexSet l, VertexSet a) {
  if (l.size() != 2) throw std::invalid_argument("rhombus needs |L| = 2");
  const int p = l.min();
  const int q = l.max();
  return {a, a.with(p), a.with(p).with(q), a.with(q)};
}

inline std::string render_svg(const Cubillage& q, const RenderOptions& opt = {}) {
  if (q.r != 2) throw std::invalid_argument("only r = 2 tilings are drawn");
  const int n = q.n;
  const long u = opt.unit < 2 ? 2 : opt.unit / 2 * 2;
  const long margin = u;
  long xmin = 0;
  long xmax = 0;
  for (const auto& [l, a] : q.cubes) {
    for (VertexSet c : rhombus_corners(l, a)) {
      const PlanePoint pt = plane_point(c, n);
      xmin = std::min(xmin, pt.x);
      xmax = std::max(xmax, pt.x);
    }
  }
  const long ymax = n + 1;
  const long width = 2 * margin + (xmax - xmin) * u / 2;
  const long height = 2 * margin + ymax * u;
  auto px = [&](const PlanePoint& pt) { return margin + (pt.x - xmin) * u / 2; };
  auto py = [&](const PlanePoint& pt) { return margin + (ymax - pt.y) * u; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width
      << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::vector<VertexSet> vertices;
  for (const auto& [l, a] : q.cubes) {
    const auto corners = rhombus_corners(l, a);
    out << "<polygon points=\"";
    for (std::size_t j = 0; j < corners.size(); ++j) {
      const PlanePoint pt = plane_point(corners[j], n);
      out << (j ? " " : "") << px(pt) << ',' << py(pt);
    }
    out << "\" fill=\"#e8eef7\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    vertices.insert(vertices.end(), corners.begin(), corners.end());
    if (opt.terms) {
      const VertexSet full = VertexSet::full(n);
      const VertexSet b = full - (l | a);
      const int eps = epsilon(l, a, b, n + 1);
      const PlanePoint lo = plane_point(corners[0], n);
      const PlanePoint hi = plane_point(corners[2], n);
      out << "<text x=\"" << (px(lo) + px(hi)) / 2 << "\" y=\""
          << (py(lo) + py(hi)) / 2 + 4
          << "\" font-family=\"monospace\" font-size=\"10\" "
             "text-anchor=\"middle\">"
          << (eps ? "-" : "+") << (l | a).to_string() << "⊗"
          << (l | b).to_string() << "</text>\n";
    }
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  for (VertexSet v : vertices) {
    const PlanePoint pt = plane_point(v, n);
    out << "<circle cx=\"" << px(pt) << "\" cy=\"" << py(pt)
        << "\" r=\"3\" fill=\"black\"/>\n";
    if (opt.labels) {
      out << "<text x=\"" << px(pt) + 5 << "\" y=\"" << py(pt) - 5
          << "\" font-family=\"monospace\" font-size=\"11\">"
          << v.to_string() << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace bruhat
