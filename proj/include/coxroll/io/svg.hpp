#pragma once

// SVG drawing of 2-dimensional developments: Poincare disk for hyperbolic
// mirrors, orthographic view for spherical ones, plain coordinates for
// Euclidean ones. Tiles are filled paths; the developed chamber's boundary
// walls are stroked on top.

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "coxroll/develop.hpp"

namespace coxroll::io {

namespace detail {

inline constexpr int kSamplesPerEdge = 16;
inline constexpr double kCanvas = 600.0;

class Projector {
 public:
  explicit Projector(const DevelopedFigure& df) : s_(df.chart.mirror) {
    if (s_.kind == SpaceKind::Spherical) {
      // View from the normalized centroid of all tile vertices.
      Eigen::Vector3d c = Eigen::Vector3d::Zero();
      for (const auto& t : df.tiles)
        for (const auto& p : t.vertices) c += p.head<3>();
      if (c.norm() < 1e-9) c = Eigen::Vector3d::UnitZ();
      view_ = c.normalized();
      Eigen::Vector3d helper = std::abs(view_.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
      e1_ = (helper - helper.dot(view_) * view_).normalized();
      e2_ = view_.cross(e1_);
    }
  }

  /// Point on the geodesic from p to q at parameter t in [0, 1].
  Eigen::VectorXd along(const Eigen::VectorXd& p, const Eigen::VectorXd& q, double t) const {
    Eigen::VectorXd x = (1 - t) * p + t * q;
    switch (s_.kind) {
      case SpaceKind::Spherical: return x.normalized();
      case SpaceKind::Hyperbolic: return x / std::sqrt(-s_.point_inner(x, x));
      case SpaceKind::Euclidean: return x / x[2];
    }
    return x;
  }

  Eigen::Vector2d operator()(const Eigen::VectorXd& p) const {
    switch (s_.kind) {
      case SpaceKind::Spherical: return {p.head<3>().dot(e1_), p.head<3>().dot(e2_)};
      case SpaceKind::Hyperbolic: return {p[0] / (1 + p[2]), p[1] / (1 + p[2])};
      case SpaceKind::Euclidean: return {p[0] / p[2], p[1] / p[2]};
    }
    return {0, 0};
  }

  std::vector<Eigen::Vector2d> segment(const Eigen::VectorXd& p, const Eigen::VectorXd& q) const {
    std::vector<Eigen::Vector2d> out;
    for (int i = 0; i <= kSamplesPerEdge; ++i) out.push_back((*this)(along(p, q, double(i) / kSamplesPerEdge)));
    return out;
  }

 private:
  SpaceModel s_;
  Eigen::Vector3d view_, e1_, e2_;
};

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::abs(x) < 5e-4 ? 0.0 : x);
  return buf;
}

}  // namespace detail

inline std::string figure_svg(const DevelopedFigure& df) {
  if (df.dimension() != 2) throw DomainError("SVG output needs a 2-dimensional development");
  const SpaceModel& s = df.chart.mirror;
  detail::Projector proj(df);

  std::vector<std::vector<Eigen::Vector2d>> tiles;
  for (const auto& t : df.tiles) {
    std::vector<Eigen::Vector2d> path;
    for (size_t i = 0; i < t.vertices.size(); ++i) {
      auto seg = proj.segment(t.vertices[i], t.vertices[(i + 1) % t.vertices.size()]);
      path.insert(path.end(), seg.begin(), seg.end() - 1);
    }
    tiles.push_back(std::move(path));
  }
  std::vector<std::vector<Eigen::Vector2d>> walls;
  std::vector<int> wall_labels;
  for (const auto& w : df.walls) {
    const Tile& t = df.tiles[static_cast<size_t>(w.tile)];
    std::vector<Eigen::VectorXd> ends;
    for (int v : w.vertex_ids) {
      auto it = std::find(t.vertex_ids.begin(), t.vertex_ids.end(), v);
      if (it != t.vertex_ids.end()) ends.push_back(t.vertices[static_cast<size_t>(it - t.vertex_ids.begin())]);
    }
    if (ends.size() != 2) continue;
    walls.push_back(proj.segment(ends[0], ends[1]));
    wall_labels.push_back(w.label);
  }

  // Fit the picture (the whole disk for hyperbolic mirrors) into the canvas.
  double lo_x = std::numeric_limits<double>::max(), lo_y = lo_x, hi_x = -lo_x, hi_y = -lo_x;
  auto grow = [&](const Eigen::Vector2d& p) {
    lo_x = std::min(lo_x, p.x());
    lo_y = std::min(lo_y, p.y());
    hi_x = std::max(hi_x, p.x());
    hi_y = std::max(hi_y, p.y());
  };
  if (s.kind == SpaceKind::Hyperbolic) {
    grow({-1, -1});
    grow({1, 1});
  }
  for (const auto& path : tiles)
    for (const auto& p : path) grow(p);
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double scale = 0.9 * detail::kCanvas / span;
  const Eigen::Vector2d mid(0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y));
  auto screen = [&](const Eigen::Vector2d& p) {
    return Eigen::Vector2d(detail::kCanvas / 2 + scale * (p.x() - mid.x()), detail::kCanvas / 2 - scale * (p.y() - mid.y()));
  };
  auto path_data = [&](const std::vector<Eigen::Vector2d>& pts, bool closed) {
    std::string d;
    for (size_t i = 0; i < pts.size(); ++i) {
      Eigen::Vector2d q = screen(pts[i]);
      d += (i == 0 ? "M" : " L") + detail::fmt(q.x()) + " " + detail::fmt(q.y());
    }
    if (closed) d += " Z";
    return d;
  };

  std::ostringstream out;
  const std::string size = detail::fmt(detail::kCanvas);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
      << size << " " << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (s.kind == SpaceKind::Hyperbolic) {
    Eigen::Vector2d c = screen({0, 0});
    out << "<circle cx=\"" << detail::fmt(c.x()) << "\" cy=\"" << detail::fmt(c.y()) << "\" r=\"" << detail::fmt(scale)
        << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  }
  out << "<g class=\"tiles\" fill=\"#dde8f4\" stroke=\"#4a6fa5\" stroke-width=\"0.8\">\n";
  for (size_t i = 0; i < tiles.size(); ++i)
    out << "<path data-facet=\"" << df.tiles[i].facet + 1 << "\" d=\"" << path_data(tiles[i], true) << "\"/>\n";
  out << "</g>\n";
  out << "<g class=\"walls\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"3\" stroke-linecap=\"round\">\n";
  for (size_t i = 0; i < walls.size(); ++i)
    out << "<path data-label=\"" << label_string(wall_labels[i]) << "\" d=\"" << path_data(walls[i], false) << "\"/>\n";
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace coxroll::io
