// Copyright 2026 The tlrrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tlrrt/geometry.hpp"

#include <algorithm>
#include <set>

namespace tlrrt
{

double signed_area(const Polygon & poly)
{
  double a = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    a += cross(poly[i], poly[(i + 1) % n]);
  }
  return 0.5 * a;
}

Vec2 centroid(const Polygon & poly)
{
  const double a = signed_area(poly);
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Vec2 p = poly[i];
    const Vec2 q = poly[(i + 1) % n];
    const double c = cross(p, q);
    cx += (p.x + q.x) * c;
    cy += (p.y + q.y) * c;
  }
  return {cx / (6.0 * a), cy / (6.0 * a)};
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b)
{
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

double boundary_distance(const Polygon & poly, Vec2 p)
{
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    d = std::min(d, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
  }
  return d;
}

namespace
{

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d)
{
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  return point_segment_distance(c, a, b) <= kGeoEps || point_segment_distance(d, a, b) <= kGeoEps ||
         point_segment_distance(a, c, d) <= kGeoEps || point_segment_distance(b, c, d) <= kGeoEps;
}

struct Box
{
  double xmin, ymin, xmax, ymax;
};

Box box_of(const Polygon & poly)
{
  Box b{poly[0].x, poly[0].y, poly[0].x, poly[0].y};
  for (const auto & v : poly) {
    b.xmin = std::min(b.xmin, v.x);
    b.ymin = std::min(b.ymin, v.y);
    b.xmax = std::max(b.xmax, v.x);
    b.ymax = std::max(b.ymax, v.y);
  }
  return b;
}

bool segment_outside_box(const Box & b, Vec2 p, Vec2 q)
{
  return std::max(p.x, q.x) < b.xmin - kGeoEps || std::min(p.x, q.x) > b.xmax + kGeoEps ||
         std::max(p.y, q.y) < b.ymin - kGeoEps || std::min(p.y, q.y) > b.ymax + kGeoEps;
}

}  // namespace

bool is_simple(const Polygon & poly)
{
  const std::size_t n = poly.size();
  if (n < 3 || std::abs(signed_area(poly)) <= kGeoEps) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (norm(poly[(i + 1) % n] - poly[i]) <= kGeoEps) {
      return false;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        continue;
      }
      if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) {
        return false;
      }
    }
  }
  return true;
}

PointClass classify_point(const Polygon & poly, Vec2 p)
{
  if (boundary_distance(poly, p) <= kGeoEps) {
    return PointClass::kBoundary;
  }
  bool inside = false;
  for (std::size_t i = 0, n = poly.size(), j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) {
        inside = !inside;
      }
    }
  }
  return inside ? PointClass::kInside : PointClass::kOutside;
}

std::vector<PointClass> segment_profile(const Polygon & poly, Vec2 p, Vec2 q)
{
  const Vec2 r = q - p;
  const double len = norm(r);
  if (len <= kGeoEps) {
    return {};
  }
  std::vector<double> ts{0.0, 1.0};
  const double tol_t = kGeoEps / len;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    const Vec2 s = b - a;
    const double slen = norm(s);
    const double d = cross(r, s);
    if (std::abs(d) > 1e-14 * len * slen) {
      const double t = cross(a - p, s) / d;
      const double u = cross(a - p, r) / d;
      const double tol_u = kGeoEps / slen;
      if (t >= -tol_t && t <= 1.0 + tol_t && u >= -tol_u && u <= 1.0 + tol_u) {
        ts.push_back(std::clamp(t, 0.0, 1.0));
      }
    } else if (std::abs(cross(a - p, r)) / len <= kGeoEps) {
      for (Vec2 v : {a, b}) {
        const double t = dot(v - p, r) / (len * len);
        if (t > 0.0 && t < 1.0) {
          ts.push_back(t);
        }
      }
    }
    // Vertices grazing the segment split it too.
    if (point_segment_distance(a, p, q) <= kGeoEps) {
      ts.push_back(std::clamp(dot(a - p, r) / (len * len), 0.0, 1.0));
    }
  }
  std::sort(ts.begin(), ts.end());
  std::vector<PointClass> out;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (ts[i + 1] - ts[i] <= 1e-12) {
      continue;
    }
    const double tm = 0.5 * (ts[i] + ts[i + 1]);
    out.push_back(classify_point(poly, p + tm * r));
  }
  return out;
}

bool segment_hits_interior(const Polygon & poly, Vec2 p, Vec2 q)
{
  if (segment_outside_box(box_of(poly), p, q)) {
    return false;
  }
  if (norm(q - p) <= kGeoEps) {
    return classify_point(poly, p) == PointClass::kInside;
  }
  for (PointClass c : segment_profile(poly, p, q)) {
    if (c == PointClass::kInside) {
      return true;
    }
  }
  return false;
}

bool polygons_disjoint(const Polygon & a, const Polygon & b)
{
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (segments_intersect(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()])) {
        return false;
      }
    }
  }
  return classify_point(b, a[0]) == PointClass::kOutside && classify_point(a, b[0]) == PointClass::kOutside;
}

// ---------------------------------------------------------------------------
// Workspace

Workspace::Workspace(Bounds bounds, std::vector<Obstacle> obstacles, std::vector<Region> regions,
                     int n_robots, double min_separation, SeparationMetric metric)
  : bounds_(bounds),
    obstacles_(std::move(obstacles)),
    regions_(std::move(regions)),
    n_robots_(n_robots),
    min_separation_(min_separation),
    metric_(metric)
{
  if (!(bounds_.xmax > bounds_.xmin) || !(bounds_.ymax > bounds_.ymin)) {
    throw GeometryError("bounds must have positive extent");
  }
  if (n_robots_ < 1) {
    throw GeometryError("n_robots must be at least 1");
  }
  if (!(min_separation_ >= 0.0)) {
    throw GeometryError("min_separation must be non-negative");
  }
  auto normalize = [](Polygon & poly, const std::string & what) {
    if (!is_simple(poly)) {
      throw GeometryError(what + " is not a simple polygon with positive area");
    }
    if (signed_area(poly) < 0.0) {
      std::reverse(poly.begin(), poly.end());
    }
  };
  for (auto & o : obstacles_) {
    normalize(o.polygon, "obstacle '" + o.name + "'");
  }
  std::sort(regions_.begin(), regions_.end(), [](const Region & a, const Region & b) { return a.label < b.label; });
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    if (regions_[i].label != static_cast<int>(i) + 1) {
      throw GeometryError("region labels must be exactly 1..W without gaps or duplicates");
    }
    normalize(regions_[i].polygon, "region " + std::to_string(regions_[i].label));
    for (const auto & v : regions_[i].polygon) {
      if (!bounds_.contains(v)) {
        throw GeometryError("region " + std::to_string(regions_[i].label) + " leaves the bounds");
      }
    }
  }
}

RegionDisjointness Workspace::disjointness() const
{
  const std::size_t w = regions_.size();
  RegionDisjointness d(w, std::vector<bool>(w, false));
  for (std::size_t i = 0; i < w; ++i) {
    for (std::size_t j = i + 1; j < w; ++j) {
      d[i][j] = d[j][i] = polygons_disjoint(regions_[i].polygon, regions_[j].polygon);
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Predicates

std::optional<int> region_of(const Workspace & w, Vec2 p)
{
  for (const auto & r : w.regions()) {
    if (classify_point(r.polygon, p) != PointClass::kOutside) {
      return r.label;
    }
  }
  return std::nullopt;
}

std::optional<AtomicProp> label_of(const Workspace & w, Vec2 p, int robot)
{
  if (auto r = region_of(w, p)) {
    return AtomicProp{robot, *r};
  }
  return std::nullopt;
}

LabelSet labels_of(const Workspace & w, const JointState & x)
{
  std::vector<AtomicProp> atoms;
  const int n = static_cast<int>(x.size() / 2);
  for (int i = 0; i < n; ++i) {
    if (auto a = label_of(w, robot_pos(x, i), i + 1)) {
      atoms.push_back(*a);
    }
  }
  return LabelSet(std::move(atoms));
}

bool point_free(const Workspace & w, Vec2 p)
{
  if (!w.bounds().contains(p)) {
    return false;
  }
  for (const auto & o : w.obstacles()) {
    if (classify_point(o.polygon, p) == PointClass::kInside) {
      return false;
    }
  }
  return true;
}

bool segment_free(const Workspace & w, Vec2 p, Vec2 q)
{
  if (!w.bounds().contains(p) || !w.bounds().contains(q)) {
    return false;
  }
  for (const auto & o : w.obstacles()) {
    if (segment_hits_interior(o.polygon, p, q)) {
      return false;
    }
  }
  return true;
}

int boundary_crossings(const Workspace & w, Vec2 p, Vec2 q, int label)
{
  const Polygon & poly = w.region(label).polygon;
  if (segment_outside_box(box_of(poly), p, q)) {
    return 0;
  }
  int count = 0;
  std::optional<PointClass> last;
  for (PointClass c : segment_profile(poly, p, q)) {
    if (c == PointClass::kBoundary) {
      continue;
    }
    if (last && *last != c) {
      ++count;
    }
    last = c;
  }
  return count;
}

bool robot_transition_valid(const Workspace & w, Vec2 p, Vec2 q)
{
  if (!segment_free(w, p, q)) {
    return false;
  }
  for (const auto & r : w.regions()) {
    if (boundary_crossings(w, p, q, r.label) > 1) {
      return false;
    }
  }
  return true;
}

bool separated(const Workspace & w, Vec2 a, Vec2 b)
{
  const double r = w.min_separation();
  if (w.separation_metric() == SeparationMetric::kEuclidean) {
    return norm(a - b) > r;
  }
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)) > r;
}

bool joint_state_valid(const Workspace & w, const JointState & x)
{
  const int n = static_cast<int>(x.size() / 2);
  for (int i = 0; i < n; ++i) {
    if (!point_free(w, robot_pos(x, i))) {
      return false;
    }
    for (int j = 0; j < i; ++j) {
      if (!separated(w, robot_pos(x, i), robot_pos(x, j))) {
        return false;
      }
    }
  }
  return true;
}

bool joint_transition_valid(const Workspace & w, const JointState & x, const JointState & x2)
{
  const int n = static_cast<int>(x.size() / 2);
  for (int i = 0; i < n; ++i) {
    if (!robot_transition_valid(w, robot_pos(x, i), robot_pos(x2, i))) {
      return false;
    }
  }
  return joint_state_valid(w, x2);
}

// ---------------------------------------------------------------------------
// Measure

double obstacle_union_area(const Workspace & w)
{
  const Bounds & b = w.bounds();
  std::vector<const Polygon *> polys;
  for (const auto & o : w.obstacles()) {
    polys.push_back(&o.polygon);
  }
  // Slab decomposition: between consecutive event abscissae the union's
  // vertical cross-section length is affine in x, so the midpoint rule is exact.
  std::vector<double> xs{b.xmin, b.xmax};
  std::vector<std::pair<Vec2, Vec2>> edges;
  for (const Polygon * p : polys) {
    for (std::size_t i = 0; i < p->size(); ++i) {
      xs.push_back((*p)[i].x);
      edges.emplace_back((*p)[i], (*p)[(i + 1) % p->size()]);
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto [a, bb] = edges[i];
      const auto [c, d] = edges[j];
      const Vec2 r = bb - a;
      const Vec2 s = d - c;
      const double den = cross(r, s);
      if (std::abs(den) < 1e-15) {
        continue;
      }
      const double t = cross(c - a, s) / den;
      const double u = cross(c - a, r) / den;
      if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) {
        xs.push_back(a.x + t * r.x);
      }
    }
  }
  std::sort(xs.begin(), xs.end());
  double area = 0.0;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double x0 = std::max(xs[k], b.xmin);
    const double x1 = std::min(xs[k + 1], b.xmax);
    if (x1 - x0 <= 0.0) {
      continue;
    }
    const double xm = 0.5 * (x0 + x1);
    std::vector<std::pair<double, double>> spans;
    for (const Polygon * p : polys) {
      std::vector<double> ys;
      for (std::size_t i = 0, n = p->size(); i < n; ++i) {
        const Vec2 a = (*p)[i];
        const Vec2 c = (*p)[(i + 1) % n];
        if ((a.x > xm) != (c.x > xm)) {
          ys.push_back(a.y + (xm - a.x) * (c.y - a.y) / (c.x - a.x));
        }
      }
      std::sort(ys.begin(), ys.end());
      for (std::size_t i = 0; i + 1 < ys.size(); i += 2) {
        const double lo = std::max(ys[i], b.ymin);
        const double hi = std::min(ys[i + 1], b.ymax);
        if (hi > lo) {
          spans.emplace_back(lo, hi);
        }
      }
    }
    std::sort(spans.begin(), spans.end());
    double len = 0.0;
    double cur_lo = 0.0;
    double cur_hi = -std::numeric_limits<double>::infinity();
    for (const auto & [lo, hi] : spans) {
      if (lo > cur_hi) {
        if (cur_hi > cur_lo) {
          len += cur_hi - cur_lo;
        }
        cur_lo = lo;
        cur_hi = hi;
      } else {
        cur_hi = std::max(cur_hi, hi);
      }
    }
    if (cur_hi > cur_lo) {
      len += cur_hi - cur_lo;
    }
    area += (x1 - x0) * len;
  }
  return area;
}

double free_measure(const Workspace & w)
{
  return std::pow(w.bounds().area() - obstacle_union_area(w), w.n_robots());
}

double polyline_length(const std::vector<Vec2> & path)
{
  double len = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    len += norm(path[i] - path[i - 1]);
  }
  return len;
}

}  // namespace tlrrt
