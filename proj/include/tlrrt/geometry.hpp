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

#ifndef TLRRT_GEOMETRY_HPP_
#define TLRRT_GEOMETRY_HPP_

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tlrrt/buchi.hpp"
#include "tlrrt/formula.hpp"

namespace tlrrt
{

/// Tolerance for all geometric predicates, in workspace units.
inline constexpr double kGeoEps = 1e-9;

struct Vec2
{
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Vec2 &) const = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Simple polygon, counter-clockwise after normalization.
using Polygon = std::vector<Vec2>;

double signed_area(const Polygon & poly);
Vec2 centroid(const Polygon & poly);
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
double boundary_distance(const Polygon & poly, Vec2 p);
bool is_simple(const Polygon & poly);

enum class PointClass { kOutside, kBoundary, kInside };

/// Boundary means within kGeoEps of an edge.
PointClass classify_point(const Polygon & poly, Vec2 p);

/// Membership of the segment p->q split at every boundary contact: the
/// status of each maximal open sub-interval, in order from p to q.
std::vector<PointClass> segment_profile(const Polygon & poly, Vec2 p, Vec2 q);

/// True if the segment meets the open interior of the polygon.
bool segment_hits_interior(const Polygon & poly, Vec2 p, Vec2 q);

/// Disjoint closures (shared boundary points count as touching).
bool polygons_disjoint(const Polygon & a, const Polygon & b);

struct Bounds
{
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 1.0;
  double ymax = 1.0;

  bool contains(Vec2 p) const
  {
    return p.x >= xmin - kGeoEps && p.x <= xmax + kGeoEps && p.y >= ymin - kGeoEps && p.y <= ymax + kGeoEps;
  }
  double area() const { return (xmax - xmin) * (ymax - ymin); }
};

struct Obstacle
{
  std::string name;
  Polygon polygon;
};

struct Region
{
  int label = 0;  // 1-based
  Polygon polygon;
};

enum class SeparationMetric { kChebyshev, kEuclidean };

class GeometryError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Bounded planar workspace: open obstacles, closed labeled regions.
class Workspace
{
public:
  Workspace() = default;
  /// Validates and normalizes polygons to CCW; regions are sorted by label,
  /// which must be exactly 1..W.
  Workspace(Bounds bounds, std::vector<Obstacle> obstacles, std::vector<Region> regions, int n_robots,
            double min_separation, SeparationMetric metric = SeparationMetric::kChebyshev);

  const Bounds & bounds() const { return bounds_; }
  const std::vector<Obstacle> & obstacles() const { return obstacles_; }
  const std::vector<Region> & regions() const { return regions_; }
  const Region & region(int label) const { return regions_.at(static_cast<std::size_t>(label - 1)); }
  int n_regions() const { return static_cast<int>(regions_.size()); }
  int n_robots() const { return n_robots_; }
  double min_separation() const { return min_separation_; }
  SeparationMetric separation_metric() const { return metric_; }

  RegionDisjointness disjointness() const;

private:
  Bounds bounds_;
  std::vector<Obstacle> obstacles_;
  std::vector<Region> regions_;
  int n_robots_ = 1;
  double min_separation_ = 0.0;
  SeparationMetric metric_ = SeparationMetric::kChebyshev;
};

/// Flattened joint position (x1, y1, ..., xN, yN).
using JointState = std::vector<double>;

inline Vec2 robot_pos(const JointState & x, int i)
{
  return {x[static_cast<std::size_t>(2 * i)], x[static_cast<std::size_t>(2 * i + 1)]};
}

inline void set_robot_pos(JointState & x, int i, Vec2 p)
{
  x[static_cast<std::size_t>(2 * i)] = p.x;
  x[static_cast<std::size_t>(2 * i + 1)] = p.y;
}

/// Region label containing p (boundary inclusive, lowest label wins).
std::optional<int> region_of(const Workspace & w, Vec2 p);

/// Atom pi(robot, region) satisfied at p; `robot` is 1-based.
std::optional<AtomicProp> label_of(const Workspace & w, Vec2 p, int robot);

/// L(x): atoms satisfied by a joint position.
LabelSet labels_of(const Workspace & w, const JointState & x);

bool point_free(const Workspace & w, Vec2 p);
bool segment_free(const Workspace & w, Vec2 p, Vec2 q);
int boundary_crossings(const Workspace & w, Vec2 p, Vec2 q, int label);
bool robot_transition_valid(const Workspace & w, Vec2 p, Vec2 q);
bool joint_state_valid(const Workspace & w, const JointState & x);
bool joint_transition_valid(const Workspace & w, const JointState & x, const JointState & x2);

/// Separation test for one robot pair under the workspace metric.
bool separated(const Workspace & w, Vec2 a, Vec2 b);

/// Free area of the bounds raised to the number of robots.
double free_measure(const Workspace & w);

/// Area of the union of the obstacles clipped to the bounds.
double obstacle_union_area(const Workspace & w);

class NoPathError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Visibility graph over obstacle vertices; shortest obstacle-avoiding paths.
class VisibilityGraph
{
public:
  explicit VisibilityGraph(const Workspace & w);

  /// Vertex sequence [p, v1, ..., q]; throws NoPathError when disconnected.
  std::vector<Vec2> geodesic(Vec2 p, Vec2 q) const;
  const std::vector<Vec2> & vertices() const { return vertices_; }
  const std::vector<std::vector<std::pair<int, double>>> & adjacency() const { return adj_; }

private:
  const Workspace * w_;
  std::vector<Vec2> vertices_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
};

double polyline_length(const std::vector<Vec2> & path);

}  // namespace tlrrt

#endif  // TLRRT_GEOMETRY_HPP_
