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

#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "tlrrt/geometry.hpp"
#include "tlrrt/scenario.hpp"

using namespace tlrrt;

namespace
{

Vec2 random_point(Rng & rng, const Bounds & b)
{
  return {rng.uniform(b.xmin, b.xmax), rng.uniform(b.ymin, b.ymax)};
}

}  // namespace

TEST_CASE("label_of")
{
  const Workspace w = fixtures::small_workspace(2);
  CHECK(label_of(w, {0.15, 0.15}, 1) == AtomicProp{1, 1});
  CHECK(label_of(w, {0.85, 0.85}, 2) == AtomicProp{2, 2});
  CHECK_FALSE(label_of(w, {0.3, 0.3}, 1).has_value());
  CHECK(label_of(w, {0.1, 0.1}, 1) == AtomicProp{1, 1});
  CHECK(label_of(w, {0.2, 0.15}, 2) == AtomicProp{2, 1});
  CHECK(labels_of(w, {0.15, 0.15, 0.85, 0.85}) == LabelSet{{1, 1}, {2, 2}});
  CHECK(labels_of(w, {0.3, 0.3, 0.3, 0.7}).empty());
}

TEST_CASE("overlapping regions resolve to the lowest label")
{
  const Polygon a{{0.1, 0.1}, {0.5, 0.1}, {0.5, 0.5}, {0.1, 0.5}};
  const Polygon b{{0.3, 0.3}, {0.7, 0.3}, {0.7, 0.7}, {0.3, 0.7}};
  const Workspace w({0, 0, 1, 1}, {}, {{2, b}, {1, a}}, 1, 0.0);
  CHECK(region_of(w, {0.4, 0.4}) == 1);
  CHECK(region_of(w, {0.6, 0.6}) == 2);
  CHECK_FALSE(w.disjointness()[0][1]);
}

TEST_CASE("workspace validation")
{
  const Polygon tri{{0.1, 0.1}, {0.2, 0.1}, {0.1, 0.2}};
  CHECK_THROWS_AS(Workspace({0, 0, 1, 1}, {}, {{2, tri}}, 1, 0.0), GeometryError);
  CHECK_THROWS_AS(Workspace({0, 0, 1, 1}, {}, {{1, Polygon{{0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}}}}, 1, 0.0),
                  GeometryError);
  const Polygon bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  CHECK_THROWS_AS(Workspace({0, 0, 1, 1}, {{"x", bowtie}}, {}, 1, 0.0), GeometryError);
}

TEST_CASE("point_free treats obstacles as open")
{
  const Workspace w = fixtures::small_workspace();
  CHECK_FALSE(point_free(w, {0.5, 0.5}));
  CHECK(point_free(w, {0.4, 0.5}));
  CHECK(point_free(w, {0.4, 0.4}));
  CHECK(point_free(w, {0.3, 0.5}));
  CHECK_FALSE(point_free(w, {1.2, 0.5}));
}

TEST_CASE("point_free agrees with a raster oracle away from boundaries")
{
  const Workspace w = case1().workspace;
  Rng rng(31);
  int checked = 0;
  for (int k = 0; k < 20000; ++k) {
    const Vec2 p = random_point(rng, w.bounds());
    bool near = false;
    bool in = false;
    for (const auto & o : w.obstacles()) {
      near = near || oracle::dist_to_boundary(o.polygon, p) < 1e-6;
      in = in || oracle::inside(o.polygon, p);
    }
    if (near) {
      continue;
    }
    ++checked;
    REQUIRE(point_free(w, p) == !in);
  }
  CHECK(checked > 19000);
}

TEST_CASE("segment_free")
{
  const Workspace w = fixtures::small_workspace();
  CHECK_FALSE(segment_free(w, {0.3, 0.5}, {0.7, 0.5}));
  CHECK(segment_free(w, {0.3, 0.3}, {0.3, 0.3}));
  CHECK(segment_free(w, {0.3, 0.4}, {0.7, 0.4}));
  CHECK(segment_free(w, {0.3, 0.3}, {0.7, 0.7}) == false);
  CHECK_FALSE(segment_free(w, {0.9, 0.5}, {1.1, 0.5}));
}

TEST_CASE("boundary_crossings")
{
  const Workspace w = fixtures::small_workspace();
  CHECK(boundary_crossings(w, {0.05, 0.15}, {0.25, 0.15}, 1) == 2);
  CHECK(boundary_crossings(w, {0.05, 0.3}, {0.25, 0.3}, 1) == 0);
  CHECK(boundary_crossings(w, {0.05, 0.15}, {0.15, 0.15}, 1) == 1);
  CHECK(boundary_crossings(w, {0.15, 0.15}, {0.15, 0.15}, 1) == 0);
  // Endpoint on the boundary and a tangential touch contribute nothing.
  CHECK(boundary_crossings(w, {0.1, 0.15}, {0.05, 0.15}, 1) == 0);
  CHECK(boundary_crossings(w, {0.0, 0.2}, {0.2, 0.0}, 1) == 0);
  CHECK(boundary_crossings(w, {0.05, 0.2}, {0.3, 0.2}, 1) == 0);
}

TEST_CASE("robot_transition_valid")
{
  const Workspace w = fixtures::small_workspace();
  CHECK_FALSE(robot_transition_valid(w, {0.05, 0.15}, {0.25, 0.15}));
  CHECK(robot_transition_valid(w, {0.05, 0.15}, {0.15, 0.15}));
  CHECK(robot_transition_valid(w, {0.15, 0.15}, {0.3, 0.15}));
  CHECK_FALSE(robot_transition_valid(w, {0.3, 0.5}, {0.7, 0.5}));
}

TEST_CASE("robot_transition_valid agrees with label sampling in the case study environment")
{
  const Workspace w = case1().workspace;
  Rng rng(32);
  int checked = 0;
  int valid = 0;
  int crossing = 0;
  for (int k = 0; k < 10000; ++k) {
    const Vec2 p = random_point(rng, w.bounds());
    Vec2 q;
    do {
      const double len = rng.uniform(0.0, 0.5);
      const double th = rng.uniform(0.0, 2.0 * M_PI);
      q = {p.x + len * std::cos(th), p.y + len * std::sin(th)};
    } while (!w.bounds().contains(q));
    if (oracle::near_degenerate(w, p, q, 1e-3)) {
      continue;
    }
    ++checked;
    const bool got = robot_transition_valid(w, p, q);
    REQUIRE(got == oracle::transition_valid_by_sampling(w, p, q, 1e-4));
    REQUIRE(got == robot_transition_valid(w, q, p));
    valid += got ? 1 : 0;
    if (segment_free(w, p, q) && !got) {
      ++crossing;
    }
  }
  CHECK(checked > 8000);
  CHECK(valid > 1000);
  CHECK(checked - valid > 1000);
  CHECK(crossing > 10);
}

TEST_CASE("joint validity with per-axis separation")
{
  const Workspace w = fixtures::small_workspace(2, 0.005);
  CHECK(joint_state_valid(w, {0.1, 0.1, 0.2, 0.2}));
  CHECK_FALSE(joint_state_valid(w, {0.3, 0.3, 0.3, 0.3}));
  CHECK_FALSE(joint_state_valid(w, {0.0, 0.0, 0.004, 0.004}));
  CHECK(joint_state_valid(w, {0.0, 0.0, 0.006, 0.0}));
  CHECK_FALSE(joint_state_valid(w, {0.5, 0.5, 0.2, 0.2}));

  const Workspace e({0, 0, 1, 1}, {}, {}, 2, 0.005, SeparationMetric::kEuclidean);
  CHECK_FALSE(joint_state_valid(e, {0.0, 0.0, 0.004, 0.0}));
  CHECK(joint_state_valid(e, {0.0, 0.0, 0.004, 0.004}));

  const Workspace one = fixtures::small_workspace(1);
  CHECK(joint_transition_valid(one, {0.05, 0.15}, {0.15, 0.15}) ==
        robot_transition_valid(one, {0.05, 0.15}, {0.15, 0.15}));
  CHECK_FALSE(joint_transition_valid(w, {0.3, 0.3, 0.05, 0.15}, {0.3, 0.35, 0.25, 0.15}));
  CHECK_FALSE(joint_transition_valid(w, {0.3, 0.3, 0.7, 0.3}, {0.3, 0.35, 0.302, 0.35}));
  CHECK(joint_transition_valid(w, {0.3, 0.3, 0.7, 0.3}, {0.3, 0.35, 0.7, 0.35}));
}

TEST_CASE("free_measure")
{
  const Workspace empty({0, 0, 1, 1}, {}, {}, 1, 0.0);
  CHECK(free_measure(empty) == doctest::Approx(1.0));
  const Polygon box{{0.1, 0.1}, {0.2, 0.1}, {0.2, 0.3}, {0.1, 0.3}};
  CHECK(free_measure(Workspace({0, 0, 1, 1}, {{"b", box}}, {}, 1, 0.0)) == doctest::Approx(0.98));
  CHECK(free_measure(Workspace({0, 0, 1, 1}, {{"b", box}}, {}, 2, 0.0)) == doctest::Approx(0.9604));
  // Overlapping obstacles are counted once.
  const Polygon box2{{0.15, 0.1}, {0.25, 0.1}, {0.25, 0.3}, {0.15, 0.3}};
  CHECK(free_measure(Workspace({0, 0, 1, 1}, {{"a", box}, {"b", box2}}, {}, 1, 0.0)) == doctest::Approx(0.97));
  const double m = free_measure(case2().workspace);
  CHECK(m > 0.0);
  CHECK(m <= 1.0);
}

TEST_CASE("geodesic basics")
{
  const Workspace open({0, 0, 1, 1}, {}, {}, 1, 0.0);
  const VisibilityGraph vo(open);
  CHECK(vo.geodesic({0.1, 0.1}, {0.9, 0.8}) == std::vector<Vec2>{{0.1, 0.1}, {0.9, 0.8}});

  const Workspace w = fixtures::small_workspace();
  const VisibilityGraph vg(w);
  const auto path = vg.geodesic({0.3, 0.5}, {0.7, 0.5});
  REQUIRE(path.size() == 4);
  CHECK(polyline_length(path) > 0.4);
  CHECK(polyline_length(path) == doctest::Approx(2 * std::hypot(0.1, 0.1) + 0.2));
  CHECK(path[1].x == doctest::Approx(0.4));
  CHECK(std::abs(path[1].y - 0.5) == doctest::Approx(0.1));

  const auto direct = vg.geodesic({0.3, 0.3}, {0.3, 0.7});
  CHECK(direct.size() == 2);

  // A walled-off pocket is unreachable.
  const Polygon left{{0.2, -0.1}, {0.3, -0.1}, {0.3, 1.1}, {0.2, 1.1}};
  const Workspace split({0, 0, 1, 1}, {{"wall", left}}, {}, 1, 0.0);
  CHECK_THROWS_AS(VisibilityGraph(split).geodesic({0.1, 0.5}, {0.8, 0.5}), NoPathError);
}

TEST_CASE("geodesic lengths match an any-angle grid search")
{
  const Workspace w = case1().workspace;
  const VisibilityGraph vg(w);
  const oracle::GridGeodesic grid(w, 200, 4);
  Rng rng(33);
  int n = 0;
  double worst = 0.0;
  while (n < 100) {
    const Vec2 p = random_point(rng, w.bounds());
    const Vec2 q = random_point(rng, w.bounds());
    bool clear = true;
    for (const auto & o : w.obstacles()) {
      clear = clear && !oracle::inside(o.polygon, p) && !oracle::inside(o.polygon, q) &&
              oracle::dist_to_boundary(o.polygon, p) > 0.02 && oracle::dist_to_boundary(o.polygon, q) > 0.02;
    }
    if (!clear || std::hypot(p.x - q.x, p.y - q.y) < 0.2) {
      continue;
    }
    ++n;
    const auto path = vg.geodesic(p, q);
    const double len = polyline_length(path);
    const double ref = grid.distance(p, q);
    worst = std::max(worst, std::abs(len - ref) / ref);
    INFO("p=(" << p.x << "," << p.y << ") q=(" << q.x << "," << q.y << ") vis=" << len << " grid=" << ref);
    REQUIRE(std::abs(len - ref) <= 0.02 * ref);
    REQUIRE(len >= std::hypot(p.x - q.x, p.y - q.y) - 1e-12);
    REQUIRE((path.size() == 2) == segment_free(w, p, q));
  }
  MESSAGE("worst relative gap " << worst);
}
