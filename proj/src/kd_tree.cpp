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

#include <algorithm>
#include <limits>

#include "tlrrt/rrt.hpp"

namespace tlrrt
{

double squared_distance(const std::vector<double> & a, const std::vector<double> & b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

int KdTree::insert(std::vector<double> p)
{
  const int id = static_cast<int>(points_.size());
  points_.push_back(std::move(p));
  const auto & pt = points_.back();
  Node fresh;
  fresh.point = id;
  if (nodes_.empty()) {
    nodes_.push_back(fresh);
    return id;
  }
  int cur = 0;
  while (true) {
    Node & n = nodes_[static_cast<std::size_t>(cur)];
    const auto axis = static_cast<std::size_t>(n.axis);
    const bool go_left = pt[axis] < points_[static_cast<std::size_t>(n.point)][axis];
    const int next = go_left ? n.left : n.right;
    if (next >= 0) {
      cur = next;
      continue;
    }
    fresh.axis = dim_ > 0 ? (n.axis + 1) % dim_ : 0;
    const int slot = static_cast<int>(nodes_.size());
    if (go_left) {
      n.left = slot;
    } else {
      n.right = slot;
    }
    nodes_.push_back(fresh);
    return id;
  }
}

int KdTree::nearest(const std::vector<double> & q) const
{
  if (nodes_.empty()) {
    return -1;
  }
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  // Depth-first with pruning on the splitting plane distance.
  std::vector<std::pair<int, double>> work{{0, 0.0}};
  while (!work.empty()) {
    const auto [ni, plane_d] = work.back();
    work.pop_back();
    if (plane_d > best_d) {
      continue;
    }
    const Node & n = nodes_[static_cast<std::size_t>(ni)];
    const auto & p = points_[static_cast<std::size_t>(n.point)];
    const double d = squared_distance(p, q);
    if (d < best_d || (d == best_d && n.point < best)) {
      best_d = d;
      best = n.point;
    }
    const auto axis = static_cast<std::size_t>(n.axis);
    const double diff = q[axis] - p[axis];
    const int near_side = diff < 0 ? n.left : n.right;
    const int far_side = diff < 0 ? n.right : n.left;
    // The far side is pushed first so the near side is explored first.
    if (far_side >= 0) {
      work.emplace_back(far_side, diff * diff);
    }
    if (near_side >= 0) {
      work.emplace_back(near_side, plane_d);
    }
  }
  return best;
}

std::vector<int> KdTree::within(const std::vector<double> & q, double r) const
{
  std::vector<int> out;
  if (nodes_.empty()) {
    return out;
  }
  const double r2 = r * r;
  std::vector<int> work{0};
  while (!work.empty()) {
    const Node & n = nodes_[static_cast<std::size_t>(work.back())];
    work.pop_back();
    const auto & p = points_[static_cast<std::size_t>(n.point)];
    if (squared_distance(p, q) <= r2) {
      out.push_back(n.point);
    }
    const auto axis = static_cast<std::size_t>(n.axis);
    const double diff = q[axis] - p[axis];
    if (n.left >= 0 && diff - r <= 0) {
      work.push_back(n.left);
    }
    if (n.right >= 0 && diff + r >= 0) {
      work.push_back(n.right);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int KdTree::find(const std::vector<double> & q) const
{
  if (nodes_.empty()) {
    return -1;
  }
  int cur = 0;
  while (cur >= 0) {
    const Node & n = nodes_[static_cast<std::size_t>(cur)];
    const auto & p = points_[static_cast<std::size_t>(n.point)];
    if (p == q) {
      return n.point;
    }
    const auto axis = static_cast<std::size_t>(n.axis);
    cur = q[axis] < p[axis] ? n.left : n.right;
  }
  return -1;
}

}  // namespace tlrrt
