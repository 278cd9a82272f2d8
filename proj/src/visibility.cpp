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
#include <functional>
#include <limits>
#include <queue>

#include "tlrrt/geometry.hpp"

namespace tlrrt
{

VisibilityGraph::VisibilityGraph(const Workspace & w)
  : w_(&w)
{
  for (const auto & o : w.obstacles()) {
    for (const auto & v : o.polygon) {
      if (point_free(w, v)) {
        vertices_.push_back(v);
      }
    }
  }
  adj_.resize(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      if (segment_free(w, vertices_[i], vertices_[j])) {
        const double d = norm(vertices_[i] - vertices_[j]);
        adj_[i].emplace_back(static_cast<int>(j), d);
        adj_[j].emplace_back(static_cast<int>(i), d);
      }
    }
  }
}

std::vector<Vec2> VisibilityGraph::geodesic(Vec2 p, Vec2 q) const
{
  const Workspace & w = *w_;
  if (!point_free(w, p) || !point_free(w, q)) {
    throw NoPathError("geodesic endpoints must be free");
  }
  if (segment_free(w, p, q)) {
    return {p, q};
  }
  // Node ids: vertices 0..n-1, source n, target n+1.
  const int n = static_cast<int>(vertices_.size());
  const int src = n;
  const int dst = n + 1;
  std::vector<std::vector<std::pair<int, double>>> extra(static_cast<std::size_t>(n));
  std::vector<std::pair<int, double>> from_src;
  for (int i = 0; i < n; ++i) {
    const Vec2 v = vertices_[static_cast<std::size_t>(i)];
    if (segment_free(w, p, v)) {
      from_src.emplace_back(i, norm(v - p));
    }
    if (segment_free(w, v, q)) {
      extra[static_cast<std::size_t>(i)].emplace_back(dst, norm(q - v));
    }
  }
  std::vector<double> dist(static_cast<std::size_t>(n + 2), std::numeric_limits<double>::infinity());
  std::vector<int> prev(static_cast<std::size_t>(n + 2), -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[static_cast<std::size_t>(src)] = 0.0;
  pq.emplace(0.0, src);
  while (!pq.empty()) {
    const auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[static_cast<std::size_t>(v)] || v == dst) {
      if (v == dst) {
        break;
      }
      continue;
    }
    auto relax = [&](int u, double len) {
      const double nd = d + len;
      if (nd < dist[static_cast<std::size_t>(u)]) {
        dist[static_cast<std::size_t>(u)] = nd;
        prev[static_cast<std::size_t>(u)] = v;
        pq.emplace(nd, u);
      }
    };
    if (v == src) {
      for (const auto & [u, len] : from_src) {
        relax(u, len);
      }
      continue;
    }
    for (const auto & [u, len] : adj_[static_cast<std::size_t>(v)]) {
      relax(u, len);
    }
    for (const auto & [u, len] : extra[static_cast<std::size_t>(v)]) {
      relax(u, len);
    }
  }
  if (prev[static_cast<std::size_t>(dst)] < 0) {
    throw NoPathError("no obstacle-free path between query points");
  }
  std::vector<Vec2> path{q};
  for (int v = prev[static_cast<std::size_t>(dst)]; v != src; v = prev[static_cast<std::size_t>(v)]) {
    path.push_back(vertices_[static_cast<std::size_t>(v)]);
  }
  path.push_back(p);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace tlrrt
