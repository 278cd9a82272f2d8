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

#include "tlrrt/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace tlrrt
{

namespace
{

constexpr const char * kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                     "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

class Canvas
{
public:
  Canvas(const Bounds & b, int size) : b_(b)
  {
    const double wspan = b.xmax - b.xmin;
    const double hspan = b.ymax - b.ymin;
    scale_ = size / std::max(wspan, hspan);
  }

  std::string num(double v) const
  {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
  }
  std::string px(Vec2 p) const
  {
    return num((p.x - b_.xmin) * scale_) + "," + num((b_.ymax - p.y) * scale_);
  }
  /// Coordinate pair as two attributes, e.g. x="..." y="...".
  std::string attrs(Vec2 p, const char * xa, const char * ya) const
  {
    return std::string(xa) + "=\"" + num((p.x - b_.xmin) * scale_) + "\" " + ya + "=\"" +
           num((b_.ymax - p.y) * scale_) + "\"";
  }
  std::string points(const std::vector<Vec2> & pts) const
  {
    std::string s;
    for (const auto & p : pts) {
      s += (s.empty() ? "" : " ") + px(p);
    }
    return s;
  }
  double width() const { return (b_.xmax - b_.xmin) * scale_; }
  double height() const { return (b_.ymax - b_.ymin) * scale_; }

private:
  Bounds b_;
  double scale_ = 1.0;
};

std::vector<Vec2> robot_track(const std::vector<JointState> & xs, int i)
{
  std::vector<Vec2> out;
  for (const auto & x : xs) {
    out.push_back(robot_pos(x, i));
  }
  return out;
}

}  // namespace

std::string render_svg(const Workspace & w, const Plan * plan, int size_px)
{
  const Canvas c(w.bounds(), size_px);
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + c.num(c.width()) + "\" height=\"" +
       c.num(c.height()) + "\" viewBox=\"0 0 " + c.num(c.width()) + " " + c.num(c.height()) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + c.num(c.width()) + "\" height=\"" + c.num(c.height()) +
       "\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n";
  for (const auto & o : w.obstacles()) {
    s += "<polygon class=\"obstacle\" points=\"" + c.points(o.polygon) + "\" fill=\"#7f7f7f\"/>\n";
  }
  for (const auto & r : w.regions()) {
    s += "<polygon class=\"region\" points=\"" + c.points(r.polygon) +
         "\" fill=\"none\" stroke=\"#1f3f7f\" stroke-width=\"1.5\"/>\n";
    s += "<text " + c.attrs(centroid(r.polygon), "x", "y") + " font-size=\"14\" text-anchor=\"middle\" dominant-baseline=\"middle\">l" + std::to_string(r.label) +
         "</text>\n";
  }
  if (plan && !plan->prefix.empty()) {
    std::vector<JointState> loop;
    if (!plan->suffix.empty()) {
      loop.push_back(plan->prefix.back());
      loop.insert(loop.end(), plan->suffix.begin(), plan->suffix.end());
      loop.push_back(plan->prefix.back());
    }
    for (int i = 0; i < w.n_robots(); ++i) {
      const std::string color = kPalette[static_cast<std::size_t>(i) % 8];
      s += "<polyline class=\"prefix\" points=\"" + c.points(robot_track(plan->prefix, i)) + "\" fill=\"none\" stroke=\"" +
           color + "\" stroke-width=\"2\"/>\n";
      if (!loop.empty()) {
        s += "<polyline class=\"suffix\" points=\"" + c.points(robot_track(loop, i)) + "\" fill=\"none\" stroke=\"" +
             color + "\" stroke-width=\"2\" stroke-dasharray=\"6,4\"/>\n";
      }
      s += "<circle class=\"start\" " + c.attrs(robot_pos(plan->prefix.front(), i), "cx", "cy") + " r=\"5\" fill=\"" + color + "\"/>\n";
    }
  }
  s += "</svg>\n";
  return s;
}

}  // namespace tlrrt
