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

#include <fstream>
#include <sstream>

#include "tlrrt/io.hpp"

namespace tlrrt
{

using nlohmann::json;

std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string & path, const std::string & content)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ConfigError("cannot write '" + path + "'");
  }
  out << content;
  if (!out) {
    throw ConfigError("write failed for '" + path + "'");
  }
}

json parse_json(const std::string & text, const std::string & what)
{
  try {
    return json::parse(text);
  } catch (const json::parse_error & e) {
    throw ConfigError(what + ": " + e.what());
  }
}

namespace
{

Vec2 point_from_json(const json & p, const std::string & where)
{
  if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
    throw ConfigError(where + ": expected [x, y]");
  }
  return {p[0].get<double>(), p[1].get<double>()};
}

Polygon polygon_from_json(const json & v, const std::string & where)
{
  if (!v.is_array() || v.size() < 3) {
    throw ConfigError(where + ": expected at least 3 vertices");
  }
  Polygon poly;
  for (const auto & p : v) {
    poly.push_back(point_from_json(p, where));
  }
  return poly;
}

json polygon_to_json(const Polygon & poly)
{
  json out = json::array();
  for (const auto & v : poly) {
    out.push_back({v.x, v.y});
  }
  return out;
}

template <typename T>
T require(const json & j, const char * key, const std::string & where)
{
  if (!j.contains(key)) {
    throw ConfigError(where + ": missing '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception &) {
    throw ConfigError(where + ": bad type for '" + key + "'");
  }
}

}  // namespace

Workspace workspace_from_json(const json & j)
{
  const std::string where = "environment";
  if (!j.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  const auto b = require<std::vector<double>>(j, "bounds", where);
  if (b.size() != 4) {
    throw ConfigError(where + ": bounds must be [xmin, ymin, xmax, ymax]");
  }
  const int n_robots = require<int>(j, "n_robots", where);
  const double min_sep = j.value("min_separation", 0.005);
  SeparationMetric metric = SeparationMetric::kChebyshev;
  const std::string metric_name = j.value("separation_metric", std::string("chebyshev"));
  if (metric_name == "euclidean") {
    metric = SeparationMetric::kEuclidean;
  } else if (metric_name != "chebyshev") {
    throw ConfigError(where + ": separation_metric must be 'chebyshev' or 'euclidean'");
  }
  std::vector<Obstacle> obstacles;
  for (const auto & o : j.value("obstacles", json::array())) {
    const std::string name = o.value("name", "o" + std::to_string(obstacles.size() + 1));
    obstacles.push_back({name, polygon_from_json(o.value("vertices", json()), "obstacle " + name)});
  }
  std::vector<Region> regions;
  for (const auto & r : j.value("regions", json::array())) {
    const int label = require<int>(r, "label", "region");
    regions.push_back({label, polygon_from_json(r.value("vertices", json()), "region " + std::to_string(label))});
  }
  try {
    return Workspace({b[0], b[1], b[2], b[3]}, std::move(obstacles), std::move(regions), n_robots, min_sep, metric);
  } catch (const GeometryError & e) {
    throw ConfigError(where + ": " + e.what());
  }
}

json workspace_to_json(const Workspace & w)
{
  json j;
  const auto & b = w.bounds();
  j["bounds"] = {b.xmin, b.ymin, b.xmax, b.ymax};
  j["n_robots"] = w.n_robots();
  j["min_separation"] = w.min_separation();
  j["separation_metric"] = w.separation_metric() == SeparationMetric::kEuclidean ? "euclidean" : "chebyshev";
  j["obstacles"] = json::array();
  for (const auto & o : w.obstacles()) {
    j["obstacles"].push_back({{"name", o.name}, {"vertices", polygon_to_json(o.polygon)}});
  }
  j["regions"] = json::array();
  for (const auto & r : w.regions()) {
    j["regions"].push_back({{"label", r.label}, {"vertices", polygon_to_json(r.polygon)}});
  }
  return j;
}

Workspace load_workspace(const std::string & path)
{
  return workspace_from_json(parse_json(read_file(path), path));
}

Task task_from_json(const json & j)
{
  const std::string where = "task";
  if (!j.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  Task t;
  t.formula = require<std::string>(j, "formula", where);
  if (!j.contains("initial") || !j["initial"].is_array() || j["initial"].empty()) {
    throw ConfigError(where + ": 'initial' must list one [x, y] per robot");
  }
  for (const auto & p : j["initial"]) {
    t.initial.push_back(point_from_json(p, where + " initial"));
  }
  for (const auto & s : j.value("subformulas", json::array())) {
    if (!s.is_string()) {
      throw ConfigError(where + ": subformulas must be strings");
    }
    t.subformulas.push_back(s.get<std::string>());
  }
  return t;
}

json task_to_json(const Task & t)
{
  json j;
  j["formula"] = t.formula;
  j["initial"] = json::array();
  for (const auto & p : t.initial) {
    j["initial"].push_back({p.x, p.y});
  }
  if (!t.subformulas.empty()) {
    j["subformulas"] = t.subformulas;
  }
  return j;
}

Task load_task(const std::string & path)
{
  return task_from_json(parse_json(read_file(path), path));
}

JointState initial_state(const Task & t)
{
  JointState x;
  for (const auto & p : t.initial) {
    x.push_back(p.x);
    x.push_back(p.y);
  }
  return x;
}

}  // namespace tlrrt
