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

#include "tlrrt/io.hpp"

namespace tlrrt
{

using nlohmann::json;

namespace
{

json states_to_json(const std::vector<JointState> & xs)
{
  json out = json::array();
  for (const auto & x : xs) {
    out.push_back(x);
  }
  return out;
}

std::vector<JointState> states_from_json(const json & j, const char * key)
{
  if (!j.contains(key) || !j[key].is_array()) {
    throw ConfigError(std::string("plan: missing array '") + key + "'");
  }
  try {
    return j[key].get<std::vector<JointState>>();
  } catch (const json::exception &) {
    throw ConfigError(std::string("plan: '") + key + "' must be a list of coordinate lists");
  }
}

}  // namespace

json plan_to_json(const Plan & p)
{
  json j;
  j["format"] = "tlrrt-plan";
  j["version"] = 1;
  j["seed"] = p.seed;
  j["weight"] = p.weight;
  j["prefix"] = states_to_json(p.prefix);
  j["prefix_q"] = p.prefix_q;
  j["suffix"] = states_to_json(p.suffix);
  j["suffix_q"] = p.suffix_q;
  j["prefix_cost"] = p.prefix_cost;
  j["suffix_cost"] = p.suffix_cost;
  j["cost"] = p.cost;
  j["params"] = parse_json(p.params_json, "plan params");
  return j;
}

Plan plan_from_json(const json & j)
{
  if (!j.is_object() || j.value("format", std::string()) != "tlrrt-plan") {
    throw ConfigError("plan: not a tlrrt plan document");
  }
  Plan p;
  try {
    p.seed = j.at("seed").get<std::uint64_t>();
    p.weight = j.at("weight").get<double>();
    p.prefix_q = j.value("prefix_q", std::vector<int>{});
    p.suffix_q = j.value("suffix_q", std::vector<int>{});
    p.prefix_cost = j.at("prefix_cost").get<double>();
    p.suffix_cost = j.at("suffix_cost").get<double>();
    p.cost = j.at("cost").get<double>();
  } catch (const json::exception & e) {
    throw ConfigError(std::string("plan: ") + e.what());
  }
  p.prefix = states_from_json(j, "prefix");
  p.suffix = states_from_json(j, "suffix");
  p.params_json = j.value("params", json::object()).dump();
  return p;
}

std::string plan_to_string(const Plan & p)
{
  return plan_to_json(p).dump(2) + "\n";
}

Plan load_plan(const std::string & path)
{
  return plan_from_json(parse_json(read_file(path), path));
}

}  // namespace tlrrt
