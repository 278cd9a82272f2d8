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

#ifndef TLRRT_IO_HPP_
#define TLRRT_IO_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tlrrt/geometry.hpp"
#include "tlrrt/product.hpp"

namespace tlrrt
{

/// Invalid or unreadable input file.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string & path);
void write_file(const std::string & path, const std::string & content);

// Environment file:
//   {"bounds": [xmin, ymin, xmax, ymax], "n_robots": N, "min_separation": R,
//    "separation_metric": "chebyshev" | "euclidean",
//    "obstacles": [{"name": "o1", "vertices": [[x, y], ...]}, ...],
//    "regions": [{"label": 1, "vertices": [[x, y], ...]}, ...]}
Workspace workspace_from_json(const nlohmann::json & j);
nlohmann::json workspace_to_json(const Workspace & w);
Workspace load_workspace(const std::string & path);

/// Task file: {"formula": "...", "initial": [[x, y], ...], "subformulas": ["...", ...]}
struct Task
{
  std::string formula;
  std::vector<Vec2> initial;
  std::vector<std::string> subformulas;
};

Task task_from_json(const nlohmann::json & j);
nlohmann::json task_to_json(const Task & t);
Task load_task(const std::string & path);
JointState initial_state(const Task & t);

nlohmann::json plan_to_json(const Plan & p);
Plan plan_from_json(const nlohmann::json & j);
/// Canonical text form; write -> read -> write is byte-identical.
std::string plan_to_string(const Plan & p);
Plan load_plan(const std::string & path);

/// Parses a JSON document, mapping syntax errors to ConfigError.
nlohmann::json parse_json(const std::string & text, const std::string & what);

}  // namespace tlrrt

#endif  // TLRRT_IO_HPP_
