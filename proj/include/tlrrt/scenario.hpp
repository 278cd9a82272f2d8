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

#ifndef TLRRT_SCENARIO_HPP_
#define TLRRT_SCENARIO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tlrrt/geometry.hpp"
#include "tlrrt/io.hpp"

namespace tlrrt
{

struct Scenario
{
  Workspace workspace;
  Task task;
};

/// Unit square with two rectangular obstacles and six right isosceles
/// triangular regions of leg length `side`.
Workspace fixture_workspace(int n_robots, double side, double min_separation = 0.005);

std::string case1_formula();
std::string case2_formula();

/// Single robot sequencing task, x0 = (0.8, 0.1).
Scenario case1(double side = 0.15);
/// Two robots with recurrence and ordering, x0 = (0.8, 0.1), (0.82, 0.1).
Scenario case2(double side = 0.25);

/// Eight-subformula task over random overlapping subteams of size m; every
/// robot appears in at least one subformula. Initial positions are free,
/// outside every region and pairwise separated.
Scenario scatter(int n_robots, int m, std::uint64_t seed, double side = 0.15);

}  // namespace tlrrt

#endif  // TLRRT_SCENARIO_HPP_
