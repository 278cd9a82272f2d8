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


#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "tlrrt/io.hpp"

namespace fs = std::filesystem;

namespace
{

const fs::path & scratch()
{
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("tlrrt_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string data(const std::string & name) { return std::string(TLRRT_DATA_DIR) + "/" + name; }
std::string tmp(const std::string & name) { return (scratch() / name).string(); }

int run(const std::string & args)
{
  const std::string cmd = std::string(TLRRT_CLI_PATH) + " " + args + " >" + tmp("stdout.txt") + " 2>" + tmp("stderr.txt");
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string env1() { return "--env " + data("case1_env.json") + " --task " + data("case1_task.json"); }

}  // namespace

TEST_CASE("plan, validate and plot")
{
  const std::string common = env1() + " --seed 4 --n-pre 1000 --n-suf 300";
  REQUIRE(run("plan " + common + " -o " + tmp("a.json") + " --stats " + tmp("stats.json")) == 0);
  REQUIRE(run("plan " + common + " -o " + tmp("b.json")) == 0);
  CHECK(tlrrt::read_file(tmp("a.json")) == tlrrt::read_file(tmp("b.json")));
  CHECK(tlrrt::read_file(tmp("stderr.txt")).find("J = ") != std::string::npos);
  const auto stats = nlohmann::json::parse(tlrrt::read_file(tmp("stats.json")));
  CHECK(stats.at("invariant_violations") == 0);

  CHECK(run("validate " + env1() + " --plan " + tmp("a.json")) == 0);
  CHECK(tlrrt::read_file(tmp("stdout.txt")) == "ok\n");

  // Drag the first waypoint into an obstacle.
  auto j = nlohmann::json::parse(tlrrt::read_file(tmp("a.json")));
  j["prefix"][0] = {0.4, 0.4};
  tlrrt::write_file(tmp("bad.json"), j.dump());
  CHECK(run("validate " + env1() + " --plan " + tmp("bad.json")) == 5);
  CHECK(tlrrt::read_file(tmp("stdout.txt")).rfind("invalid: ", 0) == 0);

  CHECK(run("plot --env " + data("case1_env.json") + " --plan " + tmp("a.json") + " -o " + tmp("a.svg")) == 0);
  CHECK(tlrrt::read_file(tmp("a.svg")).find("</svg>") != std::string::npos);
}

TEST_CASE("translate")
{
  CHECK(run("translate --formula \"[]<> pi(1,1) && []<> pi(2,2)\"") == 0);
  const std::string hoa = tlrrt::read_file(tmp("stdout.txt"));
  CHECK(hoa.rfind("HOA: v1", 0) == 0);
  CHECK(run("translate --formula \"<> pi(1,1)\" --prune") == 2);
  CHECK(run("translate --formula \"X pi(1,1)\"") == 2);
}

TEST_CASE("benchmark and gen")
{
  CHECK(run("gen case2 --env-out " + tmp("e.json") + " --task-out " + tmp("t.json")) == 0);
  const std::string args = "--env " + tmp("e.json") + " --task " + tmp("t.json") +
                           " --seed 2 --mode biased --first-feasible --trials 3 --n-pre 3000 --n-suf 3000";
  CHECK(run("benchmark " + args + " --csv " + tmp("r1.csv")) == 0);
  CHECK(run("benchmark " + args + " --jobs 3 --csv " + tmp("r2.csv")) == 0);
  CHECK(tlrrt::read_file(tmp("r1.csv")) == tlrrt::read_file(tmp("r2.csv")));
  CHECK(run("gen scatter --robots 4 --m 2 --seed 5 --env-out " + tmp("s.json") + " --task-out " + tmp("st.json")) == 0);
  CHECK(nlohmann::json::parse(tlrrt::read_file(tmp("st.json"))).at("initial").size() == 4);
}

TEST_CASE("exit codes")
{
  CHECK(run("plan " + env1()) == 2);  // --seed missing
  CHECK(run("plan --env /nonexistent.json --task " + data("case1_task.json") + " --seed 1") == 2);
  CHECK(run("plan " + env1() + " --seed 1 --mode sideways") == 2);
  CHECK(run("plan --env " + data("case1_env.json") + " --task " + data("case1_task.json") +
            " --formula \"[] pi(1,1) && [] !pi(1,1)\" --seed 1") == 4);
  // A zero budget leaves the tree at its root, far from the first region.
  CHECK(run("plan " + env1() + " --seed 1 --n-pre 0 --n-suf 0") == 3);
  CHECK(run("frobnicate") != 0);
  std::error_code ec;
  fs::remove_all(scratch(), ec);
}
