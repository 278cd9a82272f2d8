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

#ifndef TLRRT_RNG_HPP_
#define TLRRT_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace tlrrt
{

/// Independent stream per stochastic choice site, derived from one master
/// seed. Distributions are written out here rather than taken from <random>
/// so that sequences do not depend on the standard library vendor.
class Rng
{
public:
  explicit Rng(std::uint64_t master, std::uint64_t site = 0)
  {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(site), static_cast<std::uint32_t>(site >> 32), 0x746c7272u};
    engine_.seed(seq);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n)
  {
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = n == 0 ? 0 : (~std::uint64_t{0} - n + 1) % n;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r < limit);
    return r % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Normal via Box-Muller (one value per call, the pair's second half is kept).
  double normal(double mean, double stddev)
  {
    if (has_spare_) {
      has_spare_ = false;
      return mean + stddev * spare_;
    }
    double u1;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return mean + stddev * r * std::cos(t);
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Choice sites; the numeric values are part of the reproducibility contract.
enum class RngSite : std::uint64_t {
  kPrefixSample = 1,
  kSuffixSample = 2,
  kBiasSelect = 3,
  kBiasGeometry = 4,
  kAcceptingChoice = 5,
  kCycleClose = 6,
  kPilot = 7,
  kTrial = 8,
  kScenario = 9,
};

inline Rng make_rng(std::uint64_t master, RngSite site, std::uint64_t salt = 0)
{
  return Rng(master, static_cast<std::uint64_t>(site) * 0x9e3779b97f4a7c15ull + salt);
}

}  // namespace tlrrt

#endif  // TLRRT_RNG_HPP_
