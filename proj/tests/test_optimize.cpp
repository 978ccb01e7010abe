// Copyright 2026 The pseudoproj developers
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

#include <doctest.h>

#include <cmath>

#include "pseudoproj/optimize.hpp"

using namespace pseudoproj;

TEST_CASE("nelder-mead finds a quadratic minimum") {
  const Objective bowl = [](const Eigen::VectorXd& x) {
    return (x(0) - 1.5) * (x(0) - 1.5) + 2.0 * (x(1) + 0.5) * (x(1) + 0.5) + 3.0;
  };
  Eigen::VectorXd x0(2);
  x0 << 0.0, 0.0;
  const OptResult r = nelder_mead(bowl, x0);
  CHECK(r.fx == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(r.x(0) == doctest::Approx(1.5).epsilon(1e-4));
  CHECK(r.x(1) == doctest::Approx(-0.5).epsilon(1e-4));
}

TEST_CASE("multi-start escapes a local basin") {
  // two wells; the deeper one sits away from the origin
  const Objective wells = [](const Eigen::VectorXd& x) {
    const double d1 = (x(0) - 2.0) * (x(0) - 2.0);
    const double d2 = (x(0) + 2.0) * (x(0) + 2.0);
    return std::min(d1 + 1.0, d2);
  };
  MultiStartOptions options;
  options.restarts = 32;
  options.seed = 7;
  const OptResult r = multi_start_minimize(wells, 1, options);
  CHECK(r.fx == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(r.x(0) == doctest::Approx(-2.0).epsilon(1e-3));
}

TEST_CASE("multi-start is deterministic for a fixed seed") {
  const Objective wavy = [](const Eigen::VectorXd& x) {
    return std::sin(3.0 * x(0)) + 0.1 * x(0) * x(0) + std::cos(2.0 * x(1));
  };
  MultiStartOptions options;
  options.restarts = 16;
  options.seed = 42;
  const OptResult a = multi_start_minimize(wavy, 2, options);
  const OptResult b = multi_start_minimize(wavy, 2, options);
  CHECK(a.fx == b.fx);
  CHECK(a.x == b.x);

  options.threads = 4;
  const OptResult c = multi_start_minimize(wavy, 2, options);
  CHECK(a.fx == c.fx);
  CHECK(a.x == c.x);
}
