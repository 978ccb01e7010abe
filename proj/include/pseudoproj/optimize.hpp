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

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

namespace pseudoproj {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct NelderMeadOptions {
  int max_iterations = 600;
  double x_tolerance = 1e-10;
  double f_tolerance = 1e-12;
  double initial_step = 0.6;
};

struct OptResult {
  Eigen::VectorXd x;
  double fx = 0.0;
  int iterations = 0;
};

/// Derivative-free simplex minimization (no certification of global optima).
OptResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0,
                      const NelderMeadOptions& options = {});

struct MultiStartOptions {
  int restarts = 64;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency
  NelderMeadOptions local;
  /// Uniform sampling box for start points (component ranges).
  double sample_low = -3.141592653589793;
  double sample_high = 3.141592653589793;
};

/// Runs local searches from `warm_starts` plus `restarts` seeded random start
/// points and keeps the best result. Start points are generated up front from
/// the seed, and the best-of reduction orders by (value, then lexicographic
/// minimizer), so results do not depend on thread scheduling.
OptResult multi_start_minimize(const Objective& f, int dim, const MultiStartOptions& options,
                               const std::vector<Eigen::VectorXd>& warm_starts = {});

}  // namespace pseudoproj
