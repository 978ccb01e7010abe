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

#include "pseudoproj/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace pseudoproj {

OptResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0,
                      const NelderMeadOptions& options) {
  const int n = int(x0.size());
  if (n < 1) throw std::invalid_argument("nelder_mead: empty parameter vector");

  struct Vertex {
    Eigen::VectorXd x;
    double fx;
  };
  std::vector<Vertex> simplex;
  simplex.reserve(std::size_t(n) + 1);
  simplex.push_back({x0, f(x0)});
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x = x0;
    x(i) += options.initial_step;
    simplex.push_back({x, f(x)});
  }
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; };
  std::sort(simplex.begin(), simplex.end(), by_value);

  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    const Vertex& best = simplex.front();
    const Vertex& worst = simplex.back();
    double spread = 0.0;
    for (const auto& v : simplex) spread = std::max(spread, (v.x - best.x).lpNorm<Eigen::Infinity>());
    if (spread < options.x_tolerance && std::abs(worst.fx - best.fx) < options.f_tolerance) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += simplex[std::size_t(i)].x;
    centroid /= double(n);

    const Eigen::VectorXd xr = centroid + (centroid - worst.x);
    const double fr = f(xr);
    if (fr < best.fx) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - worst.x);
      const double fe = f(xe);
      simplex.back() = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < simplex[std::size_t(n) - 1].fx) {
      simplex.back() = {xr, fr};
    } else {
      const Eigen::VectorXd xc = centroid + 0.5 * ((fr < worst.fx ? xr : worst.x) - centroid);
      const double fc = f(xc);
      if (fc < std::min(fr, worst.fx)) {
        simplex.back() = {xc, fc};
      } else {
        for (std::size_t i = 1; i < simplex.size(); ++i) {
          simplex[i].x = simplex[0].x + 0.5 * (simplex[i].x - simplex[0].x);
          simplex[i].fx = f(simplex[i].x);
        }
      }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);
  }
  return {simplex.front().x, simplex.front().fx, iter};
}

namespace {

bool lexicographic_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

}  // namespace

OptResult multi_start_minimize(const Objective& f, int dim, const MultiStartOptions& options,
                               const std::vector<Eigen::VectorXd>& warm_starts) {
  if (dim < 1) throw std::invalid_argument("multi_start_minimize: dim must be positive");
  if (options.restarts < 1 && warm_starts.empty()) {
    throw std::invalid_argument("multi_start_minimize: need at least one start point");
  }

  std::vector<Eigen::VectorXd> starts = warm_starts;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> dist(options.sample_low, options.sample_high);
  for (int r = 0; r < options.restarts; ++r) {
    Eigen::VectorXd x(dim);
    for (int i = 0; i < dim; ++i) x(i) = dist(rng);
    starts.push_back(std::move(x));
  }

  std::vector<OptResult> results(starts.size());
  int n_threads = options.threads > 0 ? options.threads : int(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min<int>({n_threads, int(starts.size()), 16}));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= starts.size()) break;
      results[k] = nelder_mead(f, starts[k], options.local);
    }
  };
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < results.size(); ++k) {
    if (results[k].fx < results[best].fx ||
        (results[k].fx == results[best].fx && lexicographic_less(results[k].x, results[best].x))) {
      best = k;
    }
  }
  return results[best];
}

}  // namespace pseudoproj
