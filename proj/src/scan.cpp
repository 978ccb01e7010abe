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

#include "pseudoproj/scan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pseudoproj {

namespace {

constexpr double kAlphaFloor = 1e-3;

}  // namespace

std::string to_string(Inequality ineq) {
  switch (ineq) {
    case Inequality::Svetlichny:
      return "svetlichny";
    case Inequality::Mermin:
      return "mermin";
    case Inequality::E3_1:
      return "E3_1";
    case Inequality::E3_2:
      return "E3_2";
    case Inequality::E3_3:
      return "E3_3";
    case Inequality::E3_4:
      return "E3_4";
    case Inequality::EN:
      return "EN";
    case Inequality::B3_1:
      return "B3_1";
    case Inequality::B3_2:
      return "B3_2";
  }
  return {};
}

Inequality inequality_from_string(const std::string& name) {
  for (Inequality k :
       {Inequality::Svetlichny, Inequality::Mermin, Inequality::E3_1, Inequality::E3_2,
        Inequality::E3_3, Inequality::E3_4, Inequality::EN, Inequality::B3_1, Inequality::B3_2}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown inequality '" + name + "'");
}

bool is_witness(Inequality ineq) {
  return ineq != Inequality::Svetlichny && ineq != Inequality::Mermin;
}

std::optional<double> ghz_reference_threshold(Inequality ineq, int n_qubits) {
  switch (ineq) {
    case Inequality::Svetlichny:
      return n_qubits == 3 ? std::optional<double>(1.0 / std::sqrt(2.0)) : std::nullopt;
    case Inequality::Mermin:
      return n_qubits == 3 ? std::optional<double>(0.5) : std::nullopt;
    case Inequality::E3_1:
      return 0.25;
    case Inequality::E3_2:
      return 0.6;
    case Inequality::E3_3:
      return 0.2;
    case Inequality::E3_4:
      return std::nullopt;
    case Inequality::EN:
      return std::ldexp(1.0, 1 - n_qubits);
    case Inequality::B3_1:
      return 1.0 / (2.0 * std::sqrt(2.0));
    case Inequality::B3_2:
      return std::sqrt(3.0 / 7.0);
  }
  return std::nullopt;
}

namespace {

struct Problem {
  Inequality ineq;
  int n;
  bool witness;
  WitnessSpec wspec{WitnessKind::E3_1, 3, 0.0};
  CorrelatorPolynomial poly{1};
  double bound = 0.0;
  int dim = 0;         // parameter count
  int n_patterns = 1;  // per-qubit a'' handedness patterns to enumerate
};

Problem make_problem(Inequality ineq, int n_qubits) {
  Problem prob;
  prob.ineq = ineq;
  prob.n = n_qubits;
  prob.witness = is_witness(ineq);
  if (!prob.witness) {
    if (n_qubits < 3) throw std::invalid_argument("threshold: need at least 3 parties");
    prob.poly = ineq == Inequality::Svetlichny ? svetlichny_polynomial(n_qubits)
                                               : mermin_polynomial(n_qubits);
    prob.bound = classical_bound(ineq == Inequality::Svetlichny ? PolynomialKind::Svetlichny
                                                                : PolynomialKind::Mermin,
                                 n_qubits);
    prob.dim = 4 * n_qubits;  // spherical angles for A and A' per party
  } else {
    WitnessKind kind = witness_kind_from_string(to_string(ineq));
    prob.wspec = make_witness_spec(kind, kind == WitnessKind::EN ? n_qubits : 3);
    if (prob.wspec.n_qubits != n_qubits) {
      throw std::invalid_argument("threshold: the chosen witness needs a 3-qubit family");
    }
    prob.dim = 3 * n_qubits + 1;  // Euler angles per qubit plus alpha
    if (uses_dprime(kind)) prob.n_patterns = 1 << n_qubits;
  }
  return prob;
}

DirectionSpec direction_from_angles(double theta, double phi) {
  return DirectionSpec(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                       std::cos(theta));
}

std::vector<ObservablePair> poly_config_from(const Problem& prob, const Eigen::VectorXd& x) {
  std::vector<ObservablePair> obs;
  obs.reserve(std::size_t(prob.n));
  for (int q = 0; q < prob.n; ++q) {
    obs.push_back({direction_from_angles(x(4 * q), x(4 * q + 1)),
                   direction_from_angles(x(4 * q + 2), x(4 * q + 3))});
  }
  return obs;
}

DirectionConfig witness_config_from(const Problem& prob, const Eigen::VectorXd& x,
                                    int pattern) {
  std::vector<std::array<DirectionSpec, 3>> triads;
  triads.reserve(std::size_t(prob.n));
  for (int q = 0; q < prob.n; ++q) {
    std::array<DirectionSpec, 3> t = triad_from_euler(x(3 * q), x(3 * q + 1), x(3 * q + 2));
    if ((pattern >> q) & 1) t[2] = -t[2];
    triads.push_back(t);
  }
  const double alpha = std::clamp(x(prob.dim - 1), kAlphaFloor, prob.wspec.alpha_max);
  return make_direction_config(alpha, triads);
}

// Positive margin means the inequality detects the state.
double margin_at(const Problem& prob, const Eigen::VectorXd& x, int pattern,
                 const DensityOperator& rho, double* value_out = nullptr) {
  double value, margin;
  if (prob.witness) {
    value = witness_value(prob.wspec, witness_config_from(prob, x, pattern), rho).value;
    margin = -value;
  } else {
    value = expectation(prob.poly.to_operator(poly_config_from(prob, x)), rho);
    margin = std::abs(value) - prob.bound;
  }
  if (value_out) *value_out = value;
  return margin;
}

Eigen::VectorXd canonical_start(const Problem& prob) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(prob.dim);
  if (!prob.witness) {
    constexpr double half_pi = 1.5707963267948966;
    for (int q = 0; q < prob.n; ++q) {
      x(4 * q) = half_pi;          // A in the equatorial plane
      x(4 * q + 1) = 0.0;
      x(4 * q + 2) = half_pi;      // A' a quarter turn away
      x(4 * q + 3) = half_pi;
    }
  } else {
    x(prob.dim - 1) = prob.wspec.alpha_max;
  }
  return x;
}

struct BestPoint {
  Eigen::VectorXd x;
  int pattern = 0;
  double margin;
  double value;
};

struct WarmPoint {
  Eigen::VectorXd x;
  int pattern = 0;
};

BestPoint maximize_margin(const Problem& prob, const DensityOperator& rho,
                          const std::vector<WarmPoint>& warm, int restarts,
                          std::uint64_t seed, int threads) {
  BestPoint best;
  best.margin = -std::numeric_limits<double>::infinity();
  const int per_pattern = std::max(2, restarts / prob.n_patterns);
  for (int pattern = 0; pattern < prob.n_patterns; ++pattern) {
    Objective neg_margin = [&](const Eigen::VectorXd& x) {
      return -margin_at(prob, x, pattern, rho);
    };
    MultiStartOptions options;
    options.restarts = prob.n_patterns == 1 ? restarts : per_pattern;
    options.seed = seed + std::uint64_t(pattern);
    options.threads = threads;
    std::vector<Eigen::VectorXd> starts;
    for (const auto& w : warm) {
      if (w.pattern == pattern) starts.push_back(w.x);
    }
    const OptResult r = multi_start_minimize(neg_margin, prob.dim, options, starts);
    if (-r.fx > best.margin) {
      best.x = r.x;
      best.pattern = pattern;
      best.margin = -r.fx;
    }
  }
  best.margin = margin_at(prob, best.x, best.pattern, rho, &best.value);
  return best;
}

}  // namespace

ScanResult threshold(Inequality ineq, const NoisyFamily& family, const ScanOptions& options) {
  if (family.n_qubits() < 1) {
    throw std::invalid_argument("threshold: family base state is not a qubit register");
  }
  const Problem prob = make_problem(ineq, family.n_qubits());

  ScanResult result;
  result.inequality = to_string(ineq);
  result.n_qubits = prob.n;
  result.tolerance = options.p_tol;
  result.bound = prob.bound;

  std::vector<WarmPoint> canonical_warm;
  for (int pat = 0; pat < prob.n_patterns; ++pat) {
    canonical_warm.push_back({canonical_start(prob), pat});
  }
  const DensityOperator rho1 = family.at(1.0);
  BestPoint best = maximize_margin(prob, rho1, canonical_warm, options.restarts, options.seed,
                                   options.threads);
  result.value_at_1 = best.value;
  if (prob.witness) {
    result.witness_config = witness_config_from(prob, best.x, best.pattern);
  } else {
    result.poly_config = poly_config_from(prob, best.x);
  }

  if (best.margin <= 0.0) {
    result.p_star = std::nullopt;
    result.flags.push_back("no-detection-at-p1");
    return result;
  }

  // Bisection with warm-started local refinement at each midpoint.
  const int refresh = std::max(2, options.restarts / 8);
  double lo = 0.0, hi = 1.0;
  Eigen::VectorXd x = best.x;
  int pattern = best.pattern;
  int step = 0;
  while (hi - lo > options.p_tol) {
    const double mid = 0.5 * (lo + hi);
    const BestPoint point =
        maximize_margin(prob, family.at(mid), {{x, pattern}}, refresh,
                        options.seed + 0x9e3779b97f4a7c15ULL * std::uint64_t(++step),
                        options.threads);
    x = point.x;
    pattern = point.pattern;
    (point.margin > 0.0 ? hi : lo) = mid;
  }
  const double p_star = 0.5 * (lo + hi);
  result.p_star = p_star;

  // Detection just above, none just below, under the final configuration.
  const double above =
      margin_at(prob, x, pattern, family.at(std::min(1.0, p_star + options.p_tol)));
  const double below =
      margin_at(prob, x, pattern, family.at(std::max(0.0, p_star - options.p_tol)));
  result.monotone_check = above > 0.0 && below <= 0.0;

  // Verify the bisection against the analytic crossing of the final
  // configuration: margins are affine in p for linear kinds and quadratic
  // with no linear term for the bilinear ones.
  const double m0 = margin_at(prob, x, pattern, family.at(0.0));
  const double m1 = margin_at(prob, x, pattern, family.at(1.0));
  std::optional<double> analytic;
  if (ineq == Inequality::B3_1 || ineq == Inequality::B3_2) {
    if (m1 > m0 && -m0 > 0.0) analytic = std::sqrt(-m0 / (m1 - m0));
  } else if (m1 > m0) {
    analytic = -m0 / (m1 - m0);
  }
  if (analytic && std::abs(*analytic - p_star) > 2.0 * options.p_tol) {
    result.flags.push_back("analytic-crossing-mismatch");
  }

  if (options.reference_p_star && p_star > *options.reference_p_star + 5e-3) {
    result.flags.push_back("reference-threshold-unreached");
  }
  if (prob.witness) {
    result.witness_config = witness_config_from(prob, x, pattern);
  } else {
    result.poly_config = poly_config_from(prob, x);
  }
  return result;
}

WitnessValue optimize_witness(const WitnessSpec& spec, const DensityOperator& rho,
                              const ScanOptions& options, std::optional<double> fixed_alpha,
                              bool unsafe_alpha) {
  const int n = spec.n_qubits;
  const double alpha_hi = fixed_alpha ? *fixed_alpha : spec.alpha_max;
  const int n_patterns = uses_dprime(spec.kind) ? (1 << n) : 1;
  const int dim = 3 * n + (fixed_alpha ? 0 : 1);

  auto triads_from = [&](const Eigen::VectorXd& x, int pattern) {
    std::vector<std::array<DirectionSpec, 3>> triads;
    triads.reserve(std::size_t(n));
    for (int q = 0; q < n; ++q) {
      std::array<DirectionSpec, 3> t = triad_from_euler(x(3 * q), x(3 * q + 1), x(3 * q + 2));
      if ((pattern >> q) & 1) t[2] = -t[2];
      triads.push_back(t);
    }
    return triads;
  };
  auto alpha_from = [&](const Eigen::VectorXd& x) {
    return fixed_alpha ? *fixed_alpha : std::clamp(x(3 * n), kAlphaFloor, alpha_hi);
  };

  OptResult best;
  best.fx = std::numeric_limits<double>::infinity();
  int best_pattern = 0;
  for (int pattern = 0; pattern < n_patterns; ++pattern) {
    Objective objective = [&](const Eigen::VectorXd& x) {
      return witness_value(spec, make_direction_config(alpha_from(x), triads_from(x, pattern)),
                           rho, unsafe_alpha)
          .value;
    };
    Eigen::VectorXd start = Eigen::VectorXd::Zero(dim);
    if (!fixed_alpha) start(dim - 1) = alpha_hi;
    MultiStartOptions mo;
    mo.restarts = std::max(2, options.restarts / n_patterns);
    if (n_patterns == 1) mo.restarts = options.restarts;
    mo.seed = options.seed + std::uint64_t(pattern);
    mo.threads = options.threads;
    const OptResult r = multi_start_minimize(objective, dim, mo, {start});
    if (r.fx < best.fx) {
      best = r;
      best_pattern = pattern;
    }
  }
  return witness_value(spec,
                       make_direction_config(alpha_from(best.x), triads_from(best.x, best_pattern)),
                       rho, unsafe_alpha);
}

PolyOptimum optimize_polynomial(PolynomialKind kind, int n_parties, const DensityOperator& rho,
                                const ScanOptions& options) {
  CorrelatorPolynomial poly(1);
  switch (kind) {
    case PolynomialKind::Svetlichny:
      poly = svetlichny_polynomial(n_parties);
      break;
    case PolynomialKind::SvetlichnyPrimed:
      poly = svetlichny_primed_polynomial(n_parties);
      break;
    case PolynomialKind::Mermin:
      poly = mermin_polynomial(n_parties);
      break;
    case PolynomialKind::MerminPrimed:
      poly = mermin_primed_polynomial(n_parties);
      break;
    case PolynomialKind::DDA:
      poly = dda_polynomial(n_parties);
      break;
  }
  auto obs_from = [&](const Eigen::VectorXd& x) {
    std::vector<ObservablePair> obs;
    obs.reserve(std::size_t(n_parties));
    for (int q = 0; q < n_parties; ++q) {
      obs.push_back({direction_from_angles(x(4 * q), x(4 * q + 1)),
                     direction_from_angles(x(4 * q + 2), x(4 * q + 3))});
    }
    return obs;
  };
  Objective objective = [&](const Eigen::VectorXd& x) {
    return -std::abs(expectation(poly.to_operator(obs_from(x)), rho));
  };
  MultiStartOptions mo;
  mo.restarts = options.restarts;
  mo.seed = options.seed;
  mo.threads = options.threads;
  Eigen::VectorXd start(4 * n_parties);
  constexpr double half_pi = 1.5707963267948966;
  for (int q = 0; q < n_parties; ++q) {
    start(4 * q) = half_pi;
    start(4 * q + 1) = 0.0;
    start(4 * q + 2) = half_pi;
    start(4 * q + 3) = half_pi;
  }
  const OptResult best = multi_start_minimize(objective, 4 * n_parties, mo, {start});
  const auto obs = obs_from(best.x);
  return {obs, expectation(poly.to_operator(obs), rho)};
}

std::vector<CurvePoint> scan_curve(Inequality ineq, const NoisyFamily& family,
                                   std::span<const double> p_grid, const ScanOptions& options) {
  if (p_grid.empty()) throw std::invalid_argument("scan_curve: empty grid");
  for (double p : p_grid) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("scan_curve: grid point outside [0, 1]");
  }
  const Problem prob = make_problem(ineq, family.n_qubits());

  // Visit grid points from the strongest violation downward, warm-starting
  // each optimization from the previous best configuration.
  std::vector<std::size_t> order(p_grid.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return p_grid[a] > p_grid[b]; });

  std::vector<WarmPoint> pool;
  for (int pat = 0; pat < prob.n_patterns; ++pat) pool.push_back({canonical_start(prob), pat});
  int restarts = options.restarts;
  std::uint64_t seed = options.seed;
  for (std::size_t k : order) {
    const BestPoint best =
        maximize_margin(prob, family.at(p_grid[k]), pool, restarts, seed, options.threads);
    pool.push_back({best.x, best.pattern});
    restarts = std::max(2, options.restarts / 8);
    seed += 0x9e3779b97f4a7c15ULL;
  }

  // The best-of-pool margin is nondecreasing in p because each fixed
  // configuration's margin is.
  std::vector<CurvePoint> curve;
  curve.reserve(p_grid.size());
  for (double p : p_grid) {
    const DensityOperator rho = family.at(p);
    double best_margin = -std::numeric_limits<double>::infinity();
    double best_value = 0.0;
    for (const auto& w : pool) {
      double value = 0.0;
      const double margin = margin_at(prob, w.x, w.pattern, rho, &value);
      if (margin > best_margin) {
        best_margin = margin;
        best_value = value;
      }
    }
    curve.push_back({p, best_value, best_margin});
  }
  return curve;
}

}  // namespace pseudoproj
