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

#include "pseudoproj/witness.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pseudoproj {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kGeometryTol = 1e-10;

}  // namespace

std::string to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::E3_1:
      return "E3_1";
    case WitnessKind::E3_2:
      return "E3_2";
    case WitnessKind::E3_3:
      return "E3_3";
    case WitnessKind::E3_4:
      return "E3_4";
    case WitnessKind::EN:
      return "EN";
    case WitnessKind::B3_1:
      return "B3_1";
    case WitnessKind::B3_2:
      return "B3_2";
  }
  return {};
}

WitnessKind witness_kind_from_string(const std::string& name) {
  for (WitnessKind k : {WitnessKind::E3_1, WitnessKind::E3_2, WitnessKind::E3_3,
                        WitnessKind::E3_4, WitnessKind::EN, WitnessKind::B3_1,
                        WitnessKind::B3_2}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown witness kind '" + name + "'");
}

bool is_bilinear(WitnessKind kind) {
  return kind == WitnessKind::B3_1 || kind == WitnessKind::B3_2;
}

bool uses_dprime(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::E3_2:
    case WitnessKind::E3_3:
    case WitnessKind::E3_4:
    case WitnessKind::B3_2:
      return true;
    default:
      return false;
  }
}

double alpha_max(WitnessKind kind, int n_qubits) {
  switch (kind) {
    case WitnessKind::E3_1:
      return std::acos(-7.0 / 8.0);
    case WitnessKind::E3_2:
      return std::acos(-31.0 / 49.0);
    case WitnessKind::E3_3:
      return std::acos(-23.0 / 25.0);
    case WitnessKind::E3_4:
      // the range boundary is only known to three digits
      return std::acos(-0.954);
    case WitnessKind::B3_1:
      return std::acos(-3.0 / 4.0);
    case WitnessKind::B3_2:
      return std::acos(-1.0 / 7.0);
    case WitnessKind::EN: {
      if (n_qubits < 2) throw std::invalid_argument("alpha_max: EN needs N >= 2");
      const double q = std::ldexp(1.0, 2 * n_qubits - 3);
      return std::acos(-(q - 1.0) / q);
    }
  }
  throw std::invalid_argument("alpha_max: invalid kind");
}

std::vector<std::array<DirectionSpec, 3>> DirectionConfig::triads() const {
  std::vector<std::array<DirectionSpec, 3>> out;
  out.reserve(qubits.size());
  for (const auto& q : qubits) out.push_back({q.a, q.a_prime, q.a_dprime});
  return out;
}

void validate_direction_config(const DirectionConfig& cfg) {
  if (cfg.alpha <= 0.0 || cfg.alpha > kPi) {
    throw std::invalid_argument("DirectionConfig: alpha must lie in (0, pi]");
  }
  const double cos_alpha = std::cos(cfg.alpha);
  for (const auto& q : cfg.qubits) {
    const std::array<const std::array<DirectionSpec, 2>*, 3> doublets = {
        &q.doublet_a, &q.doublet_a_prime, &q.doublet_a_dprime};
    const std::array<const DirectionSpec*, 3> means = {&q.a, &q.a_prime, &q.a_dprime};
    for (int k = 0; k < 3; ++k) {
      const auto& d = *doublets[std::size_t(k)];
      if (std::abs(d[0].vec().dot(d[1].vec()) - cos_alpha) > kGeometryTol) {
        throw std::invalid_argument("DirectionConfig: doublet angle differs from alpha");
      }
      const Vector3 sum = d[0].vec() + d[1].vec();
      if (sum.norm() < kGeometryTol) {
        throw std::invalid_argument("DirectionConfig: degenerate doublet");
      }
      if ((sum / sum.norm() - means[std::size_t(k)]->vec()).norm() > kGeometryTol) {
        throw std::invalid_argument("DirectionConfig: doublet sum does not match its mean");
      }
    }
    if (std::abs(q.a.vec().dot(q.a_prime.vec())) > kGeometryTol ||
        std::abs(q.a_prime.vec().dot(q.a_dprime.vec())) > kGeometryTol ||
        std::abs(q.a_dprime.vec().dot(q.a.vec())) > kGeometryTol) {
      throw std::invalid_argument("DirectionConfig: means are not orthonormal");
    }
  }
}

DirectionConfig make_direction_config(
    double alpha, std::span<const std::array<DirectionSpec, 3>> triads,
    const std::vector<std::array<DirectionSpec, 3>>* doublet_planes) {
  if (alpha <= 0.0 || alpha >= kPi) {
    throw std::invalid_argument("make_direction_config: alpha must lie in (0, pi)");
  }
  if (triads.empty()) throw std::invalid_argument("make_direction_config: no qubits");
  if (doublet_planes && doublet_planes->size() != triads.size()) {
    throw std::invalid_argument("make_direction_config: plane list size mismatch");
  }

  DirectionConfig cfg;
  cfg.alpha = alpha;
  const double c = std::cos(alpha / 2.0);
  const double s = std::sin(alpha / 2.0);

  for (std::size_t i = 0; i < triads.size(); ++i) {
    const auto& t = triads[i];
    for (int k = 0; k < 3; ++k) {
      for (int l = k + 1; l < 3; ++l) {
        if (std::abs(t[std::size_t(k)].vec().dot(t[std::size_t(l)].vec())) > kGeometryTol) {
          throw std::invalid_argument("make_direction_config: triad is not orthonormal");
        }
      }
    }
    auto doublet = [&](int k) -> std::array<DirectionSpec, 2> {
      const Vector3 mean = t[std::size_t(k)].vec();
      Vector3 partner;
      if (doublet_planes) {
        partner = (*doublet_planes)[i][std::size_t(k)].vec();
        if (std::abs(partner.dot(mean)) > kGeometryTol) {
          throw std::invalid_argument(
              "make_direction_config: plane partner not orthogonal to its mean");
        }
      } else {
        partner = t[std::size_t((k + 1) % 3)].vec();
      }
      return {DirectionSpec(Vector3(c * mean + s * partner)),
              DirectionSpec(Vector3(c * mean - s * partner))};
    };
    QubitFrame frame{t[0], t[1], t[2], doublet(0), doublet(1), doublet(2)};
    cfg.qubits.push_back(std::move(frame));
  }
  validate_direction_config(cfg);
  return cfg;
}

std::vector<std::array<DirectionSpec, 3>> canonical_triads(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("canonical_triads: need >= 1 qubit");
  std::vector<std::array<DirectionSpec, 3>> out(
      std::size_t(n_qubits),
      std::array<DirectionSpec, 3>{DirectionSpec::x(), DirectionSpec::y(), DirectionSpec::z()});
  return out;
}

std::array<DirectionSpec, 3> triad_from_euler(double phi, double theta, double psi) {
  Eigen::Matrix3d r =
      (Eigen::AngleAxisd(phi, Vector3::UnitZ()) * Eigen::AngleAxisd(theta, Vector3::UnitY()) *
       Eigen::AngleAxisd(psi, Vector3::UnitZ()))
          .toRotationMatrix();
  return {DirectionSpec(Vector3(r.col(0))), DirectionSpec(Vector3(r.col(1))),
          DirectionSpec(Vector3(r.col(2)))};
}

DensityOperator product_state(std::span<const std::array<double, 2>> angles) {
  if (angles.empty()) throw std::invalid_argument("product_state: no qubits");
  StateVector psi(1);
  psi(0) = 1.0;
  for (const auto& [theta, phi] : angles) {
    StateVector qubit(2);
    qubit(0) = std::cos(theta / 2.0);
    qubit(1) = std::exp(Complex(0.0, phi)) * std::sin(theta / 2.0);
    StateVector next(psi.size() * 2);
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
      next(2 * k) = psi(k) * qubit(0);
      next(2 * k + 1) = psi(k) * qubit(1);
    }
    psi = std::move(next);
  }
  return DensityOperator::from_pure(psi);
}

WitnessSpec make_witness_spec(WitnessKind kind, int n_qubits) {
  if (kind != WitnessKind::EN && n_qubits != 3) {
    throw std::invalid_argument("make_witness_spec: only EN generalizes beyond 3 qubits");
  }
  if (kind == WitnessKind::EN && n_qubits < 2) {
    throw std::invalid_argument("make_witness_spec: EN needs N >= 2");
  }
  return {kind, n_qubits, alpha_max(kind, n_qubits)};
}

namespace {

void check_alpha_range(const WitnessSpec& spec, const DirectionConfig& cfg, bool unsafe_alpha) {
  if (cfg.alpha > spec.alpha_max + 1e-12 && !unsafe_alpha) {
    throw std::invalid_argument("witness: alpha " + std::to_string(cfg.alpha) +
                                " exceeds the separability-safe range (max " +
                                std::to_string(spec.alpha_max) +
                                "); pass unsafe_alpha to explore anyway");
  }
  if (int(cfg.qubits.size()) != spec.n_qubits) {
    throw std::invalid_argument("witness: config qubit count mismatch");
  }
}

CorrelatorPolynomial pair_sum(int n, int i, int j) {
  // a_i a_j + a'_i a'_j
  return CorrelatorPolynomial::symbol(n, i, 0).times_symbol(j, 0) +
         CorrelatorPolynomial::symbol(n, i, 1).times_symbol(j, 1);
}

/// Correlator part of a linear witness; the constant term is handled apart.
CorrelatorPolynomial linear_witness_polynomial(const WitnessSpec& spec) {
  const int n = spec.n_qubits;
  switch (spec.kind) {
    case WitnessKind::E3_1:
    case WitnessKind::EN:
      return mermin_polynomial(n);
    case WitnessKind::E3_2:
    case WitnessKind::E3_3: {
      CorrelatorPolynomial two_body(3);
      for (const auto& [i, j] : std::array<std::array<int, 2>, 3>{{{0, 1}, {1, 2}, {2, 0}}}) {
        two_body += CorrelatorPolynomial::symbol(3, i, 2).times_symbol(j, 2);
      }
      const double weight = spec.kind == WitnessKind::E3_2 ? 1.0 : 1.0 / 3.0;
      return mermin_polynomial(3) + weight * two_body;
    }
    case WitnessKind::E3_4: {
      CorrelatorPolynomial p(3);
      for (int i = 0; i < 3; ++i) p += CorrelatorPolynomial::symbol(3, i, 2);
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          p += 2.0 * pair_sum(3, i, j);
          p -= CorrelatorPolynomial::symbol(3, i, 2).times_symbol(j, 2);
        }
      }
      p -= 3.0 * CorrelatorPolynomial::symbol(3, 0, 2).times_symbol(1, 2).times_symbol(2, 2);
      for (const auto& [i, j, k] :
           std::array<std::array<int, 3>, 3>{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}}) {
        p += 2.0 * pair_sum(3, i, j).times_symbol(k, 2);
      }
      return p;
    }
    default:
      throw std::invalid_argument("witness_operator: " + to_string(spec.kind) +
                                  " is bilinear and has no linear operator form");
  }
}

double constant_coefficient(WitnessKind kind, int n_qubits) {
  switch (kind) {
    case WitnessKind::E3_1:
      return 4.0;
    case WitnessKind::E3_2:
      return 7.0;
    case WitnessKind::E3_3:
      return 5.0;
    case WitnessKind::E3_4:
      return 33.0;
    case WitnessKind::EN:
      return std::ldexp(1.0, n_qubits - 1);
    default:
      return 0.0;
  }
}

}  // namespace

ComplexOperator witness_operator(const WitnessSpec& spec, const DirectionConfig& cfg,
                                 bool unsafe_alpha) {
  check_alpha_range(spec, cfg, unsafe_alpha);
  if (is_bilinear(spec.kind)) {
    throw std::invalid_argument("witness_operator: " + to_string(spec.kind) +
                                " is bilinear and has no linear operator form");
  }
  const auto triads = cfg.triads();
  const CorrelatorPolynomial poly = linear_witness_polynomial(spec);
  const double c0 = constant_coefficient(spec.kind, spec.n_qubits) * std::cos(cfg.alpha / 2.0);
  const Eigen::Index dim = Eigen::Index(1) << spec.n_qubits;
  Matrix m = c0 * Matrix::Identity(dim, dim) + poly.to_operator(triads).matrix();
  return ComplexOperator(std::move(m));
}

WitnessValue witness_value(const WitnessSpec& spec, const DirectionConfig& cfg,
                           const DensityOperator& rho, bool unsafe_alpha) {
  check_alpha_range(spec, cfg, unsafe_alpha);
  if (rho.dim() != (Eigen::Index(1) << spec.n_qubits)) {
    throw std::invalid_argument("witness_value: state dimension mismatch");
  }
  const bool outside = cfg.alpha > spec.alpha_max + 1e-12;
  const auto triads = cfg.triads();
  double value = 0.0;

  if (!is_bilinear(spec.kind)) {
    value = expectation(witness_operator(spec, cfg, unsafe_alpha), rho);
  } else if (spec.kind == WitnessKind::B3_1) {
    const CorrelatorPolynomial p1 = pair_sum(3, 0, 1).times_symbol(2, 0);
    const CorrelatorPolynomial p2 =
        (CorrelatorPolynomial::symbol(3, 0, 1).times_symbol(1, 0) -
         CorrelatorPolynomial::symbol(3, 0, 0).times_symbol(1, 1))
            .times_symbol(2, 1);
    const double v1 = expectation(p1.to_operator(triads), rho);
    const double v2 = expectation(p2.to_operator(triads), rho);
    const double c = std::cos(cfg.alpha / 2.0);
    value = 8.0 * c * c - v1 * v1 - v2 * v2;
  } else {
    const double c = std::cos(cfg.alpha / 2.0);
    value = 7.0 * c * c;
    for (const auto& [i, j] : std::array<std::array<int, 2>, 3>{{{0, 1}, {1, 2}, {2, 0}}}) {
      const double v = expectation(
          CorrelatorPolynomial::symbol(3, i, 2).times_symbol(j, 2).to_operator(triads), rho);
      value -= v * v;
    }
    for (const auto& [v1, v2, v3] : std::array<std::array<int, 3>, 4>{
             {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}}) {
      const double v = expectation(CorrelatorPolynomial::symbol(3, 0, v1)
                                       .times_symbol(1, v2)
                                       .times_symbol(2, v3)
                                       .to_operator(triads),
                                   rho);
      value -= v * v;
    }
  }
  return {value, value < 0.0, cfg, outside};
}

double separable_minimum(const WitnessSpec& spec, double alpha, int restarts,
                         std::uint64_t seed, int threads) {
  if (restarts < 1) throw std::invalid_argument("separable_minimum: restarts must be >= 1");
  const int n = spec.n_qubits;
  const int n_patterns = uses_dprime(spec.kind) ? (1 << n) : 1;
  // 2 Bloch angles per qubit for the state, 3 Euler angles per qubit for the triad
  const int dim = 5 * n;
  double best = std::numeric_limits<double>::infinity();
  for (int pattern = 0; pattern < n_patterns; ++pattern) {
    Objective objective = [&](const Eigen::VectorXd& x) {
      std::vector<std::array<double, 2>> state_angles(static_cast<std::size_t>(n));
      std::vector<std::array<DirectionSpec, 3>> triads;
      triads.reserve(std::size_t(n));
      for (int q = 0; q < n; ++q) {
        state_angles[std::size_t(q)] = {x(5 * q), x(5 * q + 1)};
        std::array<DirectionSpec, 3> t =
            triad_from_euler(x(5 * q + 2), x(5 * q + 3), x(5 * q + 4));
        if ((pattern >> q) & 1) t[2] = -t[2];
        triads.push_back(t);
      }
      const DirectionConfig cfg = make_direction_config(alpha, triads);
      return witness_value(spec, cfg, product_state(state_angles), /*unsafe_alpha=*/true).value;
    };
    MultiStartOptions options;
    options.restarts = n_patterns == 1 ? restarts : std::max(2, restarts / n_patterns);
    options.seed = seed + std::uint64_t(pattern);
    options.threads = threads;
    best = std::min(best, multi_start_minimize(objective, dim, options).fx);
  }
  return best;
}

double separable_minimum_operator(const ComplexOperator& op, int n_qubits, int restarts,
                                  std::uint64_t seed, int threads) {
  if (restarts < 1) throw std::invalid_argument("separable_minimum_operator: restarts >= 1");
  if (op.dim() != (Eigen::Index(1) << n_qubits)) {
    throw std::invalid_argument("separable_minimum_operator: dimension mismatch");
  }
  Objective objective = [&](const Eigen::VectorXd& x) {
    std::vector<std::array<double, 2>> angles(static_cast<std::size_t>(n_qubits));
    for (int q = 0; q < n_qubits; ++q) angles[std::size_t(q)] = {x(2 * q), x(2 * q + 1)};
    return expectation(op, product_state(angles));
  };
  MultiStartOptions options;
  options.restarts = restarts;
  options.seed = seed;
  options.threads = threads;
  return multi_start_minimize(objective, 2 * n_qubits, options).fx;
}

}  // namespace pseudoproj
