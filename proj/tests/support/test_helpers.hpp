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

// Shared test utilities: seeded random generators and the event-sum
// constructions used as independent oracles against the closed forms.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <random>
#include <vector>

#include "pseudoproj/events.hpp"
#include "pseudoproj/nonlocality.hpp"
#include "pseudoproj/qcore.hpp"
#include "pseudoproj/witness.hpp"

namespace pseudoproj::testing {

inline DirectionSpec random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector3 v;
  do {
    v = Vector3(g(rng), g(rng), g(rng));
  } while (v.norm() < 1e-6);
  return DirectionSpec(Vector3(v / v.norm()));
}

inline DensityOperator random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  Matrix m = a * a.adjoint();
  m /= m.trace().real();
  return DensityOperator(ComplexOperator(std::move(m)));
}

inline DensityOperator random_pure(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  StateVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(g(rng), g(rng));
  return DensityOperator::from_pure(v);
}

/// Haar-ish random orthonormal triad (QR of a Gaussian matrix), covering
/// both handedness classes.
inline std::array<DirectionSpec, 3> random_triad(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a(i, j) = g(rng);
  }
  Eigen::Matrix3d q = Eigen::HouseholderQR<Eigen::Matrix3d>(a).householderQ();
  const double flip = (rng() & 1u) ? -1.0 : 1.0;
  return {DirectionSpec(Vector3(q.col(0))), DirectionSpec(Vector3(q.col(1))),
          DirectionSpec(Vector3(flip * q.col(2)))};
}

inline std::vector<ObservablePair> random_pairs(int n, std::mt19937_64& rng) {
  std::vector<ObservablePair> obs;
  obs.reserve(std::size_t(n));
  for (int q = 0; q < n; ++q) obs.push_back({random_direction(rng), random_direction(rng)});
  return obs;
}

/// Measurement settings reaching <M_3> = -4 on the three-qubit GHZ state.
inline std::vector<ObservablePair> ghz_mermin_optimal_pairs() {
  return {{DirectionSpec::x(), -DirectionSpec::y()},
          {DirectionSpec::x(), DirectionSpec::y()},
          {DirectionSpec::y(), -DirectionSpec::x()}};
}

/// Triads extending the Mermin-optimal settings with the a'' pattern that
/// minimizes the cyclic two-body sum (-1, +1, -1 z-components).
inline std::vector<std::array<DirectionSpec, 3>> ghz_witness_optimal_triads() {
  return {{DirectionSpec::x(), -DirectionSpec::y(), -DirectionSpec::z()},
          {DirectionSpec::x(), DirectionSpec::y(), DirectionSpec::z()},
          {DirectionSpec::y(), -DirectionSpec::x(), -DirectionSpec::z()}};
}

// ---------------------------------------------------------------------------
// Event sums whose compiled pseudoprobabilities must match the closed forms.
// These are the oracles: they go through projections, symmetrized products
// and tensor compilation only, never through the polynomial builders.
// ---------------------------------------------------------------------------

/// The pseudoprobability of (event AND third-qubit observable = outcome).
inline double conj_prob(const Event& e, int subsystem, const DirectionSpec& axis, int outcome,
                        const DensityOperator& rho, bool use_cache = false) {
  CompileOptions opts;
  opts.use_cache = use_cache;
  return event_pseudoprobability(
      Event::conjunction({e, Event::atomic(subsystem, axis, outcome)}), rho, opts);
}

/// The four-event sum over two-party equality chains with a third-party
/// conjunction whose negativity is the three-party hybrid-model inequality.
/// Returns the total pseudoprobability; equals (4 + <S_3>)/4.
inline double svetlichny3_event_sum(std::span<const ObservablePair> obs,
                                    const DensityOperator& rho) {
  const auto& o = obs;
  auto chain = [&](const DirectionSpec& first, const DirectionSpec& second,
                   const DirectionSpec& third, bool bar_first, bool bar_third) {
    return equality_event({{0, first}, {0, second}, {1, third}},
                          (bar_first ? 1u : 0u) | (bar_third ? 4u : 0u));
  };
  // base pair of chains, then the primed/unprimed interchange, then the
  // second-party bar flips of each
  const Event e_alpha = Event::disjunction(
      {chain(o[0].a, o[0].a_prime, o[1].a, true, false),
       chain(o[0].a, o[0].a_prime, o[1].a_prime, false, false)});
  const Event e_alpha_p = Event::disjunction(
      {chain(o[0].a, o[0].a_prime, o[1].a, true, true),
       chain(o[0].a, o[0].a_prime, o[1].a_prime, false, true)});
  const Event e_beta = Event::disjunction(
      {chain(o[0].a_prime, o[0].a, o[1].a_prime, true, false),
       chain(o[0].a_prime, o[0].a, o[1].a, false, false)});
  const Event e_beta_p = Event::disjunction(
      {chain(o[0].a_prime, o[0].a, o[1].a_prime, true, true),
       chain(o[0].a_prime, o[0].a, o[1].a, false, true)});
  return conj_prob(e_alpha, 2, o[2].a_prime, +1, rho) +
         conj_prob(e_alpha_p, 2, o[2].a_prime, -1, rho) +
         conj_prob(e_beta, 2, o[2].a, +1, rho) + conj_prob(e_beta_p, 2, o[2].a, -1, rho);
}

/// Doublet equality chain E(first-qubit doublet = second-qubit observable),
/// optionally with the second-qubit member barred.
inline Event doublet_chain(const std::array<DirectionSpec, 2>& doublet, int other_subsystem,
                           const DirectionSpec& other, bool bar_other) {
  return equality_event({{0, doublet[0]}, {0, doublet[1]}, {other_subsystem, other}},
                        bar_other ? 4u : 0u);
}

/// The sixteen-term doublet event sum; equals cos(a/2)/2 * <4 cos(a/2) + M_3>.
inline double witness_core_event_sum(const DirectionConfig& cfg, const DensityOperator& rho) {
  const auto& q1 = cfg.qubits[0];
  const auto& q2 = cfg.qubits[1];
  const auto& q3 = cfg.qubits[2];
  const Event e1 = doublet_chain(q1.doublet_a, 1, q2.a, false);
  const Event e2 = doublet_chain(q1.doublet_a_prime, 1, q2.a_prime, false);
  const Event e3 = doublet_chain(q1.doublet_a, 1, q2.a, true);
  const Event e4 = doublet_chain(q1.doublet_a_prime, 1, q2.a_prime, true);
  const Event e5 = doublet_chain(q1.doublet_a, 1, q2.a_prime, false);
  const Event e6 = doublet_chain(q1.doublet_a_prime, 1, q2.a, true);
  const Event e7 = doublet_chain(q1.doublet_a, 1, q2.a_prime, true);
  const Event e8 = doublet_chain(q1.doublet_a_prime, 1, q2.a, false);
  return conj_prob(e1, 2, q3.a_prime, +1, rho) + conj_prob(e2, 2, q3.a_prime, +1, rho) +
         conj_prob(e3, 2, q3.a_prime, -1, rho) + conj_prob(e4, 2, q3.a_prime, -1, rho) +
         conj_prob(e5, 2, q3.a, +1, rho) + conj_prob(e6, 2, q3.a, +1, rho) +
         conj_prob(e7, 2, q3.a, -1, rho) + conj_prob(e8, 2, q3.a, -1, rho);
}

/// Cyclic sum of P(a''_i = j-th double-primed doublet); each term equals
/// cos(a/2)/2 * (cos(a/2) + <a''_i a''_j>).
inline double dprime_pair_event_sum(const DirectionConfig& cfg, const DensityOperator& rho) {
  double total = 0.0;
  const std::array<std::array<int, 2>, 3> cyc = {{{0, 1}, {1, 2}, {2, 0}}};
  for (const auto& [i, j] : cyc) {
    const auto& qi = cfg.qubits[std::size_t(i)];
    const auto& qj = cfg.qubits[std::size_t(j)];
    CompileOptions opts;
    opts.use_cache = false;
    total += event_pseudoprobability(
        equality_event({{i, qi.a_dprime},
                        {j, qj.doublet_a_dprime[0]},
                        {j, qj.doublet_a_dprime[1]}},
                       0),
        rho, opts);
  }
  return total;
}

}  // namespace pseudoproj::testing
