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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pseudoproj/nonlocality.hpp"
#include "pseudoproj/optimize.hpp"
#include "pseudoproj/qcore.hpp"

namespace pseudoproj {

enum class WitnessKind { E3_1, E3_2, E3_3, E3_4, EN, B3_1, B3_2 };

std::string to_string(WitnessKind kind);
WitnessKind witness_kind_from_string(const std::string& name);

/// B3_1 and B3_2 are quadratic in correlators and have no linear operator.
bool is_bilinear(WitnessKind kind);

/// True for the kinds whose expression involves the a'' axes. Searches over
/// their configurations must cover both triad handedness classes (Euler
/// angles alone reach only proper frames).
bool uses_dprime(WitnessKind kind);

/// Largest angle for which the witness stays nonnegative on every fully
/// separable state (closed form per kind; `n_qubits` only matters for EN).
double alpha_max(WitnessKind kind, int n_qubits = 3);

/**
 * Measurement geometry of one qubit: three doublets of directions, each
 * pair enclosing the angle alpha, whose normalized sums (the means a, a',
 * a'') form an orthonormal basis.
 */
struct QubitFrame {
  DirectionSpec a;
  DirectionSpec a_prime;
  DirectionSpec a_dprime;
  std::array<DirectionSpec, 2> doublet_a;
  std::array<DirectionSpec, 2> doublet_a_prime;
  std::array<DirectionSpec, 2> doublet_a_dprime;
};

struct DirectionConfig {
  double alpha = 0.0;
  std::vector<QubitFrame> qubits;

  std::vector<std::array<DirectionSpec, 3>> triads() const;
};

/// Throws unless every doublet dot product equals cos(alpha) within 1e-10,
/// all vectors are unit, and the means are pairwise orthogonal within 1e-10.
void validate_direction_config(const DirectionConfig& cfg);

/**
 * Builds the doublet geometry from per-qubit orthonormal triads. Each mean's
 * doublet is obtained by rotating +-alpha/2 about the mean inside a plane;
 * by default the plane is spanned by the mean and the next triad vector
 * (cyclically). `doublet_planes`, when given, supplies one in-plane unit
 * partner per mean (must be orthogonal to it). The plane choice does not
 * affect any witness operator, since only the doublet sums enter them.
 */
DirectionConfig make_direction_config(
    double alpha, std::span<const std::array<DirectionSpec, 3>> triads,
    const std::vector<std::array<DirectionSpec, 3>>* doublet_planes = nullptr);

/// The (x, y, z) triad on every qubit.
std::vector<std::array<DirectionSpec, 3>> canonical_triads(int n_qubits);

/// Orthonormal triad from z-y-z Euler angles (columns of the rotation).
std::array<DirectionSpec, 3> triad_from_euler(double phi, double theta, double psi);

/// Pure product state from per-qubit Bloch angles (theta, phi).
DensityOperator product_state(std::span<const std::array<double, 2>> angles);

struct WitnessSpec {
  WitnessKind kind;
  int n_qubits;
  double alpha_max;
};

WitnessSpec make_witness_spec(WitnessKind kind, int n_qubits = 3);

/// Hermitian operator whose expectation is the witness value (linear kinds
/// only). Throws when cfg.alpha exceeds the witness's safe range unless
/// `unsafe_alpha` is set.
ComplexOperator witness_operator(const WitnessSpec& spec, const DirectionConfig& cfg,
                                 bool unsafe_alpha = false);

struct WitnessValue {
  double value;
  bool detected;  // value < 0
  DirectionConfig config;
  bool outside_alpha_range = false;
};

WitnessValue witness_value(const WitnessSpec& spec, const DirectionConfig& cfg,
                           const DensityOperator& rho, bool unsafe_alpha = false);

/// Numerical minimum of the witness value over pure product states and
/// direction configs (multi-start local search; best found, not certified).
double separable_minimum(const WitnessSpec& spec, double alpha, int restarts,
                         std::uint64_t seed, int threads = 0);

/// Minimum expectation of a fixed Hermitian operator over pure product states.
double separable_minimum_operator(const ComplexOperator& op, int n_qubits, int restarts,
                                  std::uint64_t seed, int threads = 0);

}  // namespace pseudoproj
