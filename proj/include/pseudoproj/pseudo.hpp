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

#include <string>
#include <vector>

#include "pseudoproj/qcore.hpp"

namespace pseudoproj {

/// Orderings of more than this many projections are refused (factorial blowup).
inline constexpr int kMaxProjectionsPerSubsystem = 8;
/// Schemes with more than 2^24 joint outcomes are refused.
inline constexpr int kMaxTotalObservables = 24;

/// Hermitian idempotent operator, validated on construction.
class Projection {
 public:
  explicit Projection(ComplexOperator op);
  const ComplexOperator& op() const { return op_; }
  Eigen::Index dim() const { return op_.dim(); }

 private:
  ComplexOperator op_;
};

/// Rank-1 qubit projection (I + outcome * sigma.n)/2 for outcome +-1.
Projection projection(const DirectionSpec& n, int outcome);

/**
 * Hermitian operator standing in for the indicator function of a joint
 * outcome of (generally noncommuting) observables. Not idempotent in
 * general; its spectrum may leave [0, 1], which is what negativity
 * detection exploits.
 */
class PseudoProjection {
 public:
  /// Wraps a Hermitian operator; throws otherwise.
  static PseudoProjection from_operator(ComplexOperator op,
                                        std::string provenance = "operator");

  const ComplexOperator& op() const { return op_; }
  Eigen::Index dim() const { return op_.dim(); }

  /// How the operator was assembled (ordering counts, factor structure).
  const std::string& provenance() const { return provenance_; }

  /// Smallest and largest eigenvalue, computed on demand.
  std::pair<double, double> eigenvalue_range() const { return op_.eigenvalue_range(); }

 private:
  PseudoProjection(ComplexOperator op, std::string provenance)
      : op_(std::move(op)), provenance_(std::move(provenance)) {}
  ComplexOperator op_;
  std::string provenance_;
};

/// (product-in-order + its adjoint)/2 for one fixed ordering of projections.
PseudoProjection unit_pseudoprojection(std::span<const Projection> ps);

/// Uniform average of unit pseudoprojections over all orderings of `ps`
/// (at most kMaxProjectionsPerSubsystem of them).
PseudoProjection symmetrized_pseudoprojection(std::span<const Projection> ps);

/// Tensor product of per-subsystem pseudoprojections, in subsystem order.
PseudoProjection joint_pseudoprojection(std::span<const PseudoProjection> factors);

/// Re Tr(P rho); may be negative or exceed one.
double pseudoprobability(const PseudoProjection& P, const DensityOperator& rho);

/**
 * Table of pseudoprobabilities over every joint outcome of a chosen set of
 * observables (a PPS). Outcome tuples are ordered subsystem-major,
 * observable-minor and rendered as strings of '+'/'-' characters.
 */
class PseudoProbabilityScheme {
 public:
  PseudoProbabilityScheme(std::vector<std::vector<DirectionSpec>> observables,
                          std::vector<double> values);

  const std::vector<std::vector<DirectionSpec>>& observables() const { return observables_; }

  int total_observables() const { return total_observables_; }
  std::size_t size() const { return values_.size(); }

  /// Outcome string for the entry at enumeration index `idx` ('+' sorts first).
  std::string outcome_string(std::size_t idx) const;
  double value(std::size_t idx) const { return values_[idx]; }
  double value(const std::string& outcome) const;

  /// Sum of all entries; equals one within 1e-9 for a complete scheme.
  double sum() const;

 private:
  std::vector<std::vector<DirectionSpec>> observables_;
  std::vector<double> values_;
  int total_observables_;
};

/// Builds the full scheme: one entry per joint outcome tuple, each the
/// pseudoprobability of the symmetrized pseudoprojection for that tuple.
PseudoProbabilityScheme build_pps(const std::vector<std::vector<DirectionSpec>>& observables,
                                  const DensityOperator& rho);

/// All entries below -eps, sorted by ascending value. An empty result means
/// the scheme is classical at tolerance eps.
std::vector<std::pair<std::string, double>> detect_negativity(
    const PseudoProbabilityScheme& pps, double eps = 1e-12);

}  // namespace pseudoproj
