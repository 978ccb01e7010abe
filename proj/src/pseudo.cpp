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

#include "pseudoproj/pseudo.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pseudoproj {

Projection::Projection(ComplexOperator op) : op_(std::move(op)) {
  if (!op_.hermitian()) {
    throw std::invalid_argument("Projection: not Hermitian");
  }
  const double idem = (op_.matrix() * op_.matrix() - op_.matrix()).cwiseAbs().maxCoeff();
  if (idem > kHermitianTol) {
    throw std::invalid_argument("Projection: not idempotent");
  }
}

Projection projection(const DirectionSpec& n, int outcome) {
  if (outcome != 1 && outcome != -1) {
    throw std::invalid_argument("projection: outcome must be +1 or -1");
  }
  const Matrix m =
      0.5 * (Matrix::Identity(2, 2) + double(outcome) * pauli_from_direction(n).matrix());
  return Projection(ComplexOperator(m));
}

PseudoProjection PseudoProjection::from_operator(ComplexOperator op,
                                                 std::string provenance) {
  if (!op.hermitian()) {
    throw std::invalid_argument("PseudoProjection: not Hermitian");
  }
  return PseudoProjection(std::move(op), std::move(provenance));
}

namespace {

void check_same_dim(std::span<const Projection> ps) {
  if (ps.empty()) throw std::invalid_argument("pseudoprojection: empty projection list");
  for (const auto& p : ps) {
    if (p.dim() != ps[0].dim()) {
      throw std::invalid_argument("pseudoprojection: dimension mismatch");
    }
  }
}

Matrix ordered_product(std::span<const Projection> ps, const std::vector<int>& order) {
  Matrix prod = ps[order[0]].op().matrix();
  for (std::size_t k = 1; k < order.size(); ++k) {
    prod = prod * ps[order[k]].op().matrix();
  }
  return prod;
}

}  // namespace

PseudoProjection unit_pseudoprojection(std::span<const Projection> ps) {
  check_same_dim(ps);
  std::vector<int> order(ps.size());
  std::iota(order.begin(), order.end(), 0);
  const Matrix prod = ordered_product(ps, order);
  return PseudoProjection::from_operator(ComplexOperator(0.5 * (prod + prod.adjoint())),
                                         "unit(" + std::to_string(ps.size()) + ")");
}

PseudoProjection symmetrized_pseudoprojection(std::span<const Projection> ps) {
  check_same_dim(ps);
  const int n = int(ps.size());
  if (n > kMaxProjectionsPerSubsystem) {
    throw std::invalid_argument("symmetrized_pseudoprojection: more than " +
                                std::to_string(kMaxProjectionsPerSubsystem) +
                                " projections (ordering enumeration refused)");
  }
  std::vector<int> order(ps.size());
  std::iota(order.begin(), order.end(), 0);
  Matrix acc = Matrix::Zero(ps[0].dim(), ps[0].dim());
  std::size_t count = 0;
  do {
    const Matrix prod = ordered_product(ps, order);
    acc += 0.5 * (prod + prod.adjoint());
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  acc /= double(count);
  return PseudoProjection::from_operator(
      ComplexOperator(std::move(acc)),
      "symmetrized(" + std::to_string(ps.size()) + ", orderings=" + std::to_string(count) + ")");
}

PseudoProjection joint_pseudoprojection(std::span<const PseudoProjection> factors) {
  if (factors.empty()) {
    throw std::invalid_argument("joint_pseudoprojection: empty factor list");
  }
  std::vector<ComplexOperator> ops;
  ops.reserve(factors.size());
  std::string provenance = "joint(";
  for (const auto& f : factors) {
    if (!ops.empty()) provenance += " x ";
    ops.push_back(f.op());
    provenance += f.provenance();
  }
  return PseudoProjection::from_operator(tensor_product(ops), provenance + ")");
}

double pseudoprobability(const PseudoProjection& P, const DensityOperator& rho) {
  if (P.dim() != rho.dim()) {
    throw std::invalid_argument("pseudoprobability: dimension mismatch");
  }
  const Complex tr = (P.op().matrix() * rho.op().matrix()).trace();
  if (std::abs(tr.imag()) > kHermitianTol) {
    throw std::runtime_error("pseudoprobability: imaginary trace residue");
  }
  return tr.real();
}

PseudoProbabilityScheme::PseudoProbabilityScheme(
    std::vector<std::vector<DirectionSpec>> observables, std::vector<double> values)
    : observables_(std::move(observables)), values_(std::move(values)) {
  total_observables_ = 0;
  for (const auto& per_sub : observables_) total_observables_ += int(per_sub.size());
  if (values_.size() != (std::size_t(1) << total_observables_)) {
    throw std::invalid_argument("PseudoProbabilityScheme: entry count mismatch");
  }
}

std::string PseudoProbabilityScheme::outcome_string(std::size_t idx) const {
  std::string s(total_observables_, '+');
  for (int k = 0; k < total_observables_; ++k) {
    if ((idx >> (total_observables_ - 1 - k)) & 1u) s[k] = '-';
  }
  return s;
}

double PseudoProbabilityScheme::value(const std::string& outcome) const {
  if (int(outcome.size()) != total_observables_) {
    throw std::invalid_argument("PseudoProbabilityScheme: outcome string length mismatch");
  }
  std::size_t idx = 0;
  for (char c : outcome) {
    idx <<= 1;
    if (c == '-') {
      idx |= 1;
    } else if (c != '+') {
      throw std::invalid_argument("PseudoProbabilityScheme: outcome characters must be + or -");
    }
  }
  return values_[idx];
}

double PseudoProbabilityScheme::sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

PseudoProbabilityScheme build_pps(const std::vector<std::vector<DirectionSpec>>& observables,
                                  const DensityOperator& rho) {
  if (observables.empty()) {
    throw std::invalid_argument("build_pps: no subsystems");
  }
  int total = 0;
  for (const auto& per_sub : observables) {
    if (per_sub.empty()) {
      throw std::invalid_argument("build_pps: every subsystem needs at least one observable");
    }
    total += int(per_sub.size());
  }
  if (total > kMaxTotalObservables) {
    throw std::invalid_argument("build_pps: more than 2^24 entries refused");
  }
  const int n_sub = int(observables.size());
  if ((Eigen::Index(1) << n_sub) != rho.dim()) {
    throw std::invalid_argument("build_pps: state dimension does not match subsystem count");
  }

  // Per subsystem, the symmetrized pseudoprojection for each local outcome tuple.
  std::vector<std::vector<PseudoProjection>> local(n_sub);
  for (int s = 0; s < n_sub; ++s) {
    const auto& dirs = observables[s];
    const int m = int(dirs.size());
    local[s].reserve(std::size_t(1) << m);
    for (std::size_t bits = 0; bits < (std::size_t(1) << m); ++bits) {
      std::vector<Projection> ps;
      ps.reserve(m);
      for (int k = 0; k < m; ++k) {
        const int outcome = ((bits >> (m - 1 - k)) & 1u) ? -1 : +1;
        ps.push_back(projection(dirs[k], outcome));
      }
      local[s].push_back(symmetrized_pseudoprojection(ps));
    }
  }

  std::vector<double> values(std::size_t(1) << total);
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    std::vector<PseudoProjection> factors;
    factors.reserve(n_sub);
    int shift = total;
    for (int s = 0; s < n_sub; ++s) {
      const int m = int(observables[s].size());
      shift -= m;
      const std::size_t bits = (idx >> shift) & ((std::size_t(1) << m) - 1);
      factors.push_back(local[s][bits]);
    }
    values[idx] = pseudoprobability(joint_pseudoprojection(factors), rho);
  }
  PseudoProbabilityScheme pps(observables, std::move(values));
  // outcome decompositions are complete, so the entries always sum to one
  if (std::abs(pps.sum() - 1.0) > 1e-9) {
    throw std::runtime_error("build_pps: entries sum to " + std::to_string(pps.sum()));
  }
  return pps;
}

std::vector<std::pair<std::string, double>> detect_negativity(
    const PseudoProbabilityScheme& pps, double eps) {
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < pps.size(); ++i) {
    if (pps.value(i) < -eps) out.emplace_back(pps.outcome_string(i), pps.value(i));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

}  // namespace pseudoproj
