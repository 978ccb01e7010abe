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

#include "pseudoproj/pseudo.hpp"
#include "pseudoproj/qcore.hpp"

namespace pseudoproj {

/// The d^2 - 1 traceless Hermitian generators in dimension d, ordered as all
/// X_ij (i < j, lexicographic), all Y_ij, then the diagonal Z_l
/// (l = 1..d-1, normalized by sqrt(2/(l(l+1)))). Indices are zero-based.
std::vector<ComplexOperator> gellmann_basis(int d);

ComplexOperator x_generator(int i, int j, int d);
ComplexOperator y_generator(int i, int j, int d);
ComplexOperator z_generator(int l, int d);
/// Z_{i,j} = |i><i| - |j><j| embedded in dimension d.
ComplexOperator z_pair_generator(int i, int j, int d);
/// Block identity 1_ij (ones at positions i and j on the diagonal).
ComplexOperator block_identity(int i, int j, int d);

/**
 * Coefficients of a Hermitian operator over identity plus the generator
 * basis: O = w I + sum x_ij X_ij + sum y_ij Y_ij + sum z_l Z_l.
 */
struct PauliDecomposition {
  int dim;
  double w;
  Eigen::MatrixXd x;  // upper triangle, x(i, j) for i < j
  Eigen::MatrixXd y;
  Eigen::VectorXd z;  // z(l - 1) for l = 1..d-1

  /// z'_{i, l+1} = sqrt(2/(l(l+1))) z_l, the weight Z_l spreads onto each
  /// of its pair generators Z_{i, l+1}, i = 1..l (arguments one-based).
  double z_redistributed(int l) const;

  ComplexOperator reconstruct() const;
};

PauliDecomposition decompose(const ComplexOperator& O);

/// The six two-dimensional-subspace pseudoprojections for block {i, j},
/// plus the triple pseudoprojection (equal to -1_ij/16 on the block).
struct SubspacePseudoProjections {
  PseudoProjection x_plus, x_minus;
  PseudoProjection y_plus, y_minus;
  PseudoProjection z_plus, z_minus;
  PseudoProjection triple;
};

SubspacePseudoProjections subspace_pseudoprojections(int i, int j, double theta, int d);

struct ExpansionTerm {
  double weight;
  int i, j;          // block indices, zero-based
  std::string kind;  // X+, X-, Y+, Y-, Z+, Z-, R
  PseudoProjection pp;
};

/**
 * Nonnegatively weighted pseudoprojection expansion of a Hermitian operator:
 * O = sum over terms plus constant_terms of weight * pseudoprojection.
 */
struct Expansion {
  double theta;
  int dim;
  std::vector<ExpansionTerm> terms;
  std::vector<ExpansionTerm> constant_terms;

  ComplexOperator reconstruct() const;
  double min_weight() const;
};

/// Decomposes O over the generator basis, splits each coefficient by sign,
/// and assembles the corresponding sec/cosec-weighted pseudoprojection terms
/// together with the constant block. All weights are nonnegative; theta must
/// lie strictly inside (0, pi).
Expansion expand_operator(const ComplexOperator& O, double theta);

}  // namespace pseudoproj
