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
#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace pseudoproj {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using Vector3 = Eigen::Vector3d;

/// Tolerance for Hermiticity / positivity / trace checks on operators.
inline constexpr double kHermitianTol = 1e-10;
/// Tolerance for unit-norm checks on Bloch vectors.
inline constexpr double kUnitNormTol = 1e-12;

/**
 * Dense complex square matrix with a cached Hermiticity flag.
 *
 * Everything in this library (observables, projections, pseudoprojections,
 * witness operators) is stored as a ComplexOperator. Values are immutable
 * after construction and safe to share across threads.
 */
class ComplexOperator {
 public:
  explicit ComplexOperator(Matrix entries);

  static ComplexOperator identity(Eigen::Index dim);
  static ComplexOperator zero(Eigen::Index dim);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }

  /// True when max|entry - conj(transposed entry)| <= kHermitianTol.
  bool hermitian() const { return hermitian_; }

  ComplexOperator adjoint() const;

  /// Largest absolute entry (max norm).
  double max_abs() const;

  /// Entrywise max-norm distance to another operator of the same dimension.
  double max_abs_diff(const ComplexOperator& other) const;

  /// [min, max] eigenvalue; requires a Hermitian operator.
  std::pair<double, double> eigenvalue_range() const;

  friend ComplexOperator operator+(const ComplexOperator& a, const ComplexOperator& b);
  friend ComplexOperator operator-(const ComplexOperator& a, const ComplexOperator& b);
  friend ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b);
  friend ComplexOperator operator*(double s, const ComplexOperator& a);

 private:
  Matrix entries_;
  bool hermitian_;
};

/// Unit Bloch vector; the axis of a dichotomic qubit observable.
class DirectionSpec {
 public:
  explicit DirectionSpec(const Vector3& v);
  DirectionSpec(double x, double y, double z) : DirectionSpec(Vector3(x, y, z)) {}

  const Vector3& vec() const { return vec_; }

  static DirectionSpec x() { return DirectionSpec(1, 0, 0); }
  static DirectionSpec y() { return DirectionSpec(0, 1, 0); }
  static DirectionSpec z() { return DirectionSpec(0, 0, 1); }

  /// Antipodal direction.
  DirectionSpec operator-() const { return DirectionSpec(Vector3(-vec_)); }

 private:
  Vector3 vec_;
};

/**
 * Hermitian, positive semidefinite, unit-trace operator.
 *
 * Validated on construction: Hermitian within 1e-10, trace within 1e-10
 * of one, smallest eigenvalue >= -1e-10. `n_qubits` is the qubit count
 * when the dimension is a power of two, and 0 for generic dimensions
 * (as used by the operator-expansion module).
 */
class DensityOperator {
 public:
  explicit DensityOperator(ComplexOperator op);

  static DensityOperator from_pure(const StateVector& psi);

  const ComplexOperator& op() const { return op_; }
  Eigen::Index dim() const { return op_.dim(); }
  int n_qubits() const { return n_qubits_; }

 private:
  ComplexOperator op_;
  int n_qubits_;
};

ComplexOperator sigma_x();
ComplexOperator sigma_y();
ComplexOperator sigma_z();

/// n_x sigma_x + n_y sigma_y + n_z sigma_z; Hermitian, traceless, eigenvalues +-1.
ComplexOperator pauli_from_direction(const DirectionSpec& n);

/// Kronecker product in list order; the first factor is the leftmost
/// (most significant) subsystem. This qubit-ordering convention is fixed
/// here and honored by every module.
ComplexOperator tensor_product(std::span<const ComplexOperator> factors);
ComplexOperator tensor_product(std::initializer_list<ComplexOperator> factors);

/// Re Tr(O rho) for Hermitian O; throws if the imaginary part of the trace
/// exceeds 1e-10 in magnitude.
double expectation(const ComplexOperator& O, const DensityOperator& rho);

/// (|0...0> + |1...1>)/sqrt(2) on N >= 2 qubits, as a density operator.
DensityOperator ghz(int n_qubits);

/// (|001> + |010> + |100>)/sqrt(3), as a density operator.
DensityOperator w3();

/// p*rho + (1-p)*I/dim. Every traceless correlator scales by exactly p.
DensityOperator add_white_noise(const DensityOperator& rho, double p);

}  // namespace pseudoproj
