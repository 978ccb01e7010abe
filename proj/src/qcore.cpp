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

#include "pseudoproj/qcore.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pseudoproj {

namespace {

bool is_hermitian(const Matrix& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

int qubit_count_or_zero(Eigen::Index dim) {
  int n = 0;
  Eigen::Index d = dim;
  while (d > 1 && d % 2 == 0) {
    d /= 2;
    ++n;
  }
  return d == 1 ? n : 0;
}

}  // namespace

ComplexOperator::ComplexOperator(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("ComplexOperator: matrix must be square and nonempty");
  }
  hermitian_ = is_hermitian(entries_, kHermitianTol);
}

ComplexOperator ComplexOperator::identity(Eigen::Index dim) {
  return ComplexOperator(Matrix::Identity(dim, dim));
}

ComplexOperator ComplexOperator::zero(Eigen::Index dim) {
  return ComplexOperator(Matrix::Zero(dim, dim));
}

ComplexOperator ComplexOperator::adjoint() const {
  return ComplexOperator(entries_.adjoint());
}

double ComplexOperator::max_abs() const { return entries_.cwiseAbs().maxCoeff(); }

double ComplexOperator::max_abs_diff(const ComplexOperator& other) const {
  if (other.dim() != dim()) {
    throw std::invalid_argument("ComplexOperator: dimension mismatch");
  }
  return (entries_ - other.entries_).cwiseAbs().maxCoeff();
}

std::pair<double, double> ComplexOperator::eigenvalue_range() const {
  if (!hermitian_) {
    throw std::invalid_argument("eigenvalue_range: operator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

ComplexOperator operator+(const ComplexOperator& a, const ComplexOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("operator+: dimension mismatch");
  return ComplexOperator(a.entries_ + b.entries_);
}

ComplexOperator operator-(const ComplexOperator& a, const ComplexOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("operator-: dimension mismatch");
  return ComplexOperator(a.entries_ - b.entries_);
}

ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("operator*: dimension mismatch");
  return ComplexOperator(a.entries_ * b.entries_);
}

ComplexOperator operator*(double s, const ComplexOperator& a) {
  return ComplexOperator(s * a.entries_);
}

DirectionSpec::DirectionSpec(const Vector3& v) : vec_(v) {
  if (std::abs(vec_.norm() - 1.0) > kUnitNormTol) {
    throw std::invalid_argument("DirectionSpec: vector is not unit norm");
  }
}

DensityOperator::DensityOperator(ComplexOperator op) : op_(std::move(op)) {
  if (!op_.hermitian()) {
    throw std::invalid_argument("DensityOperator: not Hermitian");
  }
  const Complex tr = op_.matrix().trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kHermitianTol) {
    throw std::invalid_argument("DensityOperator: trace differs from one by " +
                                std::to_string(std::abs(tr - Complex(1.0, 0.0))));
  }
  const auto [lo, hi] = op_.eigenvalue_range();
  if (lo < -kHermitianTol) {
    throw std::invalid_argument("DensityOperator: negative eigenvalue " + std::to_string(lo));
  }
  n_qubits_ = qubit_count_or_zero(op_.dim());
}

DensityOperator DensityOperator::from_pure(const StateVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw std::invalid_argument("from_pure: zero vector");
  const StateVector v = psi / norm;
  return DensityOperator(ComplexOperator(v * v.adjoint()));
}

ComplexOperator sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return ComplexOperator(m);
}

ComplexOperator sigma_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return ComplexOperator(m);
}

ComplexOperator sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return ComplexOperator(m);
}

ComplexOperator pauli_from_direction(const DirectionSpec& n) {
  const Vector3& v = n.vec();
  Matrix m(2, 2);
  m << v.z(), Complex(v.x(), -v.y()), Complex(v.x(), v.y()), -v.z();
  return ComplexOperator(m);
}

ComplexOperator tensor_product(std::span<const ComplexOperator> factors) {
  if (factors.empty()) {
    throw std::invalid_argument("tensor_product: empty factor list");
  }
  Matrix result = factors[0].matrix();
  for (std::size_t k = 1; k < factors.size(); ++k) {
    const Matrix& f = factors[k].matrix();
    Matrix next(result.rows() * f.rows(), result.cols() * f.cols());
    for (Eigen::Index i = 0; i < result.rows(); ++i) {
      for (Eigen::Index j = 0; j < result.cols(); ++j) {
        next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = result(i, j) * f;
      }
    }
    result = std::move(next);
  }
  return ComplexOperator(std::move(result));
}

ComplexOperator tensor_product(std::initializer_list<ComplexOperator> factors) {
  std::vector<ComplexOperator> v(factors);
  return tensor_product(std::span<const ComplexOperator>(v));
}

double expectation(const ComplexOperator& O, const DensityOperator& rho) {
  if (O.dim() != rho.dim()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  if (!O.hermitian()) {
    throw std::invalid_argument("expectation: operator is not Hermitian");
  }
  const Complex tr = (O.matrix() * rho.op().matrix()).trace();
  if (std::abs(tr.imag()) > kHermitianTol) {
    throw std::runtime_error("expectation: imaginary trace residue " +
                             std::to_string(tr.imag()));
  }
  return tr.real();
}

DensityOperator ghz(int n_qubits) {
  if (n_qubits < 2) throw std::invalid_argument("ghz: need at least 2 qubits");
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  StateVector psi = StateVector::Zero(dim);
  psi(0) = 1.0 / std::sqrt(2.0);
  psi(dim - 1) = 1.0 / std::sqrt(2.0);
  return DensityOperator::from_pure(psi);
}

DensityOperator w3() {
  StateVector psi = StateVector::Zero(8);
  const double a = 1.0 / std::sqrt(3.0);
  psi(1) = a;  // |001>
  psi(2) = a;  // |010>
  psi(4) = a;  // |100>
  return DensityOperator::from_pure(psi);
}

DensityOperator add_white_noise(const DensityOperator& rho, double p) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("add_white_noise: p must lie in [0, 1]");
  }
  const Eigen::Index d = rho.dim();
  Matrix m = p * rho.op().matrix() + (1.0 - p) / double(d) * Matrix::Identity(d, d);
  return DensityOperator(ComplexOperator(std::move(m)));
}

}  // namespace pseudoproj
