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

#include "pseudoproj/expand.hpp"

#include <cmath>
#include <stdexcept>

namespace pseudoproj {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_block(int i, int j, int d) {
  if (d < 2) throw std::invalid_argument("generator basis needs dimension >= 2");
  if (i < 0 || j <= i || j >= d) {
    throw std::invalid_argument("block indices must satisfy 0 <= i < j < d");
  }
}

}  // namespace

ComplexOperator x_generator(int i, int j, int d) {
  check_block(i, j, d);
  Matrix m = Matrix::Zero(d, d);
  m(i, j) = 1.0;
  m(j, i) = 1.0;
  return ComplexOperator(std::move(m));
}

ComplexOperator y_generator(int i, int j, int d) {
  check_block(i, j, d);
  Matrix m = Matrix::Zero(d, d);
  m(i, j) = Complex(0.0, -1.0);
  m(j, i) = Complex(0.0, 1.0);
  return ComplexOperator(std::move(m));
}

ComplexOperator z_generator(int l, int d) {
  if (d < 2 || l < 1 || l > d - 1) {
    throw std::invalid_argument("z_generator: need 1 <= l <= d-1");
  }
  Matrix m = Matrix::Zero(d, d);
  const double norm = std::sqrt(2.0 / (double(l) * double(l + 1)));
  for (int k = 0; k < l; ++k) m(k, k) = norm;
  m(l, l) = -norm * double(l);
  return ComplexOperator(std::move(m));
}

ComplexOperator z_pair_generator(int i, int j, int d) {
  check_block(i, j, d);
  Matrix m = Matrix::Zero(d, d);
  m(i, i) = 1.0;
  m(j, j) = -1.0;
  return ComplexOperator(std::move(m));
}

ComplexOperator block_identity(int i, int j, int d) {
  check_block(i, j, d);
  Matrix m = Matrix::Zero(d, d);
  m(i, i) = 1.0;
  m(j, j) = 1.0;
  return ComplexOperator(std::move(m));
}

std::vector<ComplexOperator> gellmann_basis(int d) {
  if (d < 2) throw std::invalid_argument("gellmann_basis: need d >= 2");
  std::vector<ComplexOperator> basis;
  basis.reserve(std::size_t(d) * std::size_t(d) - 1);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) basis.push_back(x_generator(i, j, d));
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) basis.push_back(y_generator(i, j, d));
  }
  for (int l = 1; l < d; ++l) basis.push_back(z_generator(l, d));
  return basis;
}

double PauliDecomposition::z_redistributed(int l) const {
  if (l < 1 || l > dim - 1) throw std::invalid_argument("z_redistributed: l out of range");
  return std::sqrt(2.0 / (double(l) * double(l + 1))) * z(l - 1);
}

ComplexOperator PauliDecomposition::reconstruct() const {
  Matrix m = w * Matrix::Identity(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      if (x(i, j) != 0.0) m += x(i, j) * x_generator(i, j, dim).matrix();
      if (y(i, j) != 0.0) m += y(i, j) * y_generator(i, j, dim).matrix();
    }
  }
  for (int l = 1; l < dim; ++l) {
    if (z(l - 1) != 0.0) m += z(l - 1) * z_generator(l, dim).matrix();
  }
  return ComplexOperator(std::move(m));
}

PauliDecomposition decompose(const ComplexOperator& O) {
  if (!O.hermitian()) throw std::invalid_argument("decompose: operator is not Hermitian");
  const int d = int(O.dim());
  if (d < 2) throw std::invalid_argument("decompose: need dimension >= 2");
  PauliDecomposition dec;
  dec.dim = d;
  dec.w = O.matrix().trace().real() / double(d);
  dec.x = Eigen::MatrixXd::Zero(d, d);
  dec.y = Eigen::MatrixXd::Zero(d, d);
  dec.z = Eigen::VectorXd::Zero(d - 1);
  // all generators have squared trace norm 2
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      dec.x(i, j) = 0.5 * (O.matrix() * x_generator(i, j, d).matrix()).trace().real();
      dec.y(i, j) = 0.5 * (O.matrix() * y_generator(i, j, d).matrix()).trace().real();
    }
  }
  for (int l = 1; l < d; ++l) {
    dec.z(l - 1) = 0.5 * (O.matrix() * z_generator(l, d).matrix()).trace().real();
  }
  return dec;
}

SubspacePseudoProjections subspace_pseudoprojections(int i, int j, double theta, int d) {
  check_block(i, j, d);
  if (theta <= 0.0 || theta >= kPi) {
    throw std::invalid_argument("subspace_pseudoprojections: theta in (0, pi) required");
  }
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Matrix one = block_identity(i, j, d).matrix();
  const Matrix X = x_generator(i, j, d).matrix();
  const Matrix Y = y_generator(i, j, d).matrix();
  const Matrix Z = z_pair_generator(i, j, d).matrix();

  auto pp = [](Matrix m) { return PseudoProjection::from_operator(ComplexOperator(std::move(m))); };
  return {
      pp(0.5 * c * (c * one + X)), pp(0.5 * c * (c * one - X)),
      pp(0.5 * s * (s * one + Y)), pp(0.5 * s * (s * one - Y)),
      pp(0.5 * c * (c * one + Z)), pp(0.5 * c * (c * one - Z)),
      pp(-one / 16.0),
  };
}

ComplexOperator Expansion::reconstruct() const {
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& t : terms) m += t.weight * t.pp.op().matrix();
  for (const auto& t : constant_terms) m += t.weight * t.pp.op().matrix();
  return ComplexOperator(std::move(m));
}

double Expansion::min_weight() const {
  double mw = 0.0;
  bool first = true;
  for (const auto* list : {&terms, &constant_terms}) {
    for (const auto& t : *list) {
      if (first || t.weight < mw) mw = t.weight;
      first = false;
    }
  }
  return mw;
}

Expansion expand_operator(const ComplexOperator& O, double theta) {
  if (theta <= 0.0 || theta >= kPi) {
    throw std::invalid_argument("expand_operator: theta in (0, pi) required (degenerate doublets)");
  }
  const PauliDecomposition dec = decompose(O);
  const int d = dec.dim;
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const double sec = 1.0 / c;
  const double cosec = 1.0 / s;

  Expansion out;
  out.theta = theta;
  out.dim = d;

  auto emit = [&](std::vector<ExpansionTerm>& list, double weight, int i, int j,
                  const std::string& kind, const PseudoProjection& pp) {
    if (weight != 0.0) list.push_back({weight, i, j, kind, pp});
  };

  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const SubspacePseudoProjections pps = subspace_pseudoprojections(i, j, theta, d);
      const double xv = dec.x(i, j);
      const double yv = dec.y(i, j);
      emit(out.terms, 2.0 * sec * std::max(xv, 0.0), i, j, "X+", pps.x_plus);
      emit(out.terms, 2.0 * sec * std::max(-xv, 0.0), i, j, "X-", pps.x_minus);
      emit(out.terms, 2.0 * cosec * std::max(yv, 0.0), i, j, "Y+", pps.y_plus);
      emit(out.terms, 2.0 * cosec * std::max(-yv, 0.0), i, j, "Y-", pps.y_minus);

      // constant block: the identity part plus the block residues left over
      // by the +- splittings above
      if (dec.w > 0.0) {
        const double wshare = dec.w * sec * sec / double(d - 1);
        emit(out.constant_terms, wshare, i, j, "X+", pps.x_plus);
        emit(out.constant_terms, wshare, i, j, "X-", pps.x_minus);
      } else if (dec.w < 0.0) {
        emit(out.constant_terms, 16.0 * std::abs(dec.w) / double(d - 1), i, j, "R", pps.triple);
      }
      emit(out.constant_terms, 16.0 * (std::abs(xv) * c + std::abs(yv) * s), i, j, "R",
           pps.triple);
    }
  }

  // diagonal part: Z_l spread over its pair generators Z_{i, l+1}
  for (int l = 1; l < d; ++l) {
    const double zp = dec.z_redistributed(l);
    if (zp == 0.0) continue;
    for (int i = 0; i < l; ++i) {
      const int j = l;  // zero-based block (i, l) hosts Z_{i, l+1}
      const SubspacePseudoProjections pps = subspace_pseudoprojections(i, j, theta, d);
      emit(out.terms, 2.0 * sec * std::max(zp, 0.0), i, j, "Z+", pps.z_plus);
      emit(out.terms, 2.0 * sec * std::max(-zp, 0.0), i, j, "Z-", pps.z_minus);
      emit(out.constant_terms, 16.0 * std::abs(zp) * c, i, j, "R", pps.triple);
    }
  }
  return out;
}

}  // namespace pseudoproj
