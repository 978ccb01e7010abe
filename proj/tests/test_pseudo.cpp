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

#include <doctest.h>

#include <cmath>

#include "pseudoproj/pseudo.hpp"
#include "support/test_helpers.hpp"

using namespace pseudoproj;
namespace ppt = pseudoproj::testing;

namespace {

const double kSqrt2 = std::sqrt(2.0);

Matrix quarter_i_x_z() {
  return 0.25 * (Matrix::Identity(2, 2) + sigma_x().matrix() + sigma_z().matrix());
}

}  // namespace

TEST_CASE("qubit projections") {
  Matrix pz(2, 2);
  pz << 1, 0, 0, 0;
  CHECK(projection(DirectionSpec::z(), +1).op().max_abs_diff(ComplexOperator(pz)) < 1e-15);

  Matrix px_minus(2, 2);
  px_minus << 0.5, -0.5, -0.5, 0.5;
  CHECK(projection(DirectionSpec::x(), -1).op().max_abs_diff(ComplexOperator(px_minus)) < 1e-15);

  const ComplexOperator sum =
      projection(DirectionSpec::z(), +1).op() + projection(DirectionSpec::z(), -1).op();
  CHECK(sum.max_abs_diff(ComplexOperator::identity(2)) < 1e-15);

  CHECK_THROWS_AS(projection(DirectionSpec::z(), 0), std::invalid_argument);
}

TEST_CASE("unit pseudoprojection of x+ and z+") {
  const std::vector<Projection> ps = {projection(DirectionSpec::x(), +1),
                                      projection(DirectionSpec::z(), +1)};
  const PseudoProjection pp = unit_pseudoprojection(ps);
  CHECK(pp.op().max_abs_diff(ComplexOperator(quarter_i_x_z())) < 1e-12);

  // oracle: direct 2x2 eigensolve
  Eigen::SelfAdjointEigenSolver<Matrix> solver(pp.op().matrix());
  const double lo_oracle = solver.eigenvalues()(0);
  CHECK(lo_oracle == doctest::Approx((1.0 - kSqrt2) / 4.0).epsilon(1e-12));
  CHECK(pp.eigenvalue_range().first == doctest::Approx(lo_oracle).epsilon(1e-12));
}

TEST_CASE("unit pseudoprojection commuting and orthogonal cases") {
  const Projection pz = projection(DirectionSpec::z(), +1);
  const Projection pz_m = projection(DirectionSpec::z(), -1);
  CHECK(unit_pseudoprojection(std::vector<Projection>{pz, pz}).op().max_abs_diff(pz.op()) <
        1e-12);
  CHECK(unit_pseudoprojection(std::vector<Projection>{pz, pz_m}).op().max_abs() < 1e-12);
}

TEST_CASE("symmetrized equals unit for two projections") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<Projection> ps = {projection(ppt::random_direction(rng), +1),
                                        projection(ppt::random_direction(rng), -1)};
    CHECK(symmetrized_pseudoprojection(ps).op().max_abs_diff(unit_pseudoprojection(ps).op()) <
          1e-12);
  }
}

TEST_CASE("three coplanar directions at mutual angle 2pi/3 average to -I/16") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    // random plane through the origin
    const auto triad = ppt::random_triad(rng);
    const Vector3 u = triad[0].vec();
    const Vector3 v = triad[1].vec();
    std::uniform_real_distribution<double> ang(0.0, 2.0 * 3.14159265358979323846);
    const double offset = ang(rng);
    std::vector<Projection> ps;
    for (int k = 0; k < 3; ++k) {
      const double a = offset + 2.0 * 3.14159265358979323846 * k / 3.0;
      ps.push_back(projection(DirectionSpec(Vector3(std::cos(a) * u + std::sin(a) * v)), +1));
    }
    const PseudoProjection pp = symmetrized_pseudoprojection(ps);
    CHECK(pp.op().max_abs_diff(ComplexOperator(Matrix(-Matrix::Identity(2, 2) / 16.0))) < 1e-12);
  }
}

TEST_CASE("symmetrized product of identical commuting projections") {
  const Projection pz = projection(DirectionSpec::z(), +1);
  const std::vector<Projection> ps = {pz, pz, pz};
  CHECK(symmetrized_pseudoprojection(ps).op().max_abs_diff(pz.op()) < 1e-12);
}

TEST_CASE("ordering enumeration cap") {
  const std::vector<Projection> ps(9, projection(DirectionSpec::z(), +1));
  CHECK_THROWS_AS(symmetrized_pseudoprojection(ps), std::invalid_argument);
}

TEST_CASE("joint pseudoprojection") {
  const PseudoProjection pz = unit_pseudoprojection(
      std::vector<Projection>{projection(DirectionSpec::z(), +1)});
  const PseudoProjection joint = joint_pseudoprojection(std::vector<PseudoProjection>{pz, pz});
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  CHECK(joint.op().max_abs_diff(ComplexOperator(expected)) < 1e-14);

  // trace multiplicativity oracle: Tr(A (x) B) = Tr A * Tr B
  const PseudoProjection mixed = PseudoProjection::from_operator(ComplexOperator(quarter_i_x_z()));
  const PseudoProjection id = PseudoProjection::from_operator(ComplexOperator::identity(2));
  const double tr = joint_pseudoprojection(std::vector<PseudoProjection>{mixed, id})
                        .op()
                        .matrix()
                        .trace()
                        .real();
  CHECK(tr == doctest::Approx(0.5 * 2.0).epsilon(1e-12));

  const PseudoProjection id8 =
      joint_pseudoprojection(std::vector<PseudoProjection>{id, id, id});
  CHECK(id8.op().max_abs_diff(ComplexOperator::identity(8)) < 1e-14);

  CHECK_THROWS_AS(joint_pseudoprojection(std::span<const PseudoProjection>{}),
                  std::invalid_argument);
}

TEST_CASE("pseudoprobabilities can leave [0, 1]") {
  const PseudoProjection pp = PseudoProjection::from_operator(ComplexOperator(quarter_i_x_z()));
  const DensityOperator mixed(ComplexOperator(Matrix(Matrix::Identity(2, 2) / 2.0)));
  // oracle: direct trace of the explicit 2x2 product
  CHECK(pseudoprobability(pp, mixed) == doctest::Approx(0.25).epsilon(1e-12));

  StateVector zero2 = StateVector::Zero(2);
  zero2(0) = 1.0;
  const PseudoProjection pz = PseudoProjection::from_operator(
      projection(DirectionSpec::z(), +1).op());
  CHECK(pseudoprobability(pz, DensityOperator::from_pure(zero2)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // minus eigenstate of (x + z)/sqrt(2): pseudoprobability (1 - sqrt 2)/4 < 0
  const double inv = 1.0 / kSqrt2;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      pauli_from_direction(DirectionSpec(inv, 0.0, inv)).matrix());
  const StateVector minus = solver.eigenvectors().col(0);
  const double value = pseudoprobability(pp, DensityOperator::from_pure(minus));
  CHECK(value == doctest::Approx((1.0 - kSqrt2) / 4.0).epsilon(1e-10));
}

TEST_CASE("build_pps single qubit examples") {
  StateVector zero2 = StateVector::Zero(2);
  zero2(0) = 1.0;
  const DensityOperator rho = DensityOperator::from_pure(zero2);

  const PseudoProbabilityScheme single = build_pps({{DirectionSpec::z()}}, rho);
  CHECK(single.value("+") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(single.value("-") == doctest::Approx(0.0).epsilon(1e-12));

  const PseudoProbabilityScheme xz = build_pps({{DirectionSpec::x(), DirectionSpec::z()}}, rho);
  CHECK(xz.sum() == doctest::Approx(1.0).epsilon(1e-9));
  // oracle: direct trace of the symmetrized product for (x=+, z=-), equal to
  // (1/4)(I + sigma_x - sigma_z); vanishing on |0><0|
  const Matrix half_anticomm =
      0.5 * (projection(DirectionSpec::x(), +1).op().matrix() *
                 projection(DirectionSpec::z(), -1).op().matrix() +
             projection(DirectionSpec::z(), -1).op().matrix() *
                 projection(DirectionSpec::x(), +1).op().matrix());
  const double oracle = (half_anticomm * rho.op().matrix()).trace().real();
  CHECK(oracle == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(xz.value("+-") == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(xz.value("++") == doctest::Approx(0.5).epsilon(1e-12));

  // on the maximally mixed state every joint entry is 1/4
  const DensityOperator mixed(ComplexOperator(Matrix(Matrix::Identity(2, 2) / 2.0)));
  const PseudoProbabilityScheme flat =
      build_pps({{DirectionSpec::x(), DirectionSpec::z()}}, mixed);
  for (std::size_t i = 0; i < flat.size(); ++i) {
    CHECK(flat.value(i) == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("pps completeness on random inputs") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const std::vector<std::vector<DirectionSpec>> obs = {
        {ppt::random_direction(rng), ppt::random_direction(rng)},
        {ppt::random_direction(rng)}};
    const PseudoProbabilityScheme pps = build_pps(obs, ppt::random_density(4, rng));
    CHECK(pps.sum() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("pps marginalization reproduces the smaller scheme") {
  std::mt19937_64 rng(10);
  const std::vector<DirectionSpec> first = {ppt::random_direction(rng),
                                            ppt::random_direction(rng)};
  const std::vector<DirectionSpec> second = {ppt::random_direction(rng)};
  const DensityOperator rho = ppt::random_density(4, rng);

  const PseudoProbabilityScheme full = build_pps({first, second}, rho);
  const PseudoProbabilityScheme marginal = build_pps({{first[0]}, second}, rho);
  // sum over the second observable of subsystem one (position 1 in "abc")
  for (const std::string& a : {"+", "-"}) {
    for (const std::string& c : {"+", "-"}) {
      const double summed = full.value(a + "+" + c) + full.value(a + "-" + c);
      CHECK(summed == doctest::Approx(marginal.value(a + c)).epsilon(1e-10));
    }
  }
}

TEST_CASE("commuting observables give a true probability scheme") {
  std::mt19937_64 rng(11);
  const DirectionSpec n = ppt::random_direction(rng);
  const PseudoProbabilityScheme pps = build_pps({{n, n, n}, {n}}, ppt::random_density(4, rng));
  for (std::size_t i = 0; i < pps.size(); ++i) {
    CHECK(pps.value(i) >= -1e-10);
    CHECK(pps.value(i) <= 1.0 + 1e-10);
  }
  CHECK(detect_negativity(pps).empty());
}

TEST_CASE("detect_negativity finds the rotated eigenstate entry") {
  const double inv = 1.0 / kSqrt2;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      pauli_from_direction(DirectionSpec(inv, 0.0, inv)).matrix());
  const DensityOperator rho = DensityOperator::from_pure(solver.eigenvectors().col(0));
  const PseudoProbabilityScheme pps =
      build_pps({{DirectionSpec::x(), DirectionSpec::z()}}, rho);

  const auto negative = detect_negativity(pps);
  REQUIRE(negative.size() == 1);
  CHECK(negative[0].first == "++");
  CHECK(negative[0].second == doctest::Approx((1.0 - kSqrt2) / 4.0).epsilon(1e-10));

  // a large tolerance hides everything
  CHECK(detect_negativity(pps, 1.0).empty());
}

TEST_CASE("entry count cap refuses oversized schemes") {
  std::vector<std::vector<DirectionSpec>> obs(5);
  for (auto& per_sub : obs) per_sub.assign(5, DirectionSpec::z());
  StateVector psi = StateVector::Zero(32);
  psi(0) = 1.0;
  CHECK_THROWS_AS(build_pps(obs, DensityOperator::from_pure(psi)), std::invalid_argument);
}

TEST_CASE("unit pseudoprojection is self-adjoint for random lists") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Projection> ps;
    const int n = 2 + int(rng() % 3);
    for (int k = 0; k < n; ++k) {
      ps.push_back(projection(ppt::random_direction(rng), rng() % 2 ? +1 : -1));
    }
    const ComplexOperator op = unit_pseudoprojection(ps).op();
    CHECK(op.max_abs_diff(op.adjoint()) < 1e-12);
  }
}

TEST_CASE("summing pseudoprojections over all outcomes yields the identity") {
  std::mt19937_64 rng(14);
  const std::vector<DirectionSpec> dirs = {ppt::random_direction(rng),
                                           ppt::random_direction(rng),
                                           ppt::random_direction(rng)};
  Matrix sum = Matrix::Zero(2, 2);
  for (int bits = 0; bits < 8; ++bits) {
    std::vector<Projection> ps;
    for (int k = 0; k < 3; ++k) {
      ps.push_back(projection(dirs[std::size_t(k)], (bits >> k) & 1 ? -1 : +1));
    }
    sum += symmetrized_pseudoprojection(ps).op().matrix();
  }
  CHECK((sum - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
}
