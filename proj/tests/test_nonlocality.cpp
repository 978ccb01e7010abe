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

#include "pseudoproj/nonlocality.hpp"
#include "pseudoproj/scan.hpp"
#include "support/test_helpers.hpp"

using namespace pseudoproj;
namespace ppt = pseudoproj::testing;

TEST_CASE("mermin recursion matches the explicit three-party form") {
  std::mt19937_64 rng(20);
  const auto obs = ppt::random_pairs(3, rng);
  auto pauli = [&](int q, int v) {
    return pauli_from_direction(v == 0 ? obs[std::size_t(q)].a : obs[std::size_t(q)].a_prime);
  };
  // (A1A2 + A1'A2')A3' + (A1A2' - A1'A2)A3
  const Matrix expected =
      tensor_product({pauli(0, 0), pauli(1, 0), pauli(2, 1)}).matrix() +
      tensor_product({pauli(0, 1), pauli(1, 1), pauli(2, 1)}).matrix() +
      tensor_product({pauli(0, 0), pauli(1, 1), pauli(2, 0)}).matrix() -
      tensor_product({pauli(0, 1), pauli(1, 0), pauli(2, 0)}).matrix();
  const NonlocalityPolynomial m3 = mermin(3, obs);
  CHECK(m3.op.max_abs_diff(ComplexOperator(expected)) < 1e-12);
  CHECK(m3.classical_bound == 2.0);
}

TEST_CASE("svetlichny recursion matches the explicit three-party form") {
  std::mt19937_64 rng(21);
  const auto obs = ppt::random_pairs(3, rng);
  auto pauli = [&](int q, int v) {
    return pauli_from_direction(v == 0 ? obs[std::size_t(q)].a : obs[std::size_t(q)].a_prime);
  };
  // {(-A1+A1')A2 + (A1+A1')A2'}A3' + {(A1+A1')A2 + (A1-A1')A2'}A3
  Matrix expected = Matrix::Zero(8, 8);
  expected -= tensor_product({pauli(0, 0), pauli(1, 0), pauli(2, 1)}).matrix();
  expected += tensor_product({pauli(0, 1), pauli(1, 0), pauli(2, 1)}).matrix();
  expected += tensor_product({pauli(0, 0), pauli(1, 1), pauli(2, 1)}).matrix();
  expected += tensor_product({pauli(0, 1), pauli(1, 1), pauli(2, 1)}).matrix();
  expected += tensor_product({pauli(0, 0), pauli(1, 0), pauli(2, 0)}).matrix();
  expected += tensor_product({pauli(0, 1), pauli(1, 0), pauli(2, 0)}).matrix();
  expected += tensor_product({pauli(0, 0), pauli(1, 1), pauli(2, 0)}).matrix();
  expected -= tensor_product({pauli(0, 1), pauli(1, 1), pauli(2, 0)}).matrix();
  const NonlocalityPolynomial s3 = svetlichny(3, obs);
  CHECK(s3.op.max_abs_diff(ComplexOperator(expected)) < 1e-12);
  CHECK(s3.classical_bound == 4.0);
}

TEST_CASE("mermin on the two-qubit Bell state") {
  StateVector bell = StateVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const std::vector<ObservablePair> obs = {{DirectionSpec::x(), DirectionSpec::y()},
                                           {DirectionSpec::x(), DirectionSpec::y()}};
  const NonlocalityPolynomial m2 = mermin(2, obs);
  // <xx> + <yy> = 1 - 1
  CHECK(expectation(m2.op, DensityOperator::from_pure(bell)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(mermin(1, std::span<const ObservablePair>{}), std::invalid_argument);
}

TEST_CASE("mermin vanishes on |000> with equatorial settings") {
  StateVector zero = StateVector::Zero(8);
  zero(0) = 1.0;
  const std::vector<ObservablePair> obs = {{DirectionSpec::x(), DirectionSpec::y()},
                                           {DirectionSpec::x(), DirectionSpec::y()},
                                           {DirectionSpec::y(), DirectionSpec::x()}};
  CHECK(expectation(mermin(3, obs).op, DensityOperator::from_pure(zero)) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("optimized three-party extremes on GHZ") {
  ScanOptions opts;
  opts.restarts = 24;
  opts.seed = 0;
  const PolyOptimum mermin_best = optimize_polynomial(PolynomialKind::Mermin, 3, ghz(3), opts);
  CHECK(std::abs(mermin_best.value) == doctest::Approx(4.0).epsilon(1e-7));

  // the frozen configuration reaches the same extreme exactly
  const auto frozen = ppt::ghz_mermin_optimal_pairs();
  CHECK(expectation(mermin_polynomial(3).to_operator(frozen), ghz(3)) ==
        doctest::Approx(-4.0).epsilon(1e-12));

  const PolyOptimum svet_best = optimize_polynomial(PolynomialKind::Svetlichny, 3, ghz(3), opts);
  CHECK(std::abs(svet_best.value) == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-7));
}

TEST_CASE("svetlichny vanishes on the maximally mixed state") {
  std::mt19937_64 rng(22);
  const auto obs = ppt::random_pairs(3, rng);
  const DensityOperator mixed(ComplexOperator(Matrix(Matrix::Identity(8, 8) / 8.0)));
  CHECK(expectation(svetlichny(3, obs).op, mixed) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(svetlichny(2, std::span<const ObservablePair>{}), std::invalid_argument);
}

TEST_CASE("dda forms by parity") {
  std::mt19937_64 rng(23);
  const DensityOperator mixed(ComplexOperator(Matrix(Matrix::Identity(8, 8) / 8.0)));
  CHECK(expectation(dda(3, ppt::random_pairs(3, rng)).op, mixed) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // every monomial of the even form touches all parties
  CHECK(dda_polynomial(4).full_support());
  CHECK_FALSE(dda_polynomial(3).full_support());
  CHECK_FALSE(dda_polynomial(5).full_support());
  CHECK_THROWS_AS(dda_polynomial(2), std::invalid_argument);
}

TEST_CASE("enumerated strategy bounds match the closed forms") {
  for (int n : {3, 4, 5}) {
    const auto svet = lhv_max(LhvExpression::from_polynomial(svetlichny_polynomial(n)));
    CHECK(svet.max_value == std::ldexp(1.0, n - 1));
    CHECK(svet.max_abs == classical_bound(PolynomialKind::Svetlichny, n));

    const auto merm = lhv_max(LhvExpression::from_polynomial(mermin_polynomial(n)));
    CHECK(merm.max_value == classical_bound(PolynomialKind::Mermin, n));

    const auto d = lhv_max(LhvExpression::from_polynomial(dda_polynomial(n)));
    CHECK(d.max_value == 2.0);
  }
}

TEST_CASE("lhv_max agrees with direct polynomial evaluation over strategies") {
  // oracle: exhaustive evaluation through CorrelatorPolynomial::evaluate
  const CorrelatorPolynomial s3 = svetlichny_polynomial(3);
  double best = -1e300;
  for (int bits = 0; bits < 64; ++bits) {
    std::vector<std::array<int, 3>> assignment(3);
    for (int q = 0; q < 3; ++q) {
      assignment[std::size_t(q)] = {(bits >> (2 * q)) & 1 ? -1 : +1,
                                    (bits >> (2 * q + 1)) & 1 ? -1 : +1, +1};
    }
    best = std::max(best, s3.evaluate(assignment));
  }
  CHECK(best == 4.0);
  CHECK(lhv_max(LhvExpression::from_polynomial(s3)).max_value == best);
}

TEST_CASE("lhv expression grammar with weights and event products") {
  const LhvExpression sum = parse_lhv_expression("2*E(A1=A2) - 0.5*A1*A2'");
  CHECK(lhv_max(sum).max_value == doctest::Approx(2.5));

  // products of indicators evaluate jointly
  const LhvExpression product = parse_lhv_expression("E(A1; A2)*E(~A1; A2)");
  CHECK(lhv_max(product).max_value == doctest::Approx(0.0));

  const LhvExpression constants = parse_lhv_expression("1 + E(A1) - 2*E(~A1)");
  CHECK(lhv_max(constants).max_value == doctest::Approx(2.0));
}

TEST_CASE("lhv enumeration symbol cap") {
  LhvExpression expr;
  LhvTerm term;
  for (int k = 0; k < 25; ++k) term.symbols.push_back({k, 0});
  expr.terms.push_back(term);
  CHECK_THROWS_AS(lhv_max(expr), std::invalid_argument);
}

TEST_CASE("violation reports") {
  ScanOptions opts;
  opts.restarts = 24;
  opts.seed = 1;
  const PolyOptimum svet = optimize_polynomial(PolynomialKind::Svetlichny, 3, ghz(3), opts);
  const NonlocalityPolynomial s3 = svetlichny(3, svet.obs);

  const double p_above = 1.0 / std::sqrt(2.0) + 1e-3;
  const ViolationReport above = violation_report(s3, add_white_noise(ghz(3), p_above));
  CHECK(above.violated);

  const PolyOptimum merm = optimize_polynomial(PolynomialKind::Mermin, 3, ghz(3), opts);
  const NonlocalityPolynomial m3 = mermin(3, merm.obs);
  const ViolationReport below = violation_report(m3, add_white_noise(ghz(3), 0.49));
  CHECK_FALSE(below.violated);

  const DensityOperator mixed(ComplexOperator(Matrix(Matrix::Identity(8, 8) / 8.0)));
  const ViolationReport none = violation_report(m3, mixed);
  CHECK_FALSE(none.violated);
  CHECK(none.margin == doctest::Approx(-m3.classical_bound).epsilon(1e-12));

  // the one-sided form follows the sign of the value
  const ViolationReport signed_report = violation_report(m3, ghz(3));
  const bool one_sided_consistent =
      signed_report.violated == signed_report.violated_one_sided ||
      signed_report.value > 0.0;
  CHECK(one_sided_consistent);
  const PolyOptimum neg = optimize_polynomial(PolynomialKind::Mermin, 3, ghz(3), opts);
  const ViolationReport at_opt = violation_report(mermin(3, neg.obs), ghz(3));
  CHECK(at_opt.violated);
  CHECK(at_opt.violated_one_sided == (at_opt.value < -at_opt.bound));
}

TEST_CASE("prime swap maps the polynomial to its primed partner") {
  std::mt19937_64 rng(24);
  const auto obs = ppt::random_pairs(4, rng);
  const CorrelatorPolynomial s4 = svetlichny_polynomial(4);
  const CorrelatorPolynomial s4p = svetlichny_primed_polynomial(4);
  CHECK(s4.swap_primes().to_operator(obs).max_abs_diff(s4p.to_operator(obs)) == 0.0);

  // the primed Mermin polynomial follows from the last-party substitution
  const CorrelatorPolynomial m3 = mermin_polynomial(3);
  const CorrelatorPolynomial m3p = mermin_primed_polynomial(3);
  // M_3' = M_2' A_3' - M_2 A_3
  const CorrelatorPolynomial expected =
      mermin_primed_polynomial(2).extended(3).times_symbol(2, 1) -
      mermin_polynomial(2).extended(3).times_symbol(2, 0);
  const auto obs3 = ppt::random_pairs(3, rng);
  CHECK(m3p.to_operator(obs3).max_abs_diff(expected.to_operator(obs3)) < 1e-12);
}

TEST_CASE("quantum values stay inside the algebraic envelope") {
  std::mt19937_64 rng(25);
  const CorrelatorPolynomial s3 = svetlichny_polynomial(3);
  const CorrelatorPolynomial m3 = mermin_polynomial(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto obs = ppt::random_pairs(3, rng);
    const DensityOperator rho = ppt::random_pure(8, rng);
    CHECK(std::abs(expectation(s3.to_operator(obs), rho)) <= 4.0 * std::sqrt(2.0) + 1e-9);
    CHECK(std::abs(expectation(m3.to_operator(obs), rho)) <= 4.0 + 1e-9);
  }
}
