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
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pseudoproj/qcore.hpp"

namespace pseudoproj {

/// Enumeration refuses expressions over more than 24 binary symbols.
inline constexpr int kMaxLhvSymbols = 24;

/// Unprimed and primed measurement axes of one party.
struct ObservablePair {
  DirectionSpec a;
  DirectionSpec a_prime;
};

/**
 * Multilinear polynomial in dichotomic observables, at most one observable
 * per party and monomial. A slot holds -1 when the party is absent from a
 * monomial, otherwise the variant index (0 unprimed, 1 primed, 2
 * double-primed).
 */
class CorrelatorPolynomial {
 public:
  using Monomial = std::vector<std::int8_t>;

  explicit CorrelatorPolynomial(int n_parties);

  static CorrelatorPolynomial symbol(int n_parties, int party, int variant);

  int n_parties() const { return n_parties_; }
  const std::map<Monomial, double>& terms() const { return terms_; }

  CorrelatorPolynomial& operator+=(const CorrelatorPolynomial& other);
  CorrelatorPolynomial& operator-=(const CorrelatorPolynomial& other);
  friend CorrelatorPolynomial operator+(CorrelatorPolynomial a, const CorrelatorPolynomial& b);
  friend CorrelatorPolynomial operator-(CorrelatorPolynomial a, const CorrelatorPolynomial& b);
  friend CorrelatorPolynomial operator*(double s, CorrelatorPolynomial p);

  /// Polynomial over `n` parties with the same monomials (n >= n_parties).
  CorrelatorPolynomial extended(int n) const;

  /// Multiplies every monomial by the given party's observable; the party
  /// must be absent from every monomial.
  CorrelatorPolynomial times_symbol(int party, int variant) const;

  /// Interchanges primed and unprimed observables everywhere.
  CorrelatorPolynomial swap_primes() const;

  /// True when every monomial involves all parties.
  bool full_support() const;

  /// Substitutes Pauli operators for the symbols: variant 0 -> a, 1 -> a'.
  ComplexOperator to_operator(std::span<const ObservablePair> obs) const;

  /// Same, with per-party triads (a, a', a'').
  ComplexOperator to_operator(std::span<const std::array<DirectionSpec, 3>> triads) const;

  /// Value under a deterministic +-1 assignment, variant-indexed per party.
  double evaluate(const std::vector<std::array<int, 3>>& assignment) const;

 private:
  int n_parties_;
  std::map<Monomial, double> terms_;
};

CorrelatorPolynomial mermin_polynomial(int n_parties);
CorrelatorPolynomial mermin_primed_polynomial(int n_parties);
CorrelatorPolynomial svetlichny_polynomial(int n_parties);
CorrelatorPolynomial svetlichny_primed_polynomial(int n_parties);
CorrelatorPolynomial dda_polynomial(int n_parties);

enum class PolynomialKind { Svetlichny, SvetlichnyPrimed, Mermin, MerminPrimed, DDA };

std::string to_string(PolynomialKind kind);

/// Deterministic local-strategy bound: 2^(N-1) for Svetlichny, 2^(N/2) or
/// 2^((N-1)/2) for Mermin (N even / odd), 2 for DDA.
double classical_bound(PolynomialKind kind, int n_parties);

struct NonlocalityPolynomial {
  PolynomialKind kind;
  int n_parties;
  CorrelatorPolynomial poly;
  ComplexOperator op;
  double classical_bound;
};

NonlocalityPolynomial mermin(int n_parties, std::span<const ObservablePair> obs);
NonlocalityPolynomial svetlichny(int n_parties, std::span<const ObservablePair> obs);
NonlocalityPolynomial dda(int n_parties, std::span<const ObservablePair> obs);

struct ViolationReport {
  double value;
  double bound;
  bool violated;           // |value| > bound (the symmetric form)
  bool violated_one_sided;  // value < -bound
  double margin;           // |value| - bound
};

ViolationReport violation_report(const NonlocalityPolynomial& poly, const DensityOperator& rho);

// --- local hidden variable enumeration --------------------------------------

/// One dichotomic observable symbol: subsystem index plus prime count.
struct LhvSymbol {
  int subsystem;
  int variant;
  auto operator<=>(const LhvSymbol&) const = default;
};

/**
 * Direction-free event tree, evaluated as a {0,1} indicator (disjunctions
 * evaluate additively) under a deterministic +-1 assignment.
 */
class LhvEvent {
 public:
  enum class Kind { Atomic, Chain, Conjunction, Disjunction };

  static LhvEvent atomic(LhvSymbol sym, int outcome);
  static LhvEvent chain(std::vector<LhvSymbol> syms, std::uint32_t barred);
  static LhvEvent conjunction(std::vector<LhvEvent> members);
  static LhvEvent disjunction(std::vector<LhvEvent> members);

  void collect_symbols(std::vector<LhvSymbol>& out) const;
  double indicator(const std::map<LhvSymbol, int>& assignment) const;

 private:
  LhvEvent() = default;
  Kind kind_ = Kind::Atomic;
  std::vector<LhvSymbol> syms_;
  int outcome_ = +1;
  std::uint32_t barred_ = 0;
  std::vector<LhvEvent> members_;
};

/// coeff * (product of +-1 symbols) * (product of {0,1} event indicators).
struct LhvTerm {
  double coeff = 1.0;
  std::vector<LhvSymbol> symbols;
  std::vector<LhvEvent> events;
};

/// Weighted sum of products of observables and event probabilities. Linear
/// expressions have at most one factor per term; products make the
/// expression polynomial, and each probability evaluates as a {0,1}
/// indicator under a deterministic strategy.
struct LhvExpression {
  std::vector<LhvTerm> terms;

  static LhvExpression from_polynomial(const CorrelatorPolynomial& p);
};

struct LhvMaxResult {
  double max_value;
  double max_abs;
  std::uint64_t best_strategy;  // lowest strategy index attaining max_value
  int n_symbols;
};

/// Exact maximum over all deterministic +-1 assignments of the symbols
/// appearing in the expression. Refuses more than kMaxLhvSymbols symbols.
LhvMaxResult lhv_max(const LhvExpression& expr, int threads = 0);

/// Parses the event text grammar plus weighted sums, e.g.
/// `2*E(A1=A2) - 0.5*A1*A2' + E(~A1; A2)*E(A1; A2)`.
LhvExpression parse_lhv_expression(const std::string& text);

}  // namespace pseudoproj
