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

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pseudoproj/pseudo.hpp"
#include "pseudoproj/qcore.hpp"

namespace pseudoproj {

/**
 * Symbolic event over dichotomic qubit observables.
 *
 * Variants:
 *  - Atomic: a single observable takes a definite outcome.
 *  - EqualityChain: a list of observables agrees up to an overall sign,
 *    with barred members taking the opposite sign of the chain. Stands
 *    for the exclusive disjunction of the two total sign assignments.
 *  - Conjunction: joint occurrence; members may address distinct
 *    subsystems or contribute several observables to the same one.
 *  - Disjunction: mutually exclusive alternatives; the compiler adds
 *    their operators. Exclusivity is the caller's responsibility and is
 *    only checked numerically on request.
 *
 * Events are immutable trees; compilation is memoized per dimension.
 */
class Event {
 public:
  enum class Kind { Atomic, EqualityChain, Conjunction, Disjunction };

  struct ChainTerm {
    int subsystem;  // zero-based
    DirectionSpec axis;
  };

  static Event atomic(int subsystem, const DirectionSpec& axis, int outcome);
  static Event equality_chain(std::vector<ChainTerm> terms, std::uint32_t barred);
  static Event conjunction(std::vector<Event> members);
  static Event disjunction(std::vector<Event> members);

  Kind kind() const { return kind_; }
  int subsystem() const { return subsystem_; }
  const DirectionSpec& axis() const { return axis_; }
  int outcome() const { return outcome_; }
  const std::vector<ChainTerm>& chain() const { return chain_; }
  std::uint32_t barred() const { return barred_; }
  const std::vector<Event>& members() const { return members_; }

  /// Largest subsystem index appearing in the tree.
  int max_subsystem() const;

  /// Canonical text form; also the memoization key.
  std::string to_string() const;

 private:
  Event() : axis_(0.0, 0.0, 1.0) {}

  Kind kind_ = Kind::Atomic;
  int subsystem_ = 0;
  DirectionSpec axis_;
  int outcome_ = +1;
  std::vector<ChainTerm> chain_;
  std::uint32_t barred_ = 0;
  std::vector<Event> members_;
};

/// The equality event over >= 2 observables; barred bit k flips the sign of
/// the k-th observable relative to the chain.
Event equality_event(const std::vector<std::pair<int, DirectionSpec>>& obs,
                     std::uint32_t barred = 0);

struct CompiledEvent {
  PseudoProjection pp;
  Event event;
};

struct CompileOptions {
  /// Numerically flag disjunctions of non-exclusive members (commuting
  /// inputs whose operator sum has an eigenvalue above 1).
  bool check_exclusivity = false;
  bool use_cache = true;
};

/// Compiles an event tree into its pseudoprojection on `n_subsystems` qubits.
CompiledEvent compile_event(const Event& e, int n_subsystems,
                            const CompileOptions& options = {});

/// Expectation of the compiled operator in `rho`.
double event_pseudoprobability(const Event& e, const DensityOperator& rho,
                               const CompileOptions& options = {});

/// Symbol table for the text grammar: "A1" -> direction; the subsystem index
/// is the (one-based) number embedded in the symbol.
using DirectionTable = std::map<std::string, DirectionSpec>;

/// Parses the compact event grammar, e.g. `E(~A1=A1'=A2; A3) | E(A1=A2)`.
/// Bar = `~`, prime = `'`, conjunction = `;`, disjunction = `|`.
Event parse_event(const std::string& text, const DirectionTable& dirs);

}  // namespace pseudoproj
