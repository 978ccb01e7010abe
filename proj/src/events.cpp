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

#include "pseudoproj/events.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace pseudoproj {

Event Event::atomic(int subsystem, const DirectionSpec& axis, int outcome) {
  if (subsystem < 0) throw std::invalid_argument("Event: negative subsystem index");
  if (outcome != 1 && outcome != -1) {
    throw std::invalid_argument("Event: outcome must be +1 or -1");
  }
  Event e;
  e.kind_ = Kind::Atomic;
  e.subsystem_ = subsystem;
  e.axis_ = axis;
  e.outcome_ = outcome;
  return e;
}

Event Event::equality_chain(std::vector<ChainTerm> terms, std::uint32_t barred) {
  if (terms.size() < 2) {
    throw std::invalid_argument("Event: equality chain needs at least two observables");
  }
  for (const auto& t : terms) {
    if (t.subsystem < 0) throw std::invalid_argument("Event: negative subsystem index");
  }
  Event e;
  e.kind_ = Kind::EqualityChain;
  e.chain_ = std::move(terms);
  e.barred_ = barred;
  return e;
}

Event Event::conjunction(std::vector<Event> members) {
  if (members.empty()) throw std::invalid_argument("Event: empty conjunction");
  Event e;
  e.kind_ = Kind::Conjunction;
  e.members_ = std::move(members);
  return e;
}

Event Event::disjunction(std::vector<Event> members) {
  if (members.empty()) throw std::invalid_argument("Event: empty disjunction");
  Event e;
  e.kind_ = Kind::Disjunction;
  e.members_ = std::move(members);
  return e;
}

int Event::max_subsystem() const {
  switch (kind_) {
    case Kind::Atomic:
      return subsystem_;
    case Kind::EqualityChain: {
      int m = 0;
      for (const auto& t : chain_) m = std::max(m, t.subsystem);
      return m;
    }
    default: {
      int m = 0;
      for (const auto& e : members_) m = std::max(m, e.max_subsystem());
      return m;
    }
  }
}

namespace {

std::string fmt_axis(const DirectionSpec& axis) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "[%.17g,%.17g,%.17g]", axis.vec().x(), axis.vec().y(),
                axis.vec().z());
  return buf;
}

}  // namespace

std::string Event::to_string() const {
  switch (kind_) {
    case Kind::Atomic: {
      std::string s = outcome_ == -1 ? "~" : "";
      return s + "s" + std::to_string(subsystem_) + fmt_axis(axis_);
    }
    case Kind::EqualityChain: {
      std::string s;
      for (std::size_t k = 0; k < chain_.size(); ++k) {
        if (k) s += "=";
        if ((barred_ >> k) & 1u) s += "~";
        s += "s" + std::to_string(chain_[k].subsystem) + fmt_axis(chain_[k].axis);
      }
      return s;
    }
    case Kind::Conjunction: {
      std::string s = "E(";
      for (std::size_t k = 0; k < members_.size(); ++k) {
        if (k) s += "; ";
        s += members_[k].to_string();
      }
      return s + ")";
    }
    case Kind::Disjunction: {
      std::string s;
      for (std::size_t k = 0; k < members_.size(); ++k) {
        if (k) s += " | ";
        s += members_[k].to_string();
      }
      return s;
    }
  }
  return {};
}

Event equality_event(const std::vector<std::pair<int, DirectionSpec>>& obs,
                     std::uint32_t barred) {
  if (obs.empty()) throw std::invalid_argument("equality_event: empty observable list");
  std::vector<Event::ChainTerm> terms;
  terms.reserve(obs.size());
  for (const auto& [sub, axis] : obs) terms.push_back({sub, axis});
  return Event::equality_chain(std::move(terms), barred);
}

namespace {

// One fully assigned alternative: an ordered projection list per subsystem.
using AssignmentTerm = std::map<int, std::vector<Projection>>;

void merge_into(AssignmentTerm& dst, const AssignmentTerm& src) {
  for (const auto& [sub, ps] : src) {
    auto& list = dst[sub];
    list.insert(list.end(), ps.begin(), ps.end());
  }
}

std::vector<AssignmentTerm> flatten(const Event& e) {
  switch (e.kind()) {
    case Event::Kind::Atomic: {
      AssignmentTerm t;
      t[e.subsystem()].push_back(projection(e.axis(), e.outcome()));
      return {std::move(t)};
    }
    case Event::Kind::EqualityChain: {
      std::vector<AssignmentTerm> out;
      for (int sign : {+1, -1}) {
        AssignmentTerm t;
        for (std::size_t k = 0; k < e.chain().size(); ++k) {
          const int outcome = ((e.barred() >> k) & 1u) ? -sign : sign;
          t[e.chain()[k].subsystem].push_back(projection(e.chain()[k].axis, outcome));
        }
        out.push_back(std::move(t));
      }
      return out;
    }
    case Event::Kind::Conjunction: {
      std::vector<AssignmentTerm> acc = {{}};
      for (const auto& member : e.members()) {
        const auto member_terms = flatten(member);
        std::vector<AssignmentTerm> next;
        next.reserve(acc.size() * member_terms.size());
        for (const auto& a : acc) {
          for (const auto& b : member_terms) {
            AssignmentTerm merged = a;
            merge_into(merged, b);
            next.push_back(std::move(merged));
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
    case Event::Kind::Disjunction: {
      std::vector<AssignmentTerm> out;
      for (const auto& member : e.members()) {
        auto terms = flatten(member);
        out.insert(out.end(), std::make_move_iterator(terms.begin()),
                   std::make_move_iterator(terms.end()));
      }
      return out;
    }
  }
  return {};
}

Matrix compile_terms(const std::vector<AssignmentTerm>& terms, int n_subsystems) {
  const Eigen::Index dim = Eigen::Index(1) << n_subsystems;
  Matrix acc = Matrix::Zero(dim, dim);
  const ComplexOperator id2 = ComplexOperator::identity(2);
  for (const auto& term : terms) {
    std::vector<ComplexOperator> factors;
    factors.reserve(n_subsystems);
    for (int s = 0; s < n_subsystems; ++s) {
      auto it = term.find(s);
      if (it == term.end()) {
        factors.push_back(id2);
      } else if (it->second.size() == 1) {
        factors.push_back(it->second[0].op());
      } else {
        factors.push_back(symmetrized_pseudoprojection(it->second).op());
      }
    }
    acc += tensor_product(factors).matrix();
  }
  return acc;
}

void check_disjunctions(const Event& e, int n_subsystems) {
  if (e.kind() == Event::Kind::Conjunction || e.kind() == Event::Kind::Disjunction) {
    for (const auto& m : e.members()) check_disjunctions(m, n_subsystems);
  }
  if (e.kind() != Event::Kind::Disjunction) return;

  std::vector<Matrix> ops;
  ops.reserve(e.members().size());
  for (const auto& m : e.members()) ops.push_back(compile_terms(flatten(m), n_subsystems));
  bool commuting = true;
  for (std::size_t i = 0; i < ops.size() && commuting; ++i) {
    for (std::size_t j = i + 1; j < ops.size() && commuting; ++j) {
      if ((ops[i] * ops[j] - ops[j] * ops[i]).cwiseAbs().maxCoeff() > 1e-9) commuting = false;
    }
  }
  if (!commuting) return;
  Matrix sum = ops[0];
  for (std::size_t i = 1; i < ops.size(); ++i) sum += ops[i];
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sum, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().maxCoeff() > 1.0 + 1e-9) {
    throw std::invalid_argument(
        "compile_event: disjunction members overlap (operator sum exceeds one)");
  }
}

std::shared_mutex g_cache_mutex;
std::unordered_map<std::string, Matrix> g_compile_cache;

}  // namespace

CompiledEvent compile_event(const Event& e, int n_subsystems, const CompileOptions& options) {
  if (n_subsystems <= e.max_subsystem()) {
    throw std::invalid_argument("compile_event: subsystem index out of range");
  }
  if (options.check_exclusivity) check_disjunctions(e, n_subsystems);

  const std::string key = e.to_string() + "#" + std::to_string(n_subsystems);
  if (options.use_cache) {
    std::shared_lock lock(g_cache_mutex);
    auto it = g_compile_cache.find(key);
    if (it != g_compile_cache.end()) {
      return {PseudoProjection::from_operator(ComplexOperator(it->second)), e};
    }
  }
  Matrix op = compile_terms(flatten(e), n_subsystems);
  if (options.use_cache) {
    std::unique_lock lock(g_cache_mutex);
    g_compile_cache.emplace(key, op);
  }
  return {PseudoProjection::from_operator(ComplexOperator(std::move(op))), e};
}

double event_pseudoprobability(const Event& e, const DensityOperator& rho,
                               const CompileOptions& options) {
  if (rho.n_qubits() < 1) {
    throw std::invalid_argument("event_pseudoprobability: state is not a qubit register");
  }
  const CompiledEvent compiled = compile_event(e, rho.n_qubits(), options);
  return pseudoprobability(compiled.pp, rho);
}

// --- text grammar -----------------------------------------------------------

namespace {

struct Parser {
  const std::string& text;
  const DirectionTable& dirs;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) {
      throw std::invalid_argument(std::string("parse_event: expected '") + c + "' at offset " +
                                  std::to_string(pos));
    }
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  struct ObsRef {
    bool barred;
    int subsystem;
    DirectionSpec axis;
  };

  ObsRef parse_obsref() {
    skip_ws();
    const bool barred = consume('~');
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) {
      throw std::invalid_argument("parse_event: expected observable symbol at offset " +
                                  std::to_string(pos));
    }
    const std::size_t digits_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits_start) {
      throw std::invalid_argument("parse_event: observable symbol needs a subsystem index");
    }
    const int subsystem = std::stoi(text.substr(digits_start, pos - digits_start)) - 1;
    if (subsystem < 0) {
      throw std::invalid_argument("parse_event: subsystem indices are one-based");
    }
    while (pos < text.size() && text[pos] == '\'') ++pos;
    const std::string symbol = text.substr(start, pos - start);
    auto it = dirs.find(symbol);
    if (it == dirs.end()) {
      throw std::invalid_argument("parse_event: unknown observable symbol '" + symbol + "'");
    }
    return {barred, subsystem, it->second};
  }

  // chain := obsref ('=' obsref)* ; one element is an atomic event
  Event parse_chain() {
    std::vector<ObsRef> refs = {parse_obsref()};
    while (consume('=')) refs.push_back(parse_obsref());
    if (refs.size() == 1) {
      return Event::atomic(refs[0].subsystem, refs[0].axis, refs[0].barred ? -1 : +1);
    }
    std::vector<Event::ChainTerm> terms;
    std::uint32_t barred = 0;
    for (std::size_t k = 0; k < refs.size(); ++k) {
      terms.push_back({refs[k].subsystem, refs[k].axis});
      if (refs[k].barred) barred |= (1u << k);
    }
    return Event::equality_chain(std::move(terms), barred);
  }

  Event parse_element() {
    const char c = peek();
    if (c == 'E' && pos + 1 < text.size() && text[pos + 1] == '(') return parse_group();
    if (c == '(') {
      expect('(');
      Event e = parse_disjunction();
      expect(')');
      return e;
    }
    return parse_chain();
  }

  // group := 'E(' element (';' element)* ')'
  Event parse_group() {
    expect('E');
    expect('(');
    std::vector<Event> members = {parse_element()};
    while (consume(';')) members.push_back(parse_element());
    expect(')');
    if (members.size() == 1) return members[0];
    return Event::conjunction(std::move(members));
  }

  Event parse_disjunction() {
    std::vector<Event> members = {parse_group()};
    while (consume('|')) members.push_back(parse_group());
    if (members.size() == 1) return members[0];
    return Event::disjunction(std::move(members));
  }
};

}  // namespace

Event parse_event(const std::string& text, const DirectionTable& dirs) {
  Parser parser{text, dirs};
  Event e = parser.parse_disjunction();
  parser.skip_ws();
  if (parser.pos != text.size()) {
    throw std::invalid_argument("parse_event: trailing input at offset " +
                                std::to_string(parser.pos));
  }
  return e;
}

}  // namespace pseudoproj
