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

#include "pseudoproj/nonlocality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

namespace pseudoproj {

CorrelatorPolynomial::CorrelatorPolynomial(int n_parties) : n_parties_(n_parties) {
  if (n_parties < 1) throw std::invalid_argument("CorrelatorPolynomial: need >= 1 party");
}

CorrelatorPolynomial CorrelatorPolynomial::symbol(int n_parties, int party, int variant) {
  CorrelatorPolynomial p(n_parties);
  if (party < 0 || party >= n_parties) {
    throw std::invalid_argument("CorrelatorPolynomial: party index out of range");
  }
  Monomial m(n_parties, -1);
  m[party] = std::int8_t(variant);
  p.terms_[m] = 1.0;
  return p;
}

CorrelatorPolynomial& CorrelatorPolynomial::operator+=(const CorrelatorPolynomial& other) {
  if (other.n_parties_ != n_parties_) {
    throw std::invalid_argument("CorrelatorPolynomial: party count mismatch");
  }
  for (const auto& [m, c] : other.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_[m] = c;
    } else {
      it->second += c;
      if (it->second == 0.0) terms_.erase(it);
    }
  }
  return *this;
}

CorrelatorPolynomial& CorrelatorPolynomial::operator-=(const CorrelatorPolynomial& other) {
  return *this += (-1.0 * other);
}

CorrelatorPolynomial operator+(CorrelatorPolynomial a, const CorrelatorPolynomial& b) {
  a += b;
  return a;
}

CorrelatorPolynomial operator-(CorrelatorPolynomial a, const CorrelatorPolynomial& b) {
  a -= b;
  return a;
}

CorrelatorPolynomial operator*(double s, CorrelatorPolynomial p) {
  if (s == 0.0) {
    return CorrelatorPolynomial(p.n_parties_);
  }
  for (auto& [m, c] : p.terms_) c *= s;
  return p;
}

CorrelatorPolynomial CorrelatorPolynomial::extended(int n) const {
  if (n < n_parties_) throw std::invalid_argument("extended: cannot shrink");
  CorrelatorPolynomial out(n);
  for (const auto& [m, c] : terms_) {
    Monomial mm = m;
    mm.resize(n, -1);
    out.terms_[mm] = c;
  }
  return out;
}

CorrelatorPolynomial CorrelatorPolynomial::times_symbol(int party, int variant) const {
  if (party < 0 || party >= n_parties_) {
    throw std::invalid_argument("times_symbol: party index out of range");
  }
  CorrelatorPolynomial out(n_parties_);
  for (const auto& [m, c] : terms_) {
    if (m[party] != -1) {
      throw std::invalid_argument("times_symbol: party already present in a monomial");
    }
    Monomial mm = m;
    mm[party] = std::int8_t(variant);
    out.terms_[mm] = c;
  }
  return out;
}

CorrelatorPolynomial CorrelatorPolynomial::swap_primes() const {
  CorrelatorPolynomial out(n_parties_);
  for (const auto& [m, c] : terms_) {
    Monomial mm = m;
    for (auto& v : mm) {
      if (v == 0) {
        v = 1;
      } else if (v == 1) {
        v = 0;
      }
    }
    out.terms_[mm] += c;
  }
  return out;
}

bool CorrelatorPolynomial::full_support() const {
  for (const auto& [m, c] : terms_) {
    (void)c;
    if (std::any_of(m.begin(), m.end(), [](std::int8_t v) { return v == -1; })) return false;
  }
  return true;
}

namespace {

ComplexOperator monomials_to_operator(
    const std::map<CorrelatorPolynomial::Monomial, double>& terms, int n_parties,
    const std::function<ComplexOperator(int party, int variant)>& op_of) {
  const Eigen::Index dim = Eigen::Index(1) << n_parties;
  Matrix acc = Matrix::Zero(dim, dim);
  const ComplexOperator id2 = ComplexOperator::identity(2);
  for (const auto& [m, c] : terms) {
    std::vector<ComplexOperator> factors;
    factors.reserve(n_parties);
    for (int party = 0; party < n_parties; ++party) {
      factors.push_back(m[party] == -1 ? id2 : op_of(party, m[party]));
    }
    acc += c * tensor_product(factors).matrix();
  }
  return ComplexOperator(std::move(acc));
}

}  // namespace

ComplexOperator CorrelatorPolynomial::to_operator(std::span<const ObservablePair> obs) const {
  if (int(obs.size()) != n_parties_) {
    throw std::invalid_argument("to_operator: one observable pair per party required");
  }
  return monomials_to_operator(terms_, n_parties_, [&](int party, int variant) {
    if (variant > 1) throw std::invalid_argument("to_operator: variant needs a triad");
    return pauli_from_direction(variant == 0 ? obs[party].a : obs[party].a_prime);
  });
}

ComplexOperator CorrelatorPolynomial::to_operator(
    std::span<const std::array<DirectionSpec, 3>> triads) const {
  if (int(triads.size()) != n_parties_) {
    throw std::invalid_argument("to_operator: one triad per party required");
  }
  return monomials_to_operator(terms_, n_parties_, [&](int party, int variant) {
    return pauli_from_direction(triads[party][std::size_t(variant)]);
  });
}

double CorrelatorPolynomial::evaluate(
    const std::vector<std::array<int, 3>>& assignment) const {
  if (int(assignment.size()) != n_parties_) {
    throw std::invalid_argument("evaluate: assignment size mismatch");
  }
  double total = 0.0;
  for (const auto& [m, c] : terms_) {
    double prod = c;
    for (int party = 0; party < n_parties_; ++party) {
      if (m[party] != -1) prod *= assignment[party][std::size_t(m[party])];
    }
    total += prod;
  }
  return total;
}

namespace {

// M_2 = A1 A2 + A1'A2',  M_2' = A1 A2' - A1'A2,
// M_k = M_{k-1} A_k' + M_{k-1}' A_k,  M_k' = M_{k-1}' A_k' - M_{k-1} A_k.
std::pair<CorrelatorPolynomial, CorrelatorPolynomial> mermin_pair(int n) {
  CorrelatorPolynomial m(2), mp(2);
  m += CorrelatorPolynomial::symbol(2, 0, 0).times_symbol(1, 0);
  m += CorrelatorPolynomial::symbol(2, 0, 1).times_symbol(1, 1);
  mp += CorrelatorPolynomial::symbol(2, 0, 0).times_symbol(1, 1);
  mp -= CorrelatorPolynomial::symbol(2, 0, 1).times_symbol(1, 0);
  for (int k = 3; k <= n; ++k) {
    const CorrelatorPolynomial prev_m = m.extended(k);
    const CorrelatorPolynomial prev_mp = mp.extended(k);
    m = prev_m.times_symbol(k - 1, 1) + prev_mp.times_symbol(k - 1, 0);
    mp = prev_mp.times_symbol(k - 1, 1) - prev_m.times_symbol(k - 1, 0);
  }
  return {m, mp};
}

}  // namespace

CorrelatorPolynomial mermin_polynomial(int n_parties) {
  if (n_parties < 2) throw std::invalid_argument("mermin_polynomial: need N >= 2");
  return mermin_pair(n_parties).first;
}

CorrelatorPolynomial mermin_primed_polynomial(int n_parties) {
  if (n_parties < 2) throw std::invalid_argument("mermin_primed_polynomial: need N >= 2");
  return mermin_pair(n_parties).second;
}

CorrelatorPolynomial svetlichny_polynomial(int n_parties) {
  if (n_parties < 3) throw std::invalid_argument("svetlichny_polynomial: need N >= 3");
  // S_3 = {(-A1+A1')A2 + (A1+A1')A2'}A3' + {(A1+A1')A2 + (A1-A1')A2'}A3
  CorrelatorPolynomial s(3);
  auto term = [](int v1, int v2, int v3) {
    return CorrelatorPolynomial::symbol(3, 0, v1).times_symbol(1, v2).times_symbol(2, v3);
  };
  s -= term(0, 0, 1);
  s += term(1, 0, 1);
  s += term(0, 1, 1);
  s += term(1, 1, 1);
  s += term(0, 0, 0);
  s += term(1, 0, 0);
  s += term(0, 1, 0);
  s -= term(1, 1, 0);
  for (int k = 4; k <= n_parties; ++k) {
    const CorrelatorPolynomial prev = s.extended(k);
    s = prev.times_symbol(k - 1, 1) + prev.swap_primes().times_symbol(k - 1, 0);
  }
  return s;
}

CorrelatorPolynomial svetlichny_primed_polynomial(int n_parties) {
  return svetlichny_polynomial(n_parties).swap_primes();
}

CorrelatorPolynomial dda_polynomial(int n_parties) {
  if (n_parties < 3) throw std::invalid_argument("dda_polynomial: need N >= 3");
  // (A1 + A1') A2...AN plus (A1 - A1') A2'...AK' with K = N (even) or N-1 (odd).
  CorrelatorPolynomial first =
      CorrelatorPolynomial::symbol(n_parties, 0, 0) + CorrelatorPolynomial::symbol(n_parties, 0, 1);
  for (int k = 1; k < n_parties; ++k) first = first.times_symbol(k, 0);
  CorrelatorPolynomial second =
      CorrelatorPolynomial::symbol(n_parties, 0, 0) - CorrelatorPolynomial::symbol(n_parties, 0, 1);
  const int last = (n_parties % 2 == 0) ? n_parties : n_parties - 1;
  for (int k = 1; k < last; ++k) second = second.times_symbol(k, 1);
  return first + second;
}

std::string to_string(PolynomialKind kind) {
  switch (kind) {
    case PolynomialKind::Svetlichny:
      return "svetlichny";
    case PolynomialKind::SvetlichnyPrimed:
      return "svetlichny_primed";
    case PolynomialKind::Mermin:
      return "mermin";
    case PolynomialKind::MerminPrimed:
      return "mermin_primed";
    case PolynomialKind::DDA:
      return "dda";
  }
  return {};
}

double classical_bound(PolynomialKind kind, int n_parties) {
  switch (kind) {
    case PolynomialKind::Svetlichny:
    case PolynomialKind::SvetlichnyPrimed:
      return std::ldexp(1.0, n_parties - 1);
    case PolynomialKind::Mermin:
    case PolynomialKind::MerminPrimed:
      return n_parties % 2 == 0 ? std::ldexp(1.0, n_parties / 2)
                                : std::ldexp(1.0, (n_parties - 1) / 2);
    case PolynomialKind::DDA:
      return 2.0;
  }
  return 0.0;
}

namespace {

NonlocalityPolynomial make_nonlocality(PolynomialKind kind, int n,
                                       CorrelatorPolynomial poly,
                                       std::span<const ObservablePair> obs) {
  if (int(obs.size()) != n) {
    throw std::invalid_argument("nonlocality: one observable pair per party required");
  }
  ComplexOperator op = poly.to_operator(obs);
  return {kind, n, std::move(poly), std::move(op), classical_bound(kind, n)};
}

}  // namespace

NonlocalityPolynomial mermin(int n_parties, std::span<const ObservablePair> obs) {
  return make_nonlocality(PolynomialKind::Mermin, n_parties, mermin_polynomial(n_parties), obs);
}

NonlocalityPolynomial svetlichny(int n_parties, std::span<const ObservablePair> obs) {
  return make_nonlocality(PolynomialKind::Svetlichny, n_parties,
                          svetlichny_polynomial(n_parties), obs);
}

NonlocalityPolynomial dda(int n_parties, std::span<const ObservablePair> obs) {
  return make_nonlocality(PolynomialKind::DDA, n_parties, dda_polynomial(n_parties), obs);
}

ViolationReport violation_report(const NonlocalityPolynomial& poly, const DensityOperator& rho) {
  const double value = expectation(poly.op, rho);
  const double margin = std::abs(value) - poly.classical_bound;
  return {value, poly.classical_bound, margin > 0.0, value < -poly.classical_bound, margin};
}

// --- LHV enumeration ---------------------------------------------------------

LhvEvent LhvEvent::atomic(LhvSymbol sym, int outcome) {
  if (outcome != 1 && outcome != -1) {
    throw std::invalid_argument("LhvEvent: outcome must be +1 or -1");
  }
  LhvEvent e;
  e.kind_ = Kind::Atomic;
  e.syms_ = {sym};
  e.outcome_ = outcome;
  return e;
}

LhvEvent LhvEvent::chain(std::vector<LhvSymbol> syms, std::uint32_t barred) {
  if (syms.size() < 2) throw std::invalid_argument("LhvEvent: chain needs >= 2 symbols");
  LhvEvent e;
  e.kind_ = Kind::Chain;
  e.syms_ = std::move(syms);
  e.barred_ = barred;
  return e;
}

LhvEvent LhvEvent::conjunction(std::vector<LhvEvent> members) {
  if (members.empty()) throw std::invalid_argument("LhvEvent: empty conjunction");
  LhvEvent e;
  e.kind_ = Kind::Conjunction;
  e.members_ = std::move(members);
  return e;
}

LhvEvent LhvEvent::disjunction(std::vector<LhvEvent> members) {
  if (members.empty()) throw std::invalid_argument("LhvEvent: empty disjunction");
  LhvEvent e;
  e.kind_ = Kind::Disjunction;
  e.members_ = std::move(members);
  return e;
}

void LhvEvent::collect_symbols(std::vector<LhvSymbol>& out) const {
  out.insert(out.end(), syms_.begin(), syms_.end());
  for (const auto& m : members_) m.collect_symbols(out);
}

double LhvEvent::indicator(const std::map<LhvSymbol, int>& assignment) const {
  switch (kind_) {
    case Kind::Atomic:
      return assignment.at(syms_[0]) == outcome_ ? 1.0 : 0.0;
    case Kind::Chain: {
      for (int sign : {+1, -1}) {
        bool all = true;
        for (std::size_t k = 0; k < syms_.size(); ++k) {
          const int expected = ((barred_ >> k) & 1u) ? -sign : sign;
          if (assignment.at(syms_[k]) != expected) {
            all = false;
            break;
          }
        }
        if (all) return 1.0;
      }
      return 0.0;
    }
    case Kind::Conjunction: {
      double prod = 1.0;
      for (const auto& m : members_) prod *= m.indicator(assignment);
      return prod;
    }
    case Kind::Disjunction: {
      double sum = 0.0;
      for (const auto& m : members_) sum += m.indicator(assignment);
      return sum;
    }
  }
  return 0.0;
}

LhvExpression LhvExpression::from_polynomial(const CorrelatorPolynomial& p) {
  LhvExpression expr;
  for (const auto& [m, c] : p.terms()) {
    LhvTerm term;
    term.coeff = c;
    for (int party = 0; party < p.n_parties(); ++party) {
      if (m[party] != -1) term.symbols.push_back({party, m[party]});
    }
    expr.terms.push_back(std::move(term));
  }
  return expr;
}

namespace {

std::vector<LhvSymbol> collect_all_symbols(const LhvExpression& expr) {
  std::vector<LhvSymbol> syms;
  for (const auto& t : expr.terms) {
    syms.insert(syms.end(), t.symbols.begin(), t.symbols.end());
    for (const auto& e : t.events) e.collect_symbols(syms);
  }
  std::sort(syms.begin(), syms.end());
  syms.erase(std::unique(syms.begin(), syms.end()), syms.end());
  return syms;
}

double evaluate_strategy(const LhvExpression& expr, const std::vector<LhvSymbol>& syms,
                         std::uint64_t strategy, std::map<LhvSymbol, int>& assignment) {
  for (std::size_t k = 0; k < syms.size(); ++k) {
    assignment[syms[k]] = ((strategy >> k) & 1u) ? -1 : +1;
  }
  double total = 0.0;
  for (const auto& t : expr.terms) {
    double prod = t.coeff;
    for (const auto& s : t.symbols) prod *= assignment[s];
    for (const auto& e : t.events) prod *= e.indicator(assignment);
    total += prod;
  }
  return total;
}

}  // namespace

LhvMaxResult lhv_max(const LhvExpression& expr, int threads) {
  const std::vector<LhvSymbol> syms = collect_all_symbols(expr);
  const int n = int(syms.size());
  if (n > kMaxLhvSymbols) {
    throw std::invalid_argument("lhv_max: " + std::to_string(n) +
                                " symbols exceed the enumeration cap of 24");
  }
  const std::uint64_t total = std::uint64_t(1) << n;

  int n_threads = threads > 0 ? threads : int(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min<int>(n_threads, 16));
  if (total < 4096) n_threads = 1;

  struct Partial {
    double max_value = -std::numeric_limits<double>::infinity();
    double max_abs = 0.0;
    std::uint64_t best = 0;
  };
  std::vector<Partial> partials(static_cast<std::size_t>(n_threads));

  auto worker = [&](int t) {
    const std::uint64_t begin = total * std::uint64_t(t) / std::uint64_t(n_threads);
    const std::uint64_t end = total * std::uint64_t(t + 1) / std::uint64_t(n_threads);
    Partial p;
    std::map<LhvSymbol, int> assignment;
    for (std::uint64_t s = begin; s < end; ++s) {
      const double v = evaluate_strategy(expr, syms, s, assignment);
      if (v > p.max_value) {
        p.max_value = v;
        p.best = s;
      }
      p.max_abs = std::max(p.max_abs, std::abs(v));
    }
    partials[std::size_t(t)] = p;
  };

  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  Partial best = partials[0];
  for (const auto& p : partials) {
    if (p.max_value > best.max_value ||
        (p.max_value == best.max_value && p.best < best.best)) {
      best.max_value = p.max_value;
      best.best = p.best;
    }
    best.max_abs = std::max(best.max_abs, p.max_abs);
  }
  return {best.max_value, best.max_abs, best.best, n};
}

// --- expression grammar ------------------------------------------------------

namespace {

struct LhvParser {
  const std::string& text;
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
      throw std::invalid_argument(std::string("parse_lhv_expression: expected '") + c +
                                  "' at offset " + std::to_string(pos));
    }
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool at_group() {
    skip_ws();
    return pos + 1 < text.size() && text[pos] == 'E' && text[pos + 1] == '(';
  }

  struct SymRef {
    bool barred;
    LhvSymbol sym;
  };

  SymRef parse_symref() {
    skip_ws();
    const bool barred = consume('~');
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) {
      throw std::invalid_argument("parse_lhv_expression: expected symbol at offset " +
                                  std::to_string(pos));
    }
    const std::size_t dstart = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == dstart) {
      throw std::invalid_argument("parse_lhv_expression: symbol needs a subsystem index");
    }
    const int subsystem = std::stoi(text.substr(dstart, pos - dstart)) - 1;
    if (subsystem < 0) {
      throw std::invalid_argument("parse_lhv_expression: subsystem indices are one-based");
    }
    int primes = 0;
    while (pos < text.size() && text[pos] == '\'') {
      ++primes;
      ++pos;
    }
    return {barred, {subsystem, primes}};
  }

  LhvEvent parse_chain() {
    std::vector<SymRef> refs = {parse_symref()};
    while (consume('=')) refs.push_back(parse_symref());
    if (refs.size() == 1) {
      return LhvEvent::atomic(refs[0].sym, refs[0].barred ? -1 : +1);
    }
    std::vector<LhvSymbol> syms;
    std::uint32_t barred = 0;
    for (std::size_t k = 0; k < refs.size(); ++k) {
      syms.push_back(refs[k].sym);
      if (refs[k].barred) barred |= (1u << k);
    }
    return LhvEvent::chain(std::move(syms), barred);
  }

  LhvEvent parse_element() {
    if (at_group()) return parse_group();
    if (peek() == '(') {
      expect('(');
      LhvEvent e = parse_event_disjunction();
      expect(')');
      return e;
    }
    return parse_chain();
  }

  LhvEvent parse_group() {
    expect('E');
    expect('(');
    std::vector<LhvEvent> members = {parse_element()};
    while (consume(';')) members.push_back(parse_element());
    expect(')');
    if (members.size() == 1) return members[0];
    return LhvEvent::conjunction(std::move(members));
  }

  LhvEvent parse_event_disjunction() {
    std::vector<LhvEvent> members = {parse_group()};
    while (consume('|')) members.push_back(parse_group());
    if (members.size() == 1) return members[0];
    return LhvEvent::disjunction(std::move(members));
  }

  bool parse_number(double& out) {
    skip_ws();
    const std::size_t start = pos;
    std::size_t p = pos;
    while (p < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[p])) || text[p] == '.')) {
      ++p;
    }
    if (p == start) return false;
    if (p < text.size() && (text[p] == 'e' || text[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < text.size() && (text[q] == '+' || text[q] == '-')) ++q;
      while (q < text.size() && std::isdigit(static_cast<unsigned char>(text[q]))) ++q;
      p = q;
    }
    out = std::stod(text.substr(start, p - start));
    pos = p;
    return true;
  }

  LhvTerm parse_term(double sign) {
    LhvTerm term;
    term.coeff = sign;
    double num = 1.0;
    if (parse_number(num)) {
      term.coeff *= num;
      if (!consume('*')) return term;  // bare constant
    }
    while (true) {
      if (at_group() || peek() == '(') {
        term.events.push_back(at_group() ? parse_group() : [&] {
          expect('(');
          LhvEvent e = parse_event_disjunction();
          expect(')');
          return e;
        }());
      } else {
        const SymRef ref = parse_symref();
        if (ref.barred) term.coeff *= -1.0;  // ~A as a factor negates the +-1 value
        term.symbols.push_back(ref.sym);
      }
      if (!consume('*')) break;
    }
    return term;
  }

  LhvExpression parse_expression() {
    LhvExpression expr;
    double sign = consume('-') ? -1.0 : 1.0;
    if (sign > 0) consume('+');
    expr.terms.push_back(parse_term(sign));
    while (true) {
      skip_ws();
      if (consume('+')) {
        expr.terms.push_back(parse_term(1.0));
      } else if (consume('-')) {
        expr.terms.push_back(parse_term(-1.0));
      } else {
        break;
      }
    }
    return expr;
  }
};

}  // namespace

LhvExpression parse_lhv_expression(const std::string& text) {
  LhvParser parser{text};
  LhvExpression expr = parser.parse_expression();
  parser.skip_ws();
  if (parser.pos != text.size()) {
    throw std::invalid_argument("parse_lhv_expression: trailing input at offset " +
                                std::to_string(parser.pos));
  }
  return expr;
}

}  // namespace pseudoproj
