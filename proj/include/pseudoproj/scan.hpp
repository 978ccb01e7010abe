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

#include <optional>
#include <string>
#include <vector>

#include "pseudoproj/nonlocality.hpp"
#include "pseudoproj/qcore.hpp"
#include "pseudoproj/witness.hpp"

namespace pseudoproj {

/// Everything the scanner can bisect a noise threshold for.
enum class Inequality { Svetlichny, Mermin, E3_1, E3_2, E3_3, E3_4, EN, B3_1, B3_2 };

std::string to_string(Inequality ineq);
Inequality inequality_from_string(const std::string& name);
bool is_witness(Inequality ineq);

/// White-noise family p -> p*base + (1-p) I/d.
struct NoisyFamily {
  DensityOperator base;

  DensityOperator at(double p) const { return add_white_noise(base, p); }
  int n_qubits() const { return base.n_qubits(); }
};

/// Analytic detection thresholds for the GHZ_N + white noise family, where
/// known; used to cross-check scans and to flag shortfalls.
std::optional<double> ghz_reference_threshold(Inequality ineq, int n_qubits);

struct ScanOptions {
  double p_tol = 1e-4;
  int restarts = 64;
  std::uint64_t seed = 0;
  int threads = 0;
  /// When set, results with p_star above this value + 5e-3 are flagged.
  std::optional<double> reference_p_star;
};

struct ScanResult {
  std::string inequality;
  int n_qubits = 0;
  std::optional<double> p_star;  // empty: no detection even at p = 1
  double tolerance = 0.0;
  double value_at_1 = 0.0;  // best (most violating) value at p = 1
  double bound = 0.0;       // classical bound; 0 for witnesses
  bool monotone_check = false;
  std::vector<std::string> flags;
  std::optional<DirectionConfig> witness_config;
  std::vector<ObservablePair> poly_config;  // nonlocality kinds
};

/// Bisection on p with direction (and alpha, for witnesses) optimization
/// warm-started between steps. For kinds affine in p the bisection result is
/// verified against the analytic crossing of the best configuration.
ScanResult threshold(Inequality ineq, const NoisyFamily& family, const ScanOptions& options = {});

struct CurvePoint {
  double p;
  double value;   // best violating value at this p
  double margin;  // positive means detected
};

/// Best value per grid point under shared configurations; margins are
/// nondecreasing in p by construction.
std::vector<CurvePoint> scan_curve(Inequality ineq, const NoisyFamily& family,
                                   std::span<const double> p_grid,
                                   const ScanOptions& options = {});

/// Best (most negative) witness evaluation on a fixed state, optimizing the
/// triads and, unless `fixed_alpha` is given, the angle up to alpha_max.
WitnessValue optimize_witness(const WitnessSpec& spec, const DensityOperator& rho,
                              const ScanOptions& options,
                              std::optional<double> fixed_alpha = std::nullopt,
                              bool unsafe_alpha = false);

struct PolyOptimum {
  std::vector<ObservablePair> obs;
  double value;  // signed value of largest magnitude found
};

/// Direction optimization maximizing |<polynomial>| on a fixed state.
PolyOptimum optimize_polynomial(PolynomialKind kind, int n_parties, const DensityOperator& rho,
                                const ScanOptions& options);

enum class ReportFormat { Json, Csv };

/// Serializes scan results with stable field ordering. CSV columns:
/// inequality, p_star, tolerance, value_at_1, bound.
std::string emit_report(std::span<const ScanResult> results, ReportFormat format);

/// Inverse of emit_report for the JSON format.
std::vector<ScanResult> parse_report(const std::string& json_text);

}  // namespace pseudoproj
