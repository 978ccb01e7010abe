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

#include "pseudoproj/json_io.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pseudoproj {

Json direction_to_json(const DirectionSpec& d) {
  return Json::array({d.vec().x(), d.vec().y(), d.vec().z()});
}

DirectionSpec direction_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument("direction: expected [x, y, z]");
  }
  return DirectionSpec(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Json observable_pairs_to_json(std::span<const ObservablePair> obs) {
  Json out = Json::array();
  for (const auto& pair : obs) {
    out.push_back({{"a", direction_to_json(pair.a)}, {"a_prime", direction_to_json(pair.a_prime)}});
  }
  return out;
}

std::vector<ObservablePair> observable_pairs_from_json(const Json& j) {
  std::vector<ObservablePair> out;
  for (const auto& entry : j) {
    out.push_back(
        {direction_from_json(entry.at("a")), direction_from_json(entry.at("a_prime"))});
  }
  return out;
}

Json direction_config_to_json(const DirectionConfig& cfg) {
  Json qubits = Json::array();
  const double s = 2.0 * std::sin(cfg.alpha / 2.0);
  for (const auto& q : cfg.qubits) {
    auto plane_of = [&](const std::array<DirectionSpec, 2>& doublet) {
      const Vector3 partner = (doublet[0].vec() - doublet[1].vec()) / s;
      return direction_to_json(DirectionSpec(Vector3(partner / partner.norm())));
    };
    qubits.push_back({{"a", direction_to_json(q.a)},
                      {"a_prime", direction_to_json(q.a_prime)},
                      {"a_dprime", direction_to_json(q.a_dprime)},
                      {"planes", Json::array({plane_of(q.doublet_a), plane_of(q.doublet_a_prime),
                                              plane_of(q.doublet_a_dprime)})}});
  }
  return {{"alpha", cfg.alpha}, {"qubits", qubits}};
}

DirectionConfig direction_config_from_json(const Json& j) {
  const double alpha = j.at("alpha").get<double>();
  std::vector<std::array<DirectionSpec, 3>> triads;
  std::vector<std::array<DirectionSpec, 3>> planes;
  bool has_planes = false;
  for (const auto& q : j.at("qubits")) {
    triads.push_back({direction_from_json(q.at("a")), direction_from_json(q.at("a_prime")),
                      direction_from_json(q.at("a_dprime"))});
    if (q.contains("planes")) {
      has_planes = true;
      const auto& p = q.at("planes");
      planes.push_back({direction_from_json(p.at(0)), direction_from_json(p.at(1)),
                        direction_from_json(p.at(2))});
    }
  }
  if (has_planes && planes.size() != triads.size()) {
    throw std::invalid_argument("direction config: planes must be given for all qubits or none");
  }
  return make_direction_config(alpha, triads, has_planes ? &planes : nullptr);
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected rows");
  const Eigen::Index n = Eigen::Index(j.size());
  Matrix m(n, Eigen::Index(j[0].size()));
  if (m.cols() != n) throw std::invalid_argument("matrix: must be square");
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = j[std::size_t(i)];
    if (Eigen::Index(row.size()) != n) throw std::invalid_argument("matrix: ragged rows");
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto& cell = row[std::size_t(k)];
      if (!cell.is_array() || cell.size() != 2) {
        throw std::invalid_argument("matrix: entries are [re, im] pairs");
      }
      m(i, k) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return m;
}

DensityOperator density_from_json(const Json& j) {
  return DensityOperator(ComplexOperator(matrix_from_json(j)));
}

Json pps_to_json(const PseudoProbabilityScheme& pps) {
  Json observables = Json::array();
  for (const auto& per_sub : pps.observables()) {
    Json dirs = Json::array();
    for (const auto& d : per_sub) dirs.push_back(direction_to_json(d));
    observables.push_back(std::move(dirs));
  }
  Json entries = Json::array();
  for (std::size_t i = 0; i < pps.size(); ++i) {
    entries.push_back({{"outcome", pps.outcome_string(i)}, {"value", pps.value(i)}});
  }
  return {{"observables", std::move(observables)}, {"entries", std::move(entries)}};
}

Json expansion_to_json(const Expansion& e, const ComplexOperator& original) {
  auto terms_json = [](const std::vector<ExpansionTerm>& terms) {
    Json out = Json::array();
    for (const auto& t : terms) {
      out.push_back(
          {{"weight", t.weight}, {"block", Json::array({t.i, t.j})}, {"kind", t.kind}});
    }
    return out;
  };
  return {{"theta", e.theta},
          {"dim", e.dim},
          {"terms", terms_json(e.terms)},
          {"constant_terms", terms_json(e.constant_terms)},
          {"reconstruction_error", e.reconstruct().max_abs_diff(original)}};
}

Json scan_result_to_json(const ScanResult& r) {
  Json j = {{"inequality", r.inequality},
            {"n_qubits", r.n_qubits},
            {"p_star", r.p_star ? Json(*r.p_star) : Json(nullptr)},
            {"tolerance", r.tolerance},
            {"value_at_1", r.value_at_1},
            {"bound", r.bound},
            {"monotone_check", r.monotone_check},
            {"flags", r.flags}};
  if (r.witness_config) {
    j["config"] = direction_config_to_json(*r.witness_config);
  } else {
    j["config"] = observable_pairs_to_json(r.poly_config);
  }
  return j;
}

ScanResult scan_result_from_json(const Json& j) {
  ScanResult r;
  r.inequality = j.at("inequality").get<std::string>();
  r.n_qubits = j.at("n_qubits").get<int>();
  if (!j.at("p_star").is_null()) r.p_star = j.at("p_star").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.value_at_1 = j.at("value_at_1").get<double>();
  r.bound = j.at("bound").get<double>();
  r.monotone_check = j.at("monotone_check").get<bool>();
  r.flags = j.at("flags").get<std::vector<std::string>>();
  const auto& cfg = j.at("config");
  if (cfg.is_object()) {
    r.witness_config = direction_config_from_json(cfg);
  } else {
    r.poly_config = observable_pairs_from_json(cfg);
  }
  return r;
}

std::string emit_report(std::span<const ScanResult> results, ReportFormat format) {
  if (format == ReportFormat::Json) {
    Json out = Json::array();
    for (const auto& r : results) out.push_back(scan_result_to_json(r));
    return out.dump(2) + "\n";
  }
  std::ostringstream csv;
  csv << "inequality,p_star,tolerance,value_at_1,bound\n";
  csv.precision(10);
  for (const auto& r : results) {
    csv << r.inequality << ",";
    if (r.p_star) csv << *r.p_star;
    csv << "," << r.tolerance << "," << r.value_at_1 << "," << r.bound << "\n";
  }
  return csv.str();
}

std::vector<ScanResult> parse_report(const std::string& json_text) {
  const Json doc = Json::parse(json_text);
  if (!doc.is_array()) throw std::invalid_argument("parse_report: expected a JSON array");
  std::vector<ScanResult> out;
  out.reserve(doc.size());
  for (const auto& entry : doc) out.push_back(scan_result_from_json(entry));
  return out;
}

}  // namespace pseudoproj
