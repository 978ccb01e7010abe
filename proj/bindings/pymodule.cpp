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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pseudoproj/events.hpp"
#include "pseudoproj/expand.hpp"
#include "pseudoproj/json_io.hpp"
#include "pseudoproj/nonlocality.hpp"
#include "pseudoproj/pseudo.hpp"
#include "pseudoproj/qcore.hpp"
#include "pseudoproj/scan.hpp"
#include "pseudoproj/witness.hpp"

namespace py = pybind11;
using namespace pseudoproj;

namespace {

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      py::dict d;
      for (const auto& [key, value] : j.items()) d[py::str(key)] = json_to_py(value);
      return d;
    }
    case Json::value_t::array: {
      py::list l;
      for (const auto& value : j) l.append(json_to_py(value));
      return l;
    }
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
      return py::int_(j.get<long long>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    default:
      return py::none();
  }
}

DirectionSpec dir_of(const Vector3& v) { return DirectionSpec(v); }

std::vector<Projection> projections_of(const std::vector<Matrix>& mats) {
  std::vector<Projection> ps;
  ps.reserve(mats.size());
  for (const auto& m : mats) ps.emplace_back(ComplexOperator(m));
  return ps;
}

std::vector<ObservablePair> pairs_of(const std::vector<std::pair<Vector3, Vector3>>& obs) {
  std::vector<ObservablePair> out;
  out.reserve(obs.size());
  for (const auto& [a, ap] : obs) out.push_back({dir_of(a), dir_of(ap)});
  return out;
}

std::vector<std::array<DirectionSpec, 3>> triads_of(
    const std::vector<std::array<Vector3, 3>>& triads) {
  std::vector<std::array<DirectionSpec, 3>> out;
  out.reserve(triads.size());
  for (const auto& t : triads) out.push_back({dir_of(t[0]), dir_of(t[1]), dir_of(t[2])});
  return out;
}

CorrelatorPolynomial named_polynomial(const std::string& name, int n) {
  if (name == "svetlichny") return svetlichny_polynomial(n);
  if (name == "mermin") return mermin_polynomial(n);
  if (name == "dda") return dda_polynomial(n);
  throw std::invalid_argument("unknown polynomial '" + name + "'");
}

PolynomialKind named_kind(const std::string& name) {
  if (name == "svetlichny") return PolynomialKind::Svetlichny;
  if (name == "mermin") return PolynomialKind::Mermin;
  if (name == "dda") return PolynomialKind::DDA;
  throw std::invalid_argument("unknown polynomial '" + name + "'");
}

ScanOptions scan_options(double p_tol, int restarts, std::uint64_t seed, int threads,
                         std::optional<double> reference) {
  ScanOptions opt;
  opt.p_tol = p_tol;
  opt.restarts = restarts;
  opt.seed = seed;
  opt.threads = threads;
  opt.reference_p_star = reference;
  return opt;
}

}  // namespace

PYBIND11_MODULE(_pseudoproj, m) {
  m.doc() = "Multi-qubit nonclassicality toolkit: pseudoprojections, pseudoprobability "
            "schemes, Bell-type inequality builders with exact LHV bounds, entanglement "
            "witnesses, operator expansions, and white-noise threshold scans.";

  // operator algebra
  m.def("sigma_x", [] { return sigma_x().matrix(); });
  m.def("sigma_y", [] { return sigma_y().matrix(); });
  m.def("sigma_z", [] { return sigma_z().matrix(); });
  m.def(
      "pauli_from_direction",
      [](const Vector3& n) { return pauli_from_direction(dir_of(n)).matrix(); }, py::arg("n"),
      "n_x sigma_x + n_y sigma_y + n_z sigma_z for a unit Bloch vector");
  m.def(
      "tensor_product",
      [](const std::vector<Matrix>& factors) {
        std::vector<ComplexOperator> ops;
        ops.reserve(factors.size());
        for (const auto& f : factors) ops.emplace_back(f);
        return tensor_product(ops).matrix();
      },
      py::arg("factors"), "Kronecker product; the first factor is the leftmost qubit");
  m.def(
      "expectation",
      [](const Matrix& O, const Matrix& rho) {
        return expectation(ComplexOperator(O), DensityOperator(ComplexOperator(rho)));
      },
      py::arg("O"), py::arg("rho"));
  m.def("ghz", [](int n) { return ghz(n).op().matrix(); }, py::arg("n_qubits"));
  m.def("w3", [] { return w3().op().matrix(); });
  m.def(
      "add_white_noise",
      [](const Matrix& rho, double p) {
        return add_white_noise(DensityOperator(ComplexOperator(rho)), p).op().matrix();
      },
      py::arg("rho"), py::arg("p"));

  // pseudoprojections
  m.def(
      "projection",
      [](const Vector3& n, int outcome) { return projection(dir_of(n), outcome).op().matrix(); },
      py::arg("n"), py::arg("outcome"));
  m.def(
      "unit_pseudoprojection",
      [](const std::vector<Matrix>& ps) {
        return unit_pseudoprojection(projections_of(ps)).op().matrix();
      },
      py::arg("projections"), "(product-in-order + adjoint)/2");
  m.def(
      "symmetrized_pseudoprojection",
      [](const std::vector<Matrix>& ps) {
        return symmetrized_pseudoprojection(projections_of(ps)).op().matrix();
      },
      py::arg("projections"), "uniform average over all orderings");
  m.def(
      "pseudoprobability",
      [](const Matrix& P, const Matrix& rho) {
        return pseudoprobability(PseudoProjection::from_operator(ComplexOperator(P)),
                                 DensityOperator(ComplexOperator(rho)));
      },
      py::arg("P"), py::arg("rho"));
  m.def(
      "build_pps",
      [](const std::vector<std::vector<Vector3>>& observables, const Matrix& rho) {
        std::vector<std::vector<DirectionSpec>> obs;
        for (const auto& per_sub : observables) {
          std::vector<DirectionSpec> dirs;
          for (const auto& v : per_sub) dirs.push_back(dir_of(v));
          obs.push_back(std::move(dirs));
        }
        return json_to_py(pps_to_json(build_pps(obs, DensityOperator(ComplexOperator(rho)))));
      },
      py::arg("observables"), py::arg("rho"),
      "full pseudoprobability scheme as {'observables': ..., 'entries': [...]}");
  m.def(
      "detect_negativity",
      [](const std::vector<std::vector<Vector3>>& observables, const Matrix& rho, double eps) {
        std::vector<std::vector<DirectionSpec>> obs;
        for (const auto& per_sub : observables) {
          std::vector<DirectionSpec> dirs;
          for (const auto& v : per_sub) dirs.push_back(dir_of(v));
          obs.push_back(std::move(dirs));
        }
        return detect_negativity(build_pps(obs, DensityOperator(ComplexOperator(rho))), eps);
      },
      py::arg("observables"), py::arg("rho"), py::arg("eps") = 1e-12,
      "entries below -eps as (outcome, value) pairs, most negative first");

  // events
  m.def(
      "event_pseudoprobability",
      [](const std::string& text, const std::map<std::string, Vector3>& dirs,
         const Matrix& rho) {
        DirectionTable table;
        for (const auto& [key, v] : dirs) table.emplace(key, dir_of(v));
        return event_pseudoprobability(parse_event(text, table),
                                       DensityOperator(ComplexOperator(rho)));
      },
      py::arg("event"), py::arg("directions"), py::arg("rho"),
      "pseudoprobability of an event given in the text grammar, e.g. E(~A1=A1'=A2; A3)");

  // nonlocality
  m.def(
      "polynomial_operator",
      [](const std::string& name, const std::vector<std::pair<Vector3, Vector3>>& obs) {
        const auto pairs = pairs_of(obs);
        return named_polynomial(name, int(pairs.size())).to_operator(pairs).matrix();
      },
      py::arg("name"), py::arg("observables"),
      "operator of the named polynomial (svetlichny | mermin | dda)");
  m.def(
      "classical_bound",
      [](const std::string& name, int n) { return classical_bound(named_kind(name), n); },
      py::arg("name"), py::arg("n_parties"));
  m.def(
      "lhv_max",
      [](const std::string& expr, int n, int threads) {
        const LhvExpression e = (expr == "svetlichny" || expr == "mermin" || expr == "dda")
                                    ? LhvExpression::from_polynomial(named_polynomial(expr, n))
                                    : parse_lhv_expression(expr);
        const LhvMaxResult r = lhv_max(e, threads);
        py::dict d;
        d["max"] = r.max_value;
        d["max_abs"] = r.max_abs;
        d["n_symbols"] = r.n_symbols;
        return d;
      },
      py::arg("expr"), py::arg("n") = 3, py::arg("threads") = 0,
      "exact maximum over deterministic strategies; expr is a named polynomial or text");
  m.def(
      "violation_report",
      [](const std::string& name, const std::vector<std::pair<Vector3, Vector3>>& obs,
         const Matrix& rho) {
        const auto pairs = pairs_of(obs);
        const int n = int(pairs.size());
        NonlocalityPolynomial poly{named_kind(name), n, named_polynomial(name, n),
                                   named_polynomial(name, n).to_operator(pairs),
                                   classical_bound(named_kind(name), n)};
        const ViolationReport r = violation_report(poly, DensityOperator(ComplexOperator(rho)));
        py::dict d;
        d["value"] = r.value;
        d["bound"] = r.bound;
        d["violated"] = r.violated;
        d["violated_one_sided"] = r.violated_one_sided;
        d["margin"] = r.margin;
        return d;
      },
      py::arg("name"), py::arg("observables"), py::arg("rho"));

  // witnesses
  m.def(
      "alpha_max", [](const std::string& kind, int n) {
        return alpha_max(witness_kind_from_string(kind), n);
      },
      py::arg("kind"), py::arg("n_qubits") = 3);
  m.def(
      "witness_value",
      [](const std::string& kind, double alpha, const std::vector<std::array<Vector3, 3>>& triads,
         const Matrix& rho, bool unsafe_alpha) {
        const WitnessSpec spec =
            make_witness_spec(witness_kind_from_string(kind), int(triads.size()));
        const DirectionConfig cfg = make_direction_config(alpha, triads_of(triads));
        const WitnessValue wv =
            witness_value(spec, cfg, DensityOperator(ComplexOperator(rho)), unsafe_alpha);
        py::dict d;
        d["value"] = wv.value;
        d["detected"] = wv.detected;
        d["outside_alpha_range"] = wv.outside_alpha_range;
        return d;
      },
      py::arg("kind"), py::arg("alpha"), py::arg("triads"), py::arg("rho"),
      py::arg("unsafe_alpha") = false,
      "witness value from per-qubit orthonormal triads (a, a', a'')");
  m.def(
      "witness_operator",
      [](const std::string& kind, double alpha, const std::vector<std::array<Vector3, 3>>& triads,
         bool unsafe_alpha) {
        const WitnessSpec spec =
            make_witness_spec(witness_kind_from_string(kind), int(triads.size()));
        const DirectionConfig cfg = make_direction_config(alpha, triads_of(triads));
        return witness_operator(spec, cfg, unsafe_alpha).matrix();
      },
      py::arg("kind"), py::arg("alpha"), py::arg("triads"), py::arg("unsafe_alpha") = false);
  m.def(
      "optimize_witness",
      [](const std::string& kind, const Matrix& rho, int restarts, std::uint64_t seed,
         int threads, std::optional<double> alpha) {
        const DensityOperator state{ComplexOperator(rho)};
        const WitnessSpec spec = make_witness_spec(witness_kind_from_string(kind),
                                                   kind == "EN" ? state.n_qubits() : 3);
        const WitnessValue wv =
            optimize_witness(spec, state, scan_options(1e-4, restarts, seed, threads, {}), alpha);
        py::dict d;
        d["value"] = wv.value;
        d["detected"] = wv.detected;
        d["alpha"] = wv.config.alpha;
        d["config"] = json_to_py(direction_config_to_json(wv.config));
        return d;
      },
      py::arg("kind"), py::arg("rho"), py::arg("restarts") = 64, py::arg("seed") = 0,
      py::arg("threads") = 0, py::arg("alpha") = std::nullopt);
  m.def(
      "separable_minimum",
      [](const std::string& kind, double alpha, int restarts, std::uint64_t seed, int threads) {
        return separable_minimum(make_witness_spec(witness_kind_from_string(kind)), alpha,
                                 restarts, seed, threads);
      },
      py::arg("kind"), py::arg("alpha"), py::arg("restarts") = 64, py::arg("seed") = 0,
      py::arg("threads") = 0);

  // expansion
  m.def("gellmann_basis", [](int d) {
    std::vector<Matrix> out;
    for (const auto& g : gellmann_basis(d)) out.push_back(g.matrix());
    return out;
  });
  m.def(
      "expand_operator",
      [](const Matrix& O, double theta) {
        const ComplexOperator op(O);
        return json_to_py(expansion_to_json(expand_operator(op, theta), op));
      },
      py::arg("O"), py::arg("theta") = 1.5707963267948966,
      "nonnegative pseudoprojection expansion; includes the reconstruction error");

  // scans
  m.def(
      "threshold",
      [](const std::string& inequality, const Matrix& base, double p_tol, int restarts,
         std::uint64_t seed, int threads, std::optional<double> reference) {
        const NoisyFamily family{DensityOperator(ComplexOperator(base))};
        const ScanResult r =
            threshold(inequality_from_string(inequality), family,
                      scan_options(p_tol, restarts, seed, threads, reference));
        return json_to_py(scan_result_to_json(r));
      },
      py::arg("inequality"), py::arg("base"), py::arg("p_tol") = 1e-4, py::arg("restarts") = 64,
      py::arg("seed") = 0, py::arg("threads") = 0, py::arg("reference") = std::nullopt,
      "white-noise detection threshold via bisection with inner direction optimization");
  m.def(
      "scan_curve",
      [](const std::string& inequality, const Matrix& base, const std::vector<double>& grid,
         int restarts, std::uint64_t seed, int threads) {
        const NoisyFamily family{DensityOperator(ComplexOperator(base))};
        const auto curve = scan_curve(inequality_from_string(inequality), family, grid,
                                      scan_options(1e-4, restarts, seed, threads, {}));
        py::list out;
        for (const auto& pt : curve) {
          py::dict d;
          d["p"] = pt.p;
          d["value"] = pt.value;
          d["margin"] = pt.margin;
          out.append(d);
        }
        return out;
      },
      py::arg("inequality"), py::arg("base"), py::arg("p_grid"), py::arg("restarts") = 64,
      py::arg("seed") = 0, py::arg("threads") = 0);
  m.def(
      "ghz_reference_threshold",
      [](const std::string& inequality, int n) {
        return ghz_reference_threshold(inequality_from_string(inequality), n);
      },
      py::arg("inequality"), py::arg("n_qubits") = 3);
}
