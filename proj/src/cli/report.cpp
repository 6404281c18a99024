// Copyright 2026 The atree Authors.
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

#include "atree/cli/report.hpp"

namespace atree::cli {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Json optional_vertex(const std::optional<VertexId>& v, const TreeSpec& spec) {
  return v ? Json(spec.display(*v)) : Json(nullptr);
}

}  // namespace

Json report_header(std::string_view command, Json inputs) {
  Json out;
  out["tool"] = {{"name", "atree"}, {"version", kToolVersion}};
  out["command"] = command;
  out["inputs"] = std::move(inputs);
  return out;
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const DivergenceCertificate& cert) {
  Json out;
  out["kind"] = kind_name(cert);
  out["analytic"] = is_analytic(cert);
  std::visit(overloaded{
                 [&](const TermsDoNotVanish& c) {
                   out["from_index"] = c.from_index;
                   out["lower_bound"] = c.lower_bound;
                 },
                 [&](const EventuallyIncreasing& c) {
                   out["from_index"] = c.from_index;
                   out["ratio"] = c.ratio;
                 },
                 [&](const PartialSumExceeds& c) {
                   out["threshold"] = c.threshold;
                   out["index"] = c.index;
                 },
             },
             cert);
  return out;
}

Json to_json(const SeriesVerdict& verdict) {
  return std::visit(overloaded{
                        [](const Converges& c) {
                          return Json{{"kind", "Converges"}, {"value", c.value}, {"tail_bound", c.tail_bound}};
                        },
                        [](const Diverges& d) {
                          return Json{{"kind", "Diverges"}, {"certificate", to_json(d.certificate)}};
                        },
                        [](const Inconclusive& i) {
                          return Json{{"kind", "Inconclusive"},
                                      {"partial_sum", i.partial_sum},
                                      {"terms_evaluated", i.terms_evaluated}};
                        },
                    },
                    verdict);
}

Json to_json(const DomainVerdict& verdict, const TreeSpec& spec) {
  Json out;
  out["status"] = to_string(verdict.status);
  out["condition"] = verdict.condition;
  out["vertex"] = optional_vertex(verdict.vertex, spec);
  if (verdict.certificate) out["certificate"] = to_json(*verdict.certificate);
  if (verdict.partial) {
    out["partial"] = {{"partial_sum", verdict.partial->partial_sum},
                      {"terms_evaluated", verdict.partial->terms_evaluated}};
  }
  return out;
}

Json to_json(const DensityReport& r, const TreeSpec& spec) {
  Json out;
  out["verdict"] = to_string(r.verdict);
  out["family_level"] = r.family_level;
  out["checked"] = r.checked;
  out["counterexample"] = optional_vertex(r.counterexample, spec);
  out["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  Json inconclusive = Json::array();
  for (const auto& v : r.inconclusive) inconclusive.push_back(spec.display(v));
  out["inconclusive"] = std::move(inconclusive);
  return out;
}

Json to_json(const HyponormalityReport& r, const TreeSpec& spec) {
  Json out;
  out["verdict"] = to_string(r.verdict);
  out["family_level"] = r.family_level;
  out["witness"] = optional_vertex(r.witness, spec);
  out["violated_condition"] = r.violated_condition.empty() ? Json(nullptr) : Json(r.violated_condition);
  if (r.family_margin) {
    out["family_margin"] = {{"kind", "ClosedFormWithGeometricTail"},
                            {"value", r.family_margin->value},
                            {"upper_bound", r.family_margin->upper_bound},
                            {"terms", r.family_margin->terms}};
  } else {
    out["family_margin"] = nullptr;
  }
  Json margins = Json::array();
  for (const auto& [u, m] : r.margins) {
    margins.push_back({{"vertex", spec.display(u)},
                       {"series", to_json(m.series)},
                       {"upper_bound", m.upper_bound ? Json(*m.upper_bound) : Json(nullptr)},
                       {"zero_norm_condition", m.zero_norm_condition},
                       {"children_checked", m.children_checked}});
  }
  out["margins"] = std::move(margins);
  return out;
}

Json to_json(const TrivialityCertificate& c, const TreeSpec& spec) {
  Json out;
  out["status"] = to_string(c.status);
  out["t"] = c.t;
  out["family_level"] = c.family_level;
  out["refuting_vertex"] = optional_vertex(c.refuting_vertex, spec);
  Json rows = Json::array();
  for (const auto& [u, cert] : c.per_vertex) rows.push_back({{"vertex", spec.display(u)}, {"certificate", to_json(cert)}});
  out["per_vertex"] = std::move(rows);
  Json inconclusive = Json::array();
  for (const auto& v : c.inconclusive) inconclusive.push_back(spec.display(v));
  out["inconclusive"] = std::move(inconclusive);
  return out;
}

Json to_json(const BranchingReport& r, const TreeSpec& spec) {
  Json out;
  out["t"] = r.t;
  out["checked"] = r.checked;
  out["skipped_infinite"] = r.skipped_infinite;
  out["vacuous"] = r.vacuous;
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back(spec.display(v));
  out["violations"] = std::move(violations);
  out["note"] = r.note.empty() ? Json(nullptr) : Json(r.note);
  return out;
}

Json to_json(const NonClosabilityWitness& w, const TreeSpec& spec) {
  Json out;
  out["t"] = w.t;
  out["base_vertex"] = spec.display(w.base_vertex);
  out["adjoint_value"] = to_json(w.adjoint_value);
  out["growth"] = to_json(DivergenceCertificate{w.growth});
  out["threshold"] = w.threshold;
  out["threshold_index"] = w.threshold_index ? Json(*w.threshold_index) : Json(nullptr);
  Json rows = Json::array();
  for (std::size_t k = 0; k < w.terms.size(); ++k) {
    rows.push_back({{"k", k}, {"probe", spec.display(w.probes[k])}, {"term", w.terms[k]}, {"partial_sum", w.partial_sums[k]}});
  }
  out["terms"] = std::move(rows);
  return out;
}

Json to_json(const dense::ComparisonReport& r) {
  return Json{{"aluthge", r.aluthge},
              {"adjoint_modulus", r.adjoint_modulus},
              {"polar_factor", r.polar_factor},
              {"adjoint_aluthge", r.adjoint_aluthge},
              {"adjoint_aluthge_skipped", r.adjoint_aluthge_skipped},
              {"polar_residual", r.polar_residual},
              {"modulus_residual", r.modulus_residual},
              {"max_discrepancy", r.max_discrepancy()},
              {"hyponormal_formula", r.hyponormal_formula},
              {"hyponormal_matrix", r.hyponormal_matrix},
              {"commutator_min_eig", r.commutator_min_eig}};
}

}  // namespace atree::cli
