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

#include "atree/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "atree/errors.hpp"

namespace atree {

namespace {

std::optional<VertexId> default_anchor(const DirectedTree& tree) {
  if (auto r = tree.root()) return r;
  switch (tree.family()) {
    case TreeKind::PaperTree: return VertexId{PaperVertex{}};
    case TreeKind::IntPath: return VertexId{std::int64_t{0}};
    default: return std::nullopt;
  }
}

bool has_paper_closed_form(const WeightSystem& w) {
  return w.kind() == WeightKind::PaperLambda && w.closed_form_family().has_value();
}

}  // namespace

std::vector<VertexId> sample_vertices(const DirectedTree& tree, const SampleSpec& spec) {
  if (tree.is_finite()) return tree.vertices();
  const auto anchor = spec.anchor ? spec.anchor : default_anchor(tree);
  if (!anchor) throw ContractViolation("sampling a rootless lazy tree needs an anchor vertex");
  auto out = breadth_first(tree, *anchor, spec.depth, spec.digit_bound + 1);

  std::optional<VertexId> up = tree.parent(*anchor);
  for (std::size_t i = 0; i < spec.depth && up; ++i) {
    out.push_back(*up);
    up = tree.parent(*up);
  }

  std::mt19937_64 rng(spec.seed);
  const std::uint64_t span = 2 * spec.depth + 1;
  const std::uint64_t digits = 2 * spec.digit_bound + 1;
  for (std::size_t r = 0; r < spec.random_count; ++r) {
    VertexId v = *anchor;
    for (auto steps = rng() % span; steps > 0; --steps) {
      auto p = tree.parent(v);
      if (!p) break;
      v = std::move(*p);
    }
    for (auto steps = rng() % span; steps > 0; --steps) {
      const auto n = tree.child_count(v);
      if (n && *n == 0) break;
      auto i = static_cast<std::size_t>(rng() % digits);
      if (n) i %= *n;
      v = tree.child(v, i);
    }
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(DensityVerdict v) {
  switch (v) {
    case DensityVerdict::DenselyDefined: return "DenselyDefined";
    case DensityVerdict::DenselyDefinedOnSample: return "DenselyDefinedOnSample";
    case DensityVerdict::CounterexampleVertex: return "CounterexampleVertex";
    case DensityVerdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

DensityReport check_densely_defined(const WeightSystem& w, const std::vector<VertexId>& sample) {
  DensityReport report;
  if (has_paper_closed_form(w)) {
    // Every aggregate is 2^{2 sigma(u)} gamma^2 < inf.
    report.verdict = DensityVerdict::DenselyDefined;
    report.family_level = true;
    return report;
  }
  const bool exhaustive = w.tree().is_finite();
  const auto vertices = exhaustive ? w.tree().vertices() : sample;
  for (const auto& u : vertices) {
    ++report.checked;
    try {
      const auto a = w.aggregate(u);
      if (!a.is_finite()) {
        report.verdict = DensityVerdict::CounterexampleVertex;
        report.counterexample = u;
        report.certificate = a.certificate();
        return report;
      }
    } catch (const InconclusiveSeries&) {
      report.inconclusive.push_back(u);
    }
  }
  if (!report.inconclusive.empty()) {
    report.verdict = DensityVerdict::Unknown;
  } else if (exhaustive) {
    report.verdict = DensityVerdict::DenselyDefined;
    report.family_level = true;
  } else {
    report.verdict = DensityVerdict::DenselyDefinedOnSample;
  }
  return report;
}

// ---------------------------------------------------------------------------

std::string_view to_string(HyponormalVerdict v) {
  switch (v) {
    case HyponormalVerdict::Hyponormal: return "Hyponormal";
    case HyponormalVerdict::NotHyponormal: return "NotHyponormal";
    case HyponormalVerdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

constexpr double kMarginSlack = 1e-12;

VertexMargin finite_margin(const WeightSystem& w, const VertexId& u, std::size_t n, std::optional<VertexId>& bad_child) {
  VertexMargin m;
  CompensatedSum sum;
  const auto& tree = w.tree();
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = tree.child(u, i);
    const Complex lambda = w.weight(v);
    const double s = finite_node_norm(w, v);
    ++m.children_checked;
    if (s == 0) {
      if (lambda != Complex{} && m.zero_norm_condition) {
        m.zero_norm_condition = false;
        bad_child = v;
      }
      continue;
    }
    sum.add(std::norm(lambda) / (s * s));
  }
  m.series = Converges{sum.value(), 0.0};
  m.upper_bound = sum.value() * (1 + 1e-15 * static_cast<double>(n + 1));
  return m;
}

VertexMargin lazy_margin(const WeightSystem& w, const VertexId& u, std::optional<VertexId>& bad_child) {
  VertexMargin m;
  const auto& tree = w.tree();
  const auto term = [&](std::size_t i) {
    const auto v = tree.child(u, i);
    const Complex lambda = w.weight(v);
    const double s = finite_node_norm(w, v);
    m.children_checked = std::max(m.children_checked, i + 1);
    if (s == 0) {
      if (lambda != Complex{} && m.zero_norm_condition) {
        m.zero_norm_condition = false;
        bad_child = v;
      }
      return 0.0;
    }
    return std::norm(lambda) / (s * s);
  };
  m.series = sum_series(TermSource{term, std::nullopt}, SeriesPolicy{});
  if (const auto* c = std::get_if<Converges>(&m.series)) m.upper_bound = c->value + c->tail_bound;
  return m;
}

}  // namespace

HyponormalityReport check_hyponormal(const WeightSystem& w, const std::vector<VertexId>& sample) {
  HyponormalityReport report;
  if (has_paper_closed_form(w)) {
    // s(v) = 2^{sigma(v)} gamma > 0 everywhere, and the margin does not depend on u.
    const auto margin = paper_hyponormality_margin();
    report.family_margin = margin;
    report.family_level = true;
    for (const auto& u : sample) {
      VertexMargin m;
      m.series = Converges{margin.value, margin.upper_bound - margin.value};
      m.upper_bound = margin.upper_bound;
      report.margins.emplace(u, m);
    }
    report.verdict = margin.upper_bound < 1 ? HyponormalVerdict::Hyponormal : HyponormalVerdict::Unknown;
    return report;
  }

  const auto& tree = w.tree();
  const bool exhaustive = tree.is_finite();
  const auto vertices = exhaustive ? tree.vertices() : sample;
  bool unknown = false;
  for (const auto& u : vertices) {
    std::optional<VertexId> bad_child;
    VertexMargin m;
    try {
      const auto n = tree.child_count(u);
      m = n ? finite_margin(w, u, *n, bad_child) : lazy_margin(w, u, bad_child);
    } catch (const EvaluationError&) {
      // Some child has an infinite node norm: outside the densely defined setting.
      unknown = true;
      continue;
    } catch (const InconclusiveSeries&) {
      unknown = true;
      continue;
    }
    const auto [it, _] = report.margins.emplace(u, std::move(m));
    const auto& margin = it->second;
    if (!margin.zero_norm_condition) {
      report.verdict = HyponormalVerdict::NotHyponormal;
      report.witness = bad_child;
      report.violated_condition = "zero-norm";
      return report;
    }
    const bool diverges = std::holds_alternative<Diverges>(margin.series);
    const auto* conv = std::get_if<Converges>(&margin.series);
    if (diverges || (conv && conv->value > 1 + kMarginSlack)) {
      report.verdict = HyponormalVerdict::NotHyponormal;
      report.witness = u;
      report.violated_condition = "margin";
      return report;
    }
    if (!conv || *margin.upper_bound > 1 + kMarginSlack) unknown = true;
  }
  report.verdict = unknown ? HyponormalVerdict::Unknown : HyponormalVerdict::Hyponormal;
  report.family_level = exhaustive && !unknown;
  return report;
}

// ---------------------------------------------------------------------------

std::string_view to_string(TrivialityStatus s) {
  switch (s) {
    case TrivialityStatus::Certified: return "Certified";
    case TrivialityStatus::Refuted: return "Refuted";
    case TrivialityStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

TrivialityCertificate certify_trivial_aluthge_domain(const WeightSystem& w, double t,
                                                     const std::vector<VertexId>& sample) {
  require_t(t);
  TrivialityCertificate cert;
  cert.t = t;
  const auto mu = mu_weights(w, t);
  const bool closed_form = has_paper_closed_form(w) && mu.closed_form_family().has_value();
  for (const auto& u : sample) {
    const auto verdict = domain_check(w, AluthgeOp{t}, StructuredVector::basis(u));
    switch (verdict.status) {
      case DomainVerdict::Status::Out:
        cert.per_vertex.emplace_back(u, *verdict.certificate);
        break;
      case DomainVerdict::Status::In:
        cert.status = TrivialityStatus::Refuted;
        cert.refuting_vertex = u;
        return cert;
      case DomainVerdict::Status::Unknown:
        cert.inconclusive.push_back(u);
        break;
    }
  }
  const bool all_analytic = std::all_of(cert.per_vertex.begin(), cert.per_vertex.end(),
                                        [](const auto& p) { return is_analytic(p.second); });
  if (cert.inconclusive.empty() && all_analytic) {
    cert.status = TrivialityStatus::Certified;
    cert.family_level = closed_form;
  }
  return cert;
}

// ---------------------------------------------------------------------------

NonClosabilityWitness nonclosability_witness(const WeightSystem& w, double t, const StructuredVector& f,
                                             std::size_t K, double threshold) {
  if (w.kind() != WeightKind::PaperLambda) {
    throw ContractViolation("the non-closability witness is defined for the sequence-tree weights");
  }
  if (!(t > 0 && t < 1)) {
    throw ContractViolation("the non-closability witness needs t in (0,1), got " + std::to_string(t));
  }
  const auto adjoint = apply_adjoint(w, f);
  const auto& e = adjoint.e_terms();
  const auto base = std::find_if(e.begin(), e.end(), [](const auto& p) { return p.second != Complex{}; });
  if (base == e.end()) throw NoWitnessError("S* f = 0: f lies in the kernel of the adjoint");

  NonClosabilityWitness witness{f, t, base->first, base->second, {}, {}, {}, paper_mu_divergence(1 - t), threshold,
                                std::nullopt};
  const auto& tree = w.tree();
  CompensatedSum partial;
  for (std::size_t k = 0; k <= K; ++k) {
    auto probe = tree.child(tree.child(witness.base_vertex, k), 0);
    const auto image = adjoint_aluthge_basis_action(w, t, probe);
    const double term = std::norm(inner(f, image));
    partial.add(term);
    witness.probes.push_back(std::move(probe));
    witness.terms.push_back(term);
    witness.partial_sums.push_back(partial.value());
    if (!witness.threshold_index && partial.value() > threshold) witness.threshold_index = k;
  }
  return witness;
}

// ---------------------------------------------------------------------------

BranchingReport branching_necessity_check(const WeightSystem& w, double t, const std::vector<VertexId>& sample) {
  require_t(t);
  BranchingReport report;
  report.t = t;
  const auto& tree = w.tree();
  for (const auto& u : sample) {
    if (tree.parent(u) && w.weight(u) == Complex{}) {
      throw ContractViolation("branching check needs nonzero weights; w at " + to_string(u) + " is 0");
    }
    const auto n = tree.child_count(u);
    if (!n) {
      ++report.skipped_infinite;
      continue;
    }
    for (std::size_t i = 0; i < *n; ++i) {
      if (w.weight(tree.child(u, i)) == Complex{}) {
        throw ContractViolation("branching check needs nonzero weights; a child of " + to_string(u) + " has 0");
      }
    }
    ++report.checked;
    const auto verdict = domain_check(w, AluthgeOp{t}, StructuredVector::basis(u));
    if (verdict.status != DomainVerdict::Status::In) report.violations.push_back(u);
  }
  report.vacuous = report.checked == 0;
  if (report.vacuous) {
    report.note = "no sampled vertex has finitely many children; the condition holds vacuously";
  }
  return report;
}

}  // namespace atree
