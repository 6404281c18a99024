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

#include "atree/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "CLI11.hpp"

#include "atree/cli/report.hpp"
#include "atree/corpus.hpp"

namespace atree::cli {

namespace {

struct SampleFlags {
  std::size_t depth = 3;
  std::size_t digits = 4;
  std::size_t random = 16;
  std::uint64_t seed = 1;

  SampleSpec spec() const { return SampleSpec{depth, digits, random, seed, std::nullopt}; }
  Json echo() const { return {{"depth", depth}, {"digits", digits}, {"random", random}, {"sample_seed", seed}}; }
};

void add_sample_flags(CLI::App* cmd, SampleFlags& s) {
  cmd->add_option("--depth", s.depth, "Generations below the anchor in the frontier sweep")->capture_default_str();
  cmd->add_option("--digits", s.digits, "Largest child index in the frontier sweep")->capture_default_str();
  cmd->add_option("--random", s.random, "Number of seeded random walks")->capture_default_str();
  cmd->add_option("--sample-seed", s.seed, "Seed for the random walks")->capture_default_str();
}

std::string format_double(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

void check_t(double t, bool open_at_one) {
  const bool ok = open_at_one ? (t > 0 && t < 1) : (t > 0 && t <= 1);
  if (!ok) {
    throw ContractViolation(std::string("--t must lie in ") + (open_at_one ? "(0,1)" : "(0,1]") + ", got " +
                            format_double(t));
  }
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string file;
  double t = 0;
  SampleFlags sample;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  check_t(a.t, false);
  const auto spec = load_tree_spec(a.file);
  const auto& w = spec.weights;
  const auto sample = sample_vertices(w.tree(), a.sample.spec());

  auto report = report_header("analyze", {{"file", a.file}, {"tree", spec.echo}, {"t", a.t}, {"sample", a.sample.echo()}});
  report["sample_size"] = sample.size();

  const auto density = check_densely_defined(w, sample);
  report["densely_defined"] = to_json(density, spec);
  const auto hypo = check_hyponormal(w, sample);
  report["hyponormality"] = to_json(hypo, spec);

  const auto triviality = certify_trivial_aluthge_domain(w, a.t, sample);
  std::size_t in_domain = 0;
  Json basis = Json::array();
  for (const auto& u : sample) {
    const auto v = domain_check(w, AluthgeOp{a.t}, StructuredVector::basis(u));
    if (v.status == DomainVerdict::Status::In) ++in_domain;
    auto row = to_json(v, spec);
    row["basis_vertex"] = spec.display(u);
    basis.push_back(std::move(row));
  }
  std::string summary = "unknown";
  if (triviality.status == TrivialityStatus::Certified) {
    summary = "trivial";
  } else if (in_domain == sample.size()) {
    summary = "all_sampled_basis_vectors";
  } else if (in_domain > 0) {
    summary = "partial";
  }
  report["aluthge_domain"] = {{"summary", summary},
                              {"basis_vectors_in_domain", in_domain},
                              {"triviality", to_json(triviality, spec)},
                              {"basis", std::move(basis)}};

  int code = kOk;
  try {
    const auto branching = branching_necessity_check(w, a.t, sample);
    report["branching"] = to_json(branching, spec);
    if (!branching.violations.empty()) code = kVerdictFailure;
  } catch (const ContractViolation& e) {
    report["branching"] = {{"not_applicable", e.what()}};
  }

  out << report.dump(2) << '\n';
  err << "densely defined: " << to_string(density.verdict) << (density.family_level ? " (family level)" : "") << '\n'
      << "hyponormal: " << to_string(hypo.verdict);
  if (hypo.family_margin) err << " (margin " << format_double(hypo.family_margin->value) << ")";
  err << '\n' << "Aluthge domain (t=" << a.t << "): " << summary << ", " << in_domain << "/" << sample.size()
      << " sampled basis vectors inside\n";
  return code;
}

// --- aluthge-weights --------------------------------------------------------

struct WeightsArgs {
  std::string file;
  double t = 0;
  std::vector<std::string> vertices;
  SampleFlags sample;
};

int cmd_aluthge_weights(const WeightsArgs& a, std::ostream& out, std::ostream& err) {
  check_t(a.t, false);
  const auto spec = load_tree_spec(a.file);
  const auto& w = spec.weights;
  std::vector<VertexId> selected;
  for (const auto& text : a.vertices) selected.push_back(spec.parse_vertex(text));
  if (selected.empty()) selected = sample_vertices(w.tree(), a.sample.spec());

  const auto pi = pi_weights(w);
  const auto mu = mu_weights(w, a.t);
  Json rows = Json::array();
  for (const auto& v : selected) {
    Json row;
    row["vertex"] = spec.display(v);
    const auto p = w.tree().parent(v);
    row["parent"] = p ? Json(spec.display(*p)) : Json(nullptr);
    row["node_norm"] = finite_node_norm(w, v);
    if (p) {
      row["parent_norm"] = finite_node_norm(w, *p);
      row["lambda"] = to_json(w.weight(v));
      row["pi"] = to_json(pi.weight(v));
      row["mu"] = to_json(mu.weight(v));
    } else {
      row["parent_norm"] = nullptr;
      row["lambda"] = row["pi"] = row["mu"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  Json vertices = Json::array();
  for (const auto& v : a.vertices) vertices.push_back(v);
  auto report = report_header(
      "aluthge-weights",
      {{"file", a.file}, {"tree", spec.echo}, {"t", a.t}, {"vertices", std::move(vertices)}, {"sample", a.sample.echo()}});
  report["weights"] = std::move(rows);
  out << report.dump(2) << '\n';
  err << "mu and pi weights at " << selected.size() << " vertices (t=" << a.t << ")\n";
  return kOk;
}

// --- oracle -----------------------------------------------------------------

struct OracleArgs {
  std::string file;
  std::size_t random = 0;
  std::size_t violating = 0;
  std::uint64_t seed = 42;
  std::vector<double> ts{0.1, 0.5, 0.9, 1.0};
  double tolerance = 1e-8;
};

int cmd_oracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
  for (const double t : a.ts) check_t(t, false);
  if (a.file.empty() == (a.random == 0 && a.violating == 0)) {
    throw CLI::ValidationError("oracle", "give either a tree file or --random/--violating");
  }
  struct Item {
    std::string name;
    WeightSystem weights;
    std::optional<TreeSpec> spec;
  };
  std::vector<Item> items;
  Json inputs{{"t", a.ts}, {"tolerance", a.tolerance}};
  if (!a.file.empty()) {
    auto spec = load_tree_spec(a.file);
    if (!spec.weights.tree().is_finite()) throw UnsupportedRepresentation("oracle requires finite tree");
    inputs["file"] = a.file;
    inputs["tree"] = spec.echo;
    items.push_back({a.file, spec.weights, std::move(spec)});
  } else {
    inputs["random"] = a.random;
    inputs["violating"] = a.violating;
    inputs["seed"] = a.seed;
    for (auto& inst : random_corpus(a.random, a.seed)) items.push_back({inst.name, inst.weights, std::nullopt});
    for (auto& inst : violating_corpus(a.violating, a.seed + a.random)) {
      items.push_back({inst.name, inst.weights, std::nullopt});
    }
  }

  double worst = 0;
  std::size_t disagreements = 0;
  std::size_t over = 0;
  Json rows = Json::array();
  for (const auto& item : items) {
    for (const double t : a.ts) {
      const auto r = dense::compare_with_formula(item.weights, t);
      worst = std::max(worst, r.max_discrepancy());
      if (r.max_discrepancy() > a.tolerance) ++over;
      if (!r.hyponormal_agree()) ++disagreements;
      auto row = to_json(r);
      row["instance"] = item.name;
      row["vertices"] = item.weights.tree().vertices().size();
      row["t"] = t;
      rows.push_back(std::move(row));
    }
  }
  auto report = report_header("oracle", std::move(inputs));
  report["summary"] = {{"comparisons", rows.size()},
                       {"max_discrepancy", worst},
                       {"over_tolerance", over},
                       {"hyponormal_disagreements", disagreements}};
  report["comparisons"] = std::move(rows);
  out << report.dump(2) << '\n';
  err << "oracle: " << items.size() << " trees x " << a.ts.size() << " exponents, max discrepancy "
      << format_double(worst) << ", " << over << " over tolerance, " << disagreements << " hyponormality disagreements\n";
  return over == 0 && disagreements == 0 ? kOk : kVerdictFailure;
}

// --- witness ----------------------------------------------------------------

struct WitnessArgs {
  double t = 0;
  std::string vertex = "1:1";
  std::size_t K = 40;
  double threshold = 1e6;
};

int cmd_witness(const WitnessArgs& a, std::ostream& out, std::ostream& err) {
  check_t(a.t, true);
  const TreeSpec spec{WeightSystem::paper_lambda(paper_tree()), {}, Json{{"family", "paper"}}};
  const auto f = StructuredVector::basis(spec.parse_vertex(a.vertex));
  const auto witness = nonclosability_witness(spec.weights, a.t, f, a.K, a.threshold);
  auto report = report_header(
      "witness", {{"tree", spec.echo}, {"t", a.t}, {"vertex", a.vertex}, {"K", a.K}, {"threshold", a.threshold}});
  report["witness"] = to_json(witness, spec);
  out << report.dump(2) << '\n';
  err << "witness: p_" << a.K << " = " << format_double(witness.partial_sums.back());
  if (witness.threshold_index) {
    err << ", first exceeds " << format_double(a.threshold) << " at K = " << *witness.threshold_index;
  } else {
    err << ", threshold " << format_double(a.threshold) << " not reached";
  }
  err << "; growth ratio " << format_double(witness.growth.ratio) << " from k = " << witness.growth.from_index << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted shifts on directed trees: domains, Aluthge transforms and certificates", "atree"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  AnalyzeArgs analyze;
  auto* c_analyze = app.add_subcommand("analyze", "Density, hyponormality and Aluthge-domain verdicts");
  c_analyze->add_option("file", analyze.file, "Tree file")->required();
  c_analyze->add_option("--t", analyze.t, "Aluthge exponent in (0,1]")->required();
  add_sample_flags(c_analyze, analyze.sample);

  WeightsArgs weights;
  auto* c_weights = app.add_subcommand("aluthge-weights", "Table of lambda, pi and mu weights");
  c_weights->add_option("file", weights.file, "Tree file")->required();
  c_weights->add_option("--t", weights.t, "Aluthge exponent in (0,1]")->required();
  c_weights->add_option("--vertex", weights.vertices, "Vertex to report (repeatable); default is the sample");
  add_sample_flags(c_weights, weights.sample);

  OracleArgs oracle;
  auto* c_oracle = app.add_subcommand("oracle", "Compare the weight formulas with dense matrix computations");
  c_oracle->add_option("file", oracle.file, "Finite tree file");
  c_oracle->add_option("--random", oracle.random, "Number of seeded random trees");
  c_oracle->add_option("--violating", oracle.violating, "Number of seeded trees with a weighted leaf edge");
  c_oracle->add_option("--seed", oracle.seed, "Corpus seed")->capture_default_str();
  c_oracle->add_option("--t", oracle.ts, "Comma-separated exponents")->delimiter(',')->capture_default_str();
  c_oracle->add_option("--tolerance", oracle.tolerance, "Largest accepted discrepancy")->capture_default_str();

  WitnessArgs witness;
  auto* c_witness = app.add_subcommand("witness", "Partial sums showing the transform of the adjoint is not closable");
  c_witness->add_option("--t", witness.t, "Exponent in (0,1)")->required();
  c_witness->add_option("--vertex", witness.vertex, "f = e_v for this sequence-tree vertex")->capture_default_str();
  c_witness->add_option("--K", witness.K, "Last probe index")->capture_default_str();
  c_witness->add_option("--threshold", witness.threshold, "Partial-sum threshold")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream usage_out;
    std::ostringstream usage_err;
    const int code = app.exit(e, usage_out, usage_err);
    out << usage_out.str();
    err << usage_err.str();
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*c_analyze) return cmd_analyze(analyze, out, err);
    if (*c_weights) return cmd_aluthge_weights(weights, out, err);
    if (*c_oracle) return cmd_oracle(oracle, out, err);
    return cmd_witness(witness, out, err);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedRepresentation& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NoWitnessError& e) {
    err << "error: " << e.what() << '\n';
    return kVerdictFailure;
  } catch (const Error& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace atree::cli
