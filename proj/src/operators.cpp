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

#include "atree/operators.hpp"

#include <cmath>

#include "atree/errors.hpp"

namespace atree {

DomainVerdict DomainVerdict::in(std::string evidence) {
  DomainVerdict v;
  v.status = Status::In;
  v.condition = std::move(evidence);
  return v;
}

DomainVerdict DomainVerdict::out(std::string condition, std::optional<VertexId> vertex, DivergenceCertificate cert) {
  DomainVerdict v;
  v.status = Status::Out;
  v.condition = std::move(condition);
  v.vertex = std::move(vertex);
  v.certificate = std::move(cert);
  return v;
}

DomainVerdict DomainVerdict::unknown(std::string condition, std::optional<VertexId> vertex, Inconclusive data) {
  DomainVerdict v;
  v.status = Status::Unknown;
  v.condition = std::move(condition);
  v.vertex = std::move(vertex);
  v.partial = data;
  return v;
}

std::string_view to_string(DomainVerdict::Status status) {
  switch (status) {
    case DomainVerdict::Status::In: return "In";
    case DomainVerdict::Status::Out: return "Out";
    case DomainVerdict::Status::Unknown: return "Unknown";
  }
  return "Unknown";
}

OutOfDomainError::OutOfDomainError(DomainVerdict verdict)
    : Error("vector is outside the domain: " + verdict.condition +
            (verdict.vertex ? " fails at " + to_string(*verdict.vertex) : std::string())),
      verdict_(std::move(verdict)) {}

namespace {

/// e-terms only; bundles are expanded (finite trees) or rejected.
StructuredVector e_only(const StructuredVector& f) { return f.has_bundles() ? f.expanded() : f; }

/// Bundles are kept when they belong to `w`, otherwise expanded.
StructuredVector in_basis_of(const WeightSystem& w, const StructuredVector& f) {
  if (f.has_bundles() && !f.bundle_basis()->same_as(w)) return f.expanded();
  return f;
}

double norm_on_support(const WeightSystem& w, const VertexId& u, const char* condition) {
  const auto s = node_norm(w, u);
  if (!s.is_finite()) throw OutOfDomainError(DomainVerdict::out(condition, u, s.certificate()));
  return s.value();
}

}  // namespace

StructuredVector apply_shift(const WeightSystem& w, const StructuredVector& f) {
  StructuredVector out;
  const auto g = e_only(f);
  for (const auto& [u, c] : g.e_terms()) {
    const double s = norm_on_support(w, u, "s(u) < inf on the support of f");
    if (s > 0) out.add_bundle(w, u, c * s);
  }
  return out;
}

StructuredVector apply_adjoint(const WeightSystem& w, const StructuredVector& f) {
  const auto g = in_basis_of(w, f);
  StructuredVector out;
  const auto& tree = w.tree();
  for (const auto& [v, c] : g.e_terms()) {
    if (const auto p = tree.parent(v)) out.add_e(*p, std::conj(w.weight(v)) * c);
  }
  for (const auto& [u, c] : g.bundle_terms()) out.add_e(u, finite_node_norm(w, u) * c);
  return out;
}

StructuredVector apply_modulus_power(const WeightSystem& w, double alpha, const StructuredVector& f) {
  if (!(alpha > 0)) throw ContractViolation("modulus power needs alpha > 0");
  StructuredVector out;
  const auto g = e_only(f);
  for (const auto& [v, c] : g.e_terms()) {
    const double s = norm_on_support(w, v, "s(u) < inf on the support of f");
    if (s > 0) out.add_e(v, std::pow(s, alpha) * c);
  }
  return out;
}

StructuredVector apply_adjoint_modulus_power(const WeightSystem& w, double alpha, const StructuredVector& f) {
  if (!(alpha > 0)) throw ContractViolation("modulus power needs alpha > 0");
  const auto g = in_basis_of(w, f);
  StructuredVector out;
  const auto& tree = w.tree();
  for (const auto& [v, c] : g.e_terms()) {
    const auto p = tree.parent(v);
    if (!p) continue;
    const double s = finite_node_norm(w, *p);
    if (s == 0) continue;
    out.add_bundle(w, *p, std::conj(w.weight(v)) * std::pow(s, alpha - 1) * c);
  }
  for (const auto& [u, c] : g.bundle_terms()) out.add_bundle(w, u, std::pow(finite_node_norm(w, u), alpha) * c);
  return out;
}

StructuredVector apply_partial_isometry(const WeightSystem& w, const StructuredVector& f) {
  StructuredVector out;
  const auto g = e_only(f);
  for (const auto& [u, c] : g.e_terms()) {
    if (finite_node_norm(w, u) > 0) out.add_bundle(w, u, c);
  }
  return out;
}

StructuredVector apply_partial_isometry_adjoint(const WeightSystem& w, const StructuredVector& f) {
  const auto g = in_basis_of(w, f);
  StructuredVector out;
  const auto& tree = w.tree();
  for (const auto& [v, c] : g.e_terms()) {
    const auto p = tree.parent(v);
    if (!p) continue;
    const double s = finite_node_norm(w, *p);
    if (s > 0) out.add_e(*p, std::conj(w.weight(v) / s) * c);
  }
  for (const auto& [u, c] : g.bundle_terms()) out.add_e(u, c);
  return out;
}

std::variant<StructuredVector, DomainVerdict> aluthge_basis_action(const WeightSystem& w, double t,
                                                                   const VertexId& u) {
  require_t(t);
  const auto s = node_norm(w, u);
  if (!s.is_finite()) {
    return DomainVerdict::out("e_u in D(|S|^{1-t})", u, s.certificate());
  }
  const auto mu = mu_weights(w, t);
  ExtendedNonneg aggregate = ExtendedNonneg::finite(0);
  try {
    aggregate = mu.aggregate(u);
  } catch (const InconclusiveSeries& e) {
    return DomainVerdict::unknown("sum_{v in Chi(u)} |mu_v|^2 < inf", u, e.data());
  }
  if (!aggregate.is_finite()) {
    return DomainVerdict::out("sum_{v in Chi(u)} |mu_v|^2 < inf", u, aggregate.certificate());
  }
  StructuredVector out;
  const double smu = std::sqrt(aggregate.value());
  if (smu > 0) out.add_bundle(mu, u, smu);
  return out;
}

StructuredVector adjoint_aluthge_basis_action(const WeightSystem& w, double t, const VertexId& v) {
  require_t(t);
  const auto& tree = w.tree();
  const auto p = tree.parent(v);
  if (!p) return {};
  const auto pp = tree.parent(*p);
  if (!pp) return {};
  const double spp = finite_node_norm(w, *pp);
  if (spp == 0) return {};
  const double sp = finite_node_norm(w, *p);
  const Complex lambda_p = w.weight(*p);
  const Complex pi_p = lambda_p / spp;
  const Complex mu_p = std::pow(sp / spp, t) * lambda_p;
  if (mu_p == Complex{}) {
    throw SingularityError("mu vanishes at " + to_string(*p) + " while " + to_string(v) +
                           " lies in Chi^2(V+); the transform formula is 0/0 there");
  }
  const Complex coefficient = std::conj(w.weight(v)) * std::norm(pi_p) / mu_p;
  StructuredVector out;
  out.add_bundle(w, *pp, coefficient * spp);
  return out;
}

DomainVerdict domain_check(const WeightSystem& w, const DomainQuery& which, const StructuredVector& f) {
  const auto g = e_only(f);
  if (std::holds_alternative<AdjointOp>(which)) {
    return DomainVerdict::in("finitely supported vectors lie in D(S*)");
  }
  const auto check_norms = [&](const char* condition) -> std::optional<DomainVerdict> {
    for (const auto& [u, c] : g.e_terms()) {
      try {
        const auto s = node_norm(w, u);
        if (!s.is_finite()) return DomainVerdict::out(condition, u, s.certificate());
      } catch (const InconclusiveSeries& e) {
        return DomainVerdict::unknown(condition, u, e.data());
      }
    }
    return std::nullopt;
  };

  if (std::holds_alternative<ShiftOp>(which)) {
    if (auto v = check_norms("sum_{v in Chi(u)} |lambda_v|^2 < inf")) return *v;
    return DomainVerdict::in("s(u) < inf on the support");
  }
  if (const auto* m = std::get_if<ModulusPowerOp>(&which)) {
    if (!(m->alpha > 0)) throw ContractViolation("modulus power needs alpha > 0");
    if (auto v = check_norms("s(u)^{2 alpha} < inf")) return *v;
    return DomainVerdict::in("s(u) < inf on the support");
  }
  const double t = std::get<AluthgeOp>(which).t;
  require_t(t);
  if (auto v = check_norms("e_u in D(|S|^{1-t})")) return *v;
  const auto mu = mu_weights(w, t);
  for (const auto& [u, c] : g.e_terms()) {
    try {
      const auto a = mu.aggregate(u);
      if (!a.is_finite()) return DomainVerdict::out("sum_{v in Chi(u)} |mu_v|^2 < inf", u, a.certificate());
    } catch (const InconclusiveSeries& e) {
      return DomainVerdict::unknown("sum_{v in Chi(u)} |mu_v|^2 < inf", u, e.data());
    }
  }
  return DomainVerdict::in("mu-aggregates and s(u) finite on the support");
}

StructuredVector truncate(const std::vector<std::pair<VertexId, Complex>>& enumeration, std::size_t n) {
  StructuredVector out;
  for (std::size_t j = 0; j < n && j < enumeration.size(); ++j) {
    out.add_e(enumeration[j].first, enumeration[j].second);
  }
  return out;
}

}  // namespace atree
