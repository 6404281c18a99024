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

#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "atree/structured_vector.hpp"

namespace atree {

/// Membership of a vector in an operator domain, with the evidence behind it.
struct DomainVerdict {
  enum class Status { In, Out, Unknown };

  Status status = Status::In;
  /// Which membership condition was examined or failed.
  std::string condition;
  /// Vertex whose series decided the verdict, when there is one.
  std::optional<VertexId> vertex;
  /// Out only: the divergent series behind the verdict.
  std::optional<DivergenceCertificate> certificate;
  /// Unknown only: what the series evaluation saw.
  std::optional<Inconclusive> partial;

  static DomainVerdict in(std::string evidence);
  static DomainVerdict out(std::string condition, std::optional<VertexId> vertex, DivergenceCertificate cert);
  static DomainVerdict unknown(std::string condition, std::optional<VertexId> vertex, Inconclusive data);
};

std::string_view to_string(DomainVerdict::Status status);

/// f is outside the operator's domain; carries the verdict with its certificate.
class OutOfDomainError : public Error {
 public:
  explicit OutOfDomainError(DomainVerdict verdict);
  const DomainVerdict& verdict() const { return verdict_; }

 private:
  DomainVerdict verdict_;
};

/// S f = sum_u f(u) s(u) b_u for finitely supported f (bundles are expanded
/// first on finite trees).
StructuredVector apply_shift(const WeightSystem& w, const StructuredVector& f);

/// S* e_v = conj(w_v) e_{par v} (0 at the root) and S* b_u = s(u) e_u.
StructuredVector apply_adjoint(const WeightSystem& w, const StructuredVector& f);

/// |S|^alpha e_v = s(v)^alpha e_v.
StructuredVector apply_modulus_power(const WeightSystem& w, double alpha, const StructuredVector& f);

/// |S*|^alpha e_v = conj(w_v) s(par v)^{alpha-1} b_{par v}, |S*|^alpha b_u = s(u)^alpha b_u.
StructuredVector apply_adjoint_modulus_power(const WeightSystem& w, double alpha, const StructuredVector& f);

/// U = S_pi: U e_u = b_u on V+, 0 elsewhere.
StructuredVector apply_partial_isometry(const WeightSystem& w, const StructuredVector& f);
/// U* e_v = conj(pi_v) e_{par v}, U* b_u = e_u.
StructuredVector apply_partial_isometry_adjoint(const WeightSystem& w, const StructuredVector& f);

/// Delta_t(S) e_u = s_mu(u) b_u^(mu), or an Out/Unknown verdict when the
/// mu-aggregate at u diverges or cannot be decided.
std::variant<StructuredVector, DomainVerdict> aluthge_basis_action(const WeightSystem& w, double t,
                                                                   const VertexId& u);

/// Delta_t(S*) e_v = conj(w_v) |pi_{par v}|^2 / mu_{par v} S e_{par^2 v} on
/// Chi^2(V+), 0 elsewhere. Throws SingularityError when mu_{par v} = 0 there.
StructuredVector adjoint_aluthge_basis_action(const WeightSystem& w, double t, const VertexId& v);

/// Operator whose domain is being tested.
struct ShiftOp {};
struct AdjointOp {};
struct ModulusPowerOp {
  double alpha;
};
struct AluthgeOp {
  double t;
};
using DomainQuery = std::variant<ShiftOp, AdjointOp, ModulusPowerOp, AluthgeOp>;

/// Domain membership of a finitely supported f (e-terms only).
DomainVerdict domain_check(const WeightSystem& w, const DomainQuery& which, const StructuredVector& f);

/// f_n = sum_{j<n} f(u_j) e_{u_j} for a fixed enumeration of the support.
StructuredVector truncate(const std::vector<std::pair<VertexId, Complex>>& enumeration, std::size_t n);

}  // namespace atree
