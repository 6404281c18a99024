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

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <variant>

#include "atree/errors.hpp"
#include "atree/tree.hpp"

namespace atree {

/// Every term from `from_index` on is at least `lower_bound` > 0.
struct TermsDoNotVanish {
  std::size_t from_index = 0;
  double lower_bound = 0;
};

/// term[n+1] >= ratio * term[n] > 0 for every n >= from_index, ratio > 1.
struct EventuallyIncreasing {
  std::size_t from_index = 0;
  double ratio = 1;
};

/// Partial sum passed `threshold` after `index` terms. Evidence only.
struct PartialSumExceeds {
  double threshold = 0;
  std::size_t index = 0;
};

using DivergenceCertificate = std::variant<TermsDoNotVanish, EventuallyIncreasing, PartialSumExceeds>;

bool is_analytic(const DivergenceCertificate& cert);
std::string_view kind_name(const DivergenceCertificate& cert);

/// Re-checks an analytic certificate against the term function at the given
/// indices (those below the certificate's start index are ignored).
/// PartialSumExceeds is re-checked by summing up to its index.
bool verify_certificate(const DivergenceCertificate& cert,
                        const std::function<double(std::size_t)>& term,
                        std::span<const std::size_t> sample_indices);

struct Converges {
  double value = 0;
  double tail_bound = 0;
};
struct Diverges {
  DivergenceCertificate certificate;
};
struct Inconclusive {
  double partial_sum = 0;
  std::size_t terms_evaluated = 0;
};

using SeriesVerdict = std::variant<Converges, Diverges, Inconclusive>;

/// Extended nonnegative real: a finite value with an error bound, or +inf
/// together with the certificate that proves (or suggests) it.
class ExtendedNonneg {
 public:
  static ExtendedNonneg finite(double value, double error_bound = 0);
  static ExtendedNonneg infinite(DivergenceCertificate cert);

  bool is_finite() const { return !cert_.has_value(); }
  /// Throws EvaluationError when infinite.
  double value() const;
  double error_bound() const { return error_; }
  /// Precondition: !is_finite().
  const DivergenceCertificate& certificate() const { return *cert_; }

  /// Square root (node norm from a squared aggregate); the error bound is
  /// propagated to first order.
  ExtendedNonneg sqrt() const;

 private:
  double value_ = 0;
  double error_ = 0;
  std::optional<DivergenceCertificate> cert_;
};

/// Raised when a series evaluation ends Inconclusive but the caller needs a
/// definite answer.
class InconclusiveSeries : public Error {
 public:
  InconclusiveSeries(const std::string& what, Inconclusive data) : Error(what), data_(data) {}
  const Inconclusive& data() const { return data_; }

 private:
  Inconclusive data_;
};

/// Structural knowledge about the terms that the caller vouches for.
enum class TermShape {
  Unknown,
  /// term[n+1]/term[n] is nondecreasing once terms are positive, e.g. c^n / poly(n).
  RatioMonotone,
};

struct SeriesPolicy {
  std::size_t max_terms = 100'000;
  double divergence_threshold = 1e12;
  /// Upper bound on the tail sum_{n >= N} term[n] after N summed terms.
  std::function<double(std::size_t)> tail_bound;
  TermShape shape = TermShape::Unknown;
};

/// Index-addressed term stream; `length` is nullopt for infinite series.
struct TermSource {
  std::function<double(std::size_t)> term;
  std::optional<std::size_t> length;
};

SeriesVerdict sum_series(const TermSource& terms, const SeriesPolicy& policy = {});
SeriesVerdict sum_series(std::span<const double> terms, const SeriesPolicy& policy = {});

/// Converts a verdict into an extended value; Inconclusive throws InconclusiveSeries.
ExtendedNonneg to_extended(const SeriesVerdict& verdict, std::string_view context);

/// Compensated (Neumaier) summation helper.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

/// gamma^2 = sum_{n>=1} n^-2, evaluated once from 10^7 terms plus a midpoint tail.
struct GammaConstant {
  double gamma;
  double gamma_squared;
  double gamma_squared_error;
};
const GammaConstant& gamma_constant();

/// Which registered closed form to use for an aggregate sum_{v in Chi(u)} |w_v|^2.
enum class ClosedFormWeights { PaperLambda, PaperPi, PaperMu };

struct AggregateFamily {
  TreeKind tree = TreeKind::PaperTree;
  ClosedFormWeights weights = ClosedFormWeights::PaperLambda;
  double t = 0;  // PaperMu only
};

/// Exact aggregate for a registered family; nullopt when none is registered
/// (the caller falls back to sum_series).
std::optional<ExtendedNonneg> closed_form_aggregate(const AggregateFamily& family, const VertexId& u);

/// Analytic divergence data for sum_n 2^{2tn} / (n+1)^2 with t in (0,1]:
/// smallest n0 with 2^{2t} ((n0+1)/(n0+2))^2 > 1 and that ratio.
EventuallyIncreasing paper_mu_divergence(double t);

/// sum_{n>=0} 1/((n+1)^2 4^n) with its geometric tail bound; gamma^-2 times it
/// is the hyponormality margin of the sequence-tree shift at every vertex.
struct MarginValue {
  double value;
  double upper_bound;  // certified: value + tail, divided by a lower bound on gamma^2
  std::size_t terms;
};
MarginValue paper_hyponormality_margin();

}  // namespace atree
