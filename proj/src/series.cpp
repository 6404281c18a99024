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

#include "atree/series.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace atree {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

bool is_analytic(const DivergenceCertificate& cert) {
  return !std::holds_alternative<PartialSumExceeds>(cert);
}

std::string_view kind_name(const DivergenceCertificate& cert) {
  return std::visit(overloaded{
                        [](const TermsDoNotVanish&) { return std::string_view("TermsDoNotVanish"); },
                        [](const EventuallyIncreasing&) { return std::string_view("EventuallyIncreasing"); },
                        [](const PartialSumExceeds&) { return std::string_view("PartialSumExceeds"); },
                    },
                    cert);
}

bool verify_certificate(const DivergenceCertificate& cert,
                        const std::function<double(std::size_t)>& term,
                        std::span<const std::size_t> sample_indices) {
  return std::visit(
      overloaded{
          [&](const TermsDoNotVanish& c) {
            if (!(c.lower_bound > 0)) return false;
            for (auto n : sample_indices) {
              if (n >= c.from_index && term(n) < c.lower_bound) return false;
            }
            return true;
          },
          [&](const EventuallyIncreasing& c) {
            if (!(c.ratio > 1)) return false;
            for (auto n : sample_indices) {
              if (n < c.from_index) continue;
              const double a = term(n);
              const double b = term(n + 1);
              if (!(a > 0) || a * c.ratio > b * (1 + 4 * kEps)) return false;
            }
            return true;
          },
          [&](const PartialSumExceeds& c) {
            CompensatedSum s;
            for (std::size_t n = 0; n <= c.index; ++n) s.add(term(n));
            return s.value() > c.threshold;
          },
      },
      cert);
}

// ---------------------------------------------------------------------------

ExtendedNonneg ExtendedNonneg::finite(double value, double error_bound) {
  if (!(value >= 0) || !std::isfinite(value)) {
    throw ContractViolation("finite extended value must be a nonnegative real, got " + std::to_string(value));
  }
  ExtendedNonneg out;
  out.value_ = value;
  out.error_ = error_bound;
  return out;
}

ExtendedNonneg ExtendedNonneg::infinite(DivergenceCertificate cert) {
  ExtendedNonneg out;
  out.value_ = std::numeric_limits<double>::infinity();
  out.cert_ = std::move(cert);
  return out;
}

double ExtendedNonneg::value() const {
  if (cert_) throw EvaluationError("value is infinite (" + std::string(kind_name(*cert_)) + ")");
  return value_;
}

ExtendedNonneg ExtendedNonneg::sqrt() const {
  if (cert_) return *this;
  const double r = std::sqrt(value_);
  // d sqrt(x) = dx / (2 sqrt(x)); at x = 0 use sqrt(err) instead.
  const double err = r > 0 ? error_ / (2 * r) : std::sqrt(error_);
  return finite(r, err);
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

// ---------------------------------------------------------------------------

SeriesVerdict sum_series(const TermSource& terms, const SeriesPolicy& policy) {
  const std::size_t limit = terms.length ? std::min(*terms.length, policy.max_terms) : policy.max_terms;
  CompensatedSum sum;
  // Under RatioMonotone the first n with term[n] > 0 and term[n+1] >= term[n]
  // proves divergence: all later ratios are at least as large.
  std::optional<std::size_t> rise_at;
  double rise_ratio = 0;
  double prev = -1;
  std::size_t n = 0;
  bool exceeded = false;
  for (; n < limit; ++n) {
    const double a = terms.term(n);
    if (std::isnan(a) || a < 0) {
      throw ContractViolation("series term " + std::to_string(n) + " is negative or NaN");
    }
    if (!rise_at && n > 0 && prev > 0 && a >= prev) {
      rise_at = n - 1;
      rise_ratio = a / prev;
    }
    prev = a;
    sum.add(a);
    if (!(sum.value() <= policy.divergence_threshold)) {
      exceeded = true;
      ++n;
      break;
    }
  }

  const bool complete = !exceeded && terms.length && n == *terms.length;
  if (complete) return Converges{sum.value(), 0.0};
  if (policy.shape == TermShape::RatioMonotone && rise_at) {
    if (rise_ratio > 1 + 1e-9) {
      // Back off by a few ulps so that the recorded ratio is a true lower bound.
      return Diverges{EventuallyIncreasing{*rise_at, rise_ratio * (1 - 8 * kEps)}};
    }
    return Diverges{TermsDoNotVanish{*rise_at, terms.term(*rise_at)}};
  }
  if (exceeded) return Diverges{PartialSumExceeds{policy.divergence_threshold, n - 1}};
  if (policy.tail_bound) return Converges{sum.value(), policy.tail_bound(n)};
  return Inconclusive{sum.value(), n};
}

SeriesVerdict sum_series(std::span<const double> terms, const SeriesPolicy& policy) {
  return sum_series(TermSource{[terms](std::size_t i) { return terms[i]; }, terms.size()}, policy);
}

ExtendedNonneg to_extended(const SeriesVerdict& verdict, std::string_view context) {
  return std::visit(overloaded{
                        [](const Converges& c) { return ExtendedNonneg::finite(c.value, c.tail_bound); },
                        [](const Diverges& d) { return ExtendedNonneg::infinite(d.certificate); },
                        [&](const Inconclusive& i) -> ExtendedNonneg {
                          throw InconclusiveSeries("series for " + std::string(context) + " is inconclusive after " +
                                                       std::to_string(i.terms_evaluated) + " terms",
                                                   i);
                        },
                    },
                    verdict);
}

// ---------------------------------------------------------------------------

const GammaConstant& gamma_constant() {
  static const GammaConstant value = [] {
    constexpr std::size_t N = 10'000'000;
    // Smallest terms first keeps the rounding error near one ulp of the result.
    CompensatedSum s;
    for (std::size_t n = N; n >= 1; --n) {
      const double x = static_cast<double>(n);
      s.add(1.0 / (x * x));
    }
    const double Nd = static_cast<double>(N);
    // Tail sum_{n>N} n^-2 against int_{N+1/2}^inf x^-2 dx = 1/(N+1/2); the
    // midpoint rule overestimates each term by at most 1/(4 (n-1/2)^4).
    const double tail = 1.0 / (Nd + 0.5);
    const double midpoint_error = 1.0 / (12.0 * std::pow(Nd - 0.5, 3));
    const double g2 = s.value() + tail;
    const double err = midpoint_error + 4 * kEps * g2;
    return GammaConstant{std::sqrt(g2), g2, err};
  }();
  return value;
}

EventuallyIncreasing paper_mu_divergence(double t) {
  if (!(t > 0 && t <= 1)) throw ContractViolation("t must lie in (0,1], got " + std::to_string(t));
  const auto ratio = [t](std::size_t n) {
    const double q = static_cast<double>(n + 1) / static_cast<double>(n + 2);
    return std::exp2(2 * t) * q * q;
  };
  const double x = 1.0 / (std::exp2(t) - 1.0);
  auto n0 = static_cast<std::size_t>(std::max(0.0, std::floor(x - 1.0) + 1.0));
  // Guard against rounding at the boundary; the ratio is increasing in n.
  while (ratio(n0) <= 1 + 4 * kEps) ++n0;
  while (n0 > 0 && ratio(n0 - 1) > 1 + 4 * kEps) --n0;
  return EventuallyIncreasing{n0, ratio(n0) * (1 - 8 * kEps)};
}

std::optional<ExtendedNonneg> closed_form_aggregate(const AggregateFamily& family, const VertexId& u) {
  if (family.tree != TreeKind::PaperTree) return std::nullopt;
  const auto* p = std::get_if<PaperVertex>(&u);
  if (!p) return std::nullopt;
  switch (family.weights) {
    case ClosedFormWeights::PaperLambda: {
      const auto& g = gamma_constant();
      const auto sigma = p->digit_sum();
      if (2 * sigma > 1000) {
        throw EvaluationError("aggregate 2^(2*" + std::to_string(sigma) + ") gamma^2 exceeds double range at " +
                              encode(*p));
      }
      const int e = static_cast<int>(2 * sigma);
      return ExtendedNonneg::finite(std::ldexp(g.gamma_squared, e), std::ldexp(g.gamma_squared_error, e));
    }
    case ClosedFormWeights::PaperPi:
      // Every vertex has a positive node norm, so each child bundle is normalized.
      return ExtendedNonneg::finite(1.0, 0.0);
    case ClosedFormWeights::PaperMu:
      return ExtendedNonneg::infinite(paper_mu_divergence(family.t));
  }
  return std::nullopt;
}

MarginValue paper_hyponormality_margin() {
  const auto term = [](std::size_t n) {
    const double k = static_cast<double>(n + 1);
    return std::ldexp(1.0 / (k * k), -2 * static_cast<int>(n));
  };
  SeriesPolicy policy;
  policy.max_terms = 40;
  // term[n+1]/term[n] <= 1/4, so the tail after N terms is at most term[N] * 4/3.
  policy.tail_bound = [term](std::size_t N) { return term(N) * 4.0 / 3.0; };
  const auto verdict = std::get<Converges>(sum_series(TermSource{term, std::nullopt}, policy));
  const auto& g = gamma_constant();
  const double value = verdict.value / g.gamma_squared;
  const double upper = (verdict.value + verdict.tail_bound) * (1 + 4 * kEps) / (g.gamma_squared - g.gamma_squared_error);
  return MarginValue{value, upper, policy.max_terms};
}

}  // namespace atree
