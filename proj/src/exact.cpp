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

#include "atree/exact.hpp"

#include <numeric>
#include <string>

#include "atree/errors.hpp"

namespace atree::exact {

namespace {

std::optional<mpz_class> integer_root(const mpz_class& x, unsigned long k) {
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), k) == 0) return std::nullopt;
  return r;
}

Rational integer_power(const Rational& x, unsigned long e) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), e);
  out.canonicalize();
  return out;
}

}  // namespace

std::optional<Rational> root(const Rational& x, unsigned long k) {
  if (k == 0) throw ContractViolation("zeroth root");
  if (sgn(x) < 0) throw ContractViolation("root of a negative rational");
  const auto num = integer_root(x.get_num(), k);
  const auto den = integer_root(x.get_den(), k);
  if (!num || !den) return std::nullopt;
  Rational out(*num, *den);
  out.canonicalize();
  return out;
}

std::optional<Rational> power(const Rational& x, long p, unsigned long q) {
  if (q == 0) throw ContractViolation("power with zero denominator");
  if (sgn(x) < 0) throw ContractViolation("fractional power of a negative rational");
  if (p == 0) return Rational(1);
  if (sgn(x) == 0) {
    if (p < 0) throw ContractViolation("negative power of zero");
    return Rational(0);
  }
  const auto g = std::gcd(static_cast<unsigned long>(p < 0 ? -p : p), q);
  const auto r = root(x, q / g);
  if (!r) return std::nullopt;
  const unsigned long e = static_cast<unsigned long>(p < 0 ? -p : p) / g;
  auto out = integer_power(*r, e);
  if (p < 0) out = 1 / out;
  return out;
}

StrictInclusionPath::StrictInclusionPath(RationalT t, std::function<Rational(std::size_t)> f_even)
    : t_(t), f_even_(std::move(f_even)) {
  if (t_.den <= 0 || t_.num <= 0 || t_.num >= t_.den) {
    throw ContractViolation("the strict-inclusion path needs t in (0,1)");
  }
}

Rational StrictInclusionPath::profile(std::size_t n) const {
  if (n % 2) return 0;
  return f_even_(n / 2);
}

Rational StrictInclusionPath::weight(std::size_t n) const {
  if (n == 0) throw StructuralError("the root 0 carries no weight");
  if (n % 2 == 0) return 0;
  const Rational f = abs(f_even_((n - 1) / 2));
  if (sgn(f) == 0) throw ContractViolation("profile must not vanish on even vertices");
  // 1/(t-1) = den/(num-den) = -den/(den-num)
  const auto w = power(f, -t_.den, static_cast<unsigned long>(t_.den - t_.num));
  if (!w) throw EvaluationError("weight at " + std::to_string(n) + " is irrational");
  return *w;
}

std::optional<Rational> StrictInclusionPath::mu(std::size_t n) const {
  const Rational parent_norm2 = node_norm_squared(n - 1);
  if (sgn(parent_norm2) == 0) return Rational(0);
  const Rational own_norm2 = node_norm_squared(n);
  if (sgn(own_norm2) == 0) return Rational(0);
  // (s(n)^2 / s(n-1)^2)^{t/2}
  const auto ratio = power(own_norm2 / parent_norm2, t_.num, static_cast<unsigned long>(2 * t_.den));
  if (!ratio) return std::nullopt;
  return *ratio * weight(n);
}

Rational StrictInclusionPath::modulus_series_term(std::size_t n) const {
  const Rational f = profile(n);
  if (sgn(f) == 0) return 0;
  // s(n)^{2-2t} = (s(n)^2)^{(den-num)/den}
  const auto s_pow = power(node_norm_squared(n), t_.den - t_.num, static_cast<unsigned long>(t_.den));
  if (!s_pow) throw EvaluationError("series term at " + std::to_string(n) + " is irrational");
  return *s_pow * f * f;
}

StrictInclusionReport certify_strict_inclusion(const StrictInclusionPath& path, std::size_t terms) {
  StrictInclusionReport report;
  report.terms_checked = terms;
  report.all_terms_equal_one = terms > 0;
  for (std::size_t k = 0; k < terms; ++k) {
    if (path.modulus_series_term(2 * k) != 1) {
      report.all_terms_equal_one = false;
      report.first_mismatch = k;
      break;
    }
  }
  report.mu_identically_zero = true;
  for (std::size_t n = 1; n <= 2 * terms + 1; ++n) {
    const auto m = path.mu(n);
    if (!m || sgn(*m) != 0) {
      report.mu_identically_zero = false;
      break;
    }
  }
  const std::string condition = "sum_u s(u)^{2-2t} |f(u)|^2 < inf";
  if (report.all_terms_equal_one) {
    report.modulus_verdict = DomainVerdict::out(condition, std::nullopt, TermsDoNotVanish{0, 1.0});
  } else {
    report.modulus_verdict =
        DomainVerdict::unknown(condition, std::nullopt, Inconclusive{0.0, report.first_mismatch.value_or(0)});
  }
  report.mu_shift_verdict = report.mu_identically_zero
                                ? DomainVerdict::in("mu vanishes identically, so S_mu is everywhere defined")
                                : DomainVerdict::unknown("mu == 0", std::nullopt, Inconclusive{0.0, 0});
  return report;
}

StrictInclusionPath harmonic_strict_inclusion_path() {
  return StrictInclusionPath(RationalT{1, 2}, [](std::size_t k) { return Rational(1, static_cast<unsigned long>(k + 1)); });
}

}  // namespace atree::exact
