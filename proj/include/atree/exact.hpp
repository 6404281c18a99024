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

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <optional>

#include "atree/operators.hpp"

namespace atree::exact {

using Rational = mpq_class;

/// Exact k-th root of a nonnegative rational, or nullopt when it is irrational.
std::optional<Rational> root(const Rational& x, unsigned long k);
/// Exact x^(p/q) for x >= 0, q >= 1; nullopt when irrational. 0^0 = 1, 0^negative throws.
std::optional<Rational> power(const Rational& x, long p, unsigned long q);

/// t = num/den in (0, 1].
struct RationalT {
  long num = 1;
  long den = 2;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Weights on the rooted path built from a profile f with f(2k) != 0:
/// lambda_{2k} = 0 and lambda_{2k+1} = |f(2k)|^{1/(t-1)}.
class StrictInclusionPath {
 public:
  /// Requires t < 1 and every f(2k) to make the power rational.
  StrictInclusionPath(RationalT t, std::function<Rational(std::size_t)> f_even);

  RationalT t() const { return t_; }
  Rational profile(std::size_t n) const;  // f(n); 0 at odd n
  Rational weight(std::size_t n) const;   // lambda_n, n >= 1
  Rational node_norm_squared(std::size_t n) const { return weight(n + 1) * weight(n + 1); }
  /// mu_n, n >= 1; nullopt when it is irrational.
  std::optional<Rational> mu(std::size_t n) const;
  /// s(n)^{2-2t} |f(n)|^2, the n-th term of the |S|^{1-t} domain series.
  Rational modulus_series_term(std::size_t n) const;

 private:
  RationalT t_;
  std::function<Rational(std::size_t)> f_even_;
};

struct StrictInclusionReport {
  std::size_t terms_checked = 0;
  /// Every term over the support {2k : k < terms_checked} equals exactly 1.
  bool all_terms_equal_one = false;
  std::optional<std::size_t> first_mismatch;
  /// mu_n == 0 exactly for 1 <= n <= 2*terms_checked + 1.
  bool mu_identically_zero = false;
  /// f against D(|S|^{1-t}).
  DomainVerdict modulus_verdict;
  /// e-terms of f against D(S_mu): always In since mu vanishes.
  DomainVerdict mu_shift_verdict;
};

/// Runs the exact check over the first `terms` support points of f.
StrictInclusionReport certify_strict_inclusion(const StrictInclusionPath& path, std::size_t terms);

/// f(2k) = 1/(k+1), t = 1/2.
StrictInclusionPath harmonic_strict_inclusion_path();

}  // namespace atree::exact
