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

#include <Eigen/Dense>

#include <map>
#include <vector>

#include "atree/weights.hpp"

namespace atree::dense {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Matrix of a weighted shift in a fixed vertex order.
struct DenseOperator {
  Matrix matrix;
  std::vector<VertexId> order;
  std::map<VertexId, Eigen::Index> index;

  Vector basis(const VertexId& v) const;
};

/// Column u carries w_v at the rows v in Chi(u). Throws UnsupportedRepresentation for infinite trees.
DenseOperator assemble(const WeightSystem& w);

/// T = U P with P = |T| = (T*T)^{1/2} and U a partial isometry, from one SVD
/// T = W S X*. The right factor also diagonalizes P, so fractional powers
/// reuse it.
struct PolarFactors {
  Matrix U;
  Matrix P;
  Matrix right_vectors;  // X
  Eigen::VectorXd singular_values;
  double rank_tol = 0;   // absolute threshold: sigma <= rank_tol counts as zero

  /// P^s = X S^s X*, with 0^s = 0 for s > 0 and P^0 = I.
  Matrix modulus_power(double s) const;
};

/// rank_tol is relative to the largest singular value.
PolarFactors polar(const Matrix& t, double relative_rank_tol = 1e-12);

/// |T|^t U |T|^{1-t}; t = 1 uses |T|^0 = I.
Matrix matrix_aluthge(const Matrix& t, double exponent);

/// Smallest eigenvalue of T*T - TT*.
double commutator_min_eigenvalue(const Matrix& t);

double max_abs(const Matrix& m);

struct ComparisonReport {
  double aluthge = 0;             // Delta_t(T) vs S_mu
  double adjoint_modulus = 0;     // (TT*)^{alpha/2} vs sum_u s(u)^alpha P_u, max over alphas
  double polar_factor = 0;        // SVD U vs S_pi
  double adjoint_aluthge = 0;     // |T*|^t V |T*|^{1-t} e_v vs the basis formula
  double polar_residual = 0;      // ||U P - T||
  double modulus_residual = 0;    // ||(T*T)^{1/2} - P|| via an independent eigensolver
  bool hyponormal_formula = false;
  bool hyponormal_matrix = false;
  double commutator_min_eig = 0;
  std::size_t adjoint_aluthge_skipped = 0;  // singular 0/0 vertices

  bool hyponormal_agree() const { return hyponormal_formula == hyponormal_matrix; }
  double max_discrepancy() const;
};

/// Five-way comparison of matrix computations against the closed weight formulas.
ComparisonReport compare_with_formula(const WeightSystem& w, double t, const std::vector<double>& alphas = {0.5, 1.0, 2.0});

}  // namespace atree::dense
