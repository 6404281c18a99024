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

#include "atree/dense_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "atree/analysis.hpp"
#include "atree/errors.hpp"
#include "atree/operators.hpp"

namespace atree::dense {

Vector DenseOperator::basis(const VertexId& v) const {
  Vector e = Vector::Zero(static_cast<Eigen::Index>(order.size()));
  e(index.at(v)) = 1.0;
  return e;
}

DenseOperator assemble(const WeightSystem& w) {
  const auto& tree = w.tree();
  if (!tree.is_finite()) throw UnsupportedRepresentation("dense assembly needs a finite tree");
  DenseOperator op;
  op.order = tree.vertices();
  for (std::size_t i = 0; i < op.order.size(); ++i) op.index.emplace(op.order[i], static_cast<Eigen::Index>(i));
  const auto n = static_cast<Eigen::Index>(op.order.size());
  op.matrix = Matrix::Zero(n, n);
  for (const auto& v : op.order) {
    const auto p = tree.parent(v);
    if (!p) continue;
    op.matrix(op.index.at(v), op.index.at(*p)) = w.weight(v);
  }
  return op;
}

Matrix PolarFactors::modulus_power(double s) const {
  const auto n = singular_values.size();
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sigma = singular_values(i);
    if (s == 0) {
      d(i) = 1.0;
    } else {
      d(i) = sigma > rank_tol ? std::pow(sigma, s) : 0.0;
    }
  }
  return right_vectors * d.cast<std::complex<double>>().asDiagonal() * right_vectors.adjoint();
}

PolarFactors polar(const Matrix& t, double relative_rank_tol) {
  Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  PolarFactors f;
  f.singular_values = svd.singularValues();
  f.right_vectors = svd.matrixV();
  const double top = f.singular_values.size() ? f.singular_values(0) : 0.0;
  f.rank_tol = relative_rank_tol * top;

  const auto n = f.singular_values.size();
  Eigen::VectorXcd support(n);
  Eigen::VectorXcd sigma(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool nonzero = f.singular_values(i) > f.rank_tol;
    support(i) = nonzero ? 1.0 : 0.0;
    sigma(i) = nonzero ? f.singular_values(i) : 0.0;
  }
  f.U = svd.matrixU() * support.asDiagonal() * f.right_vectors.adjoint();
  f.P = f.right_vectors * sigma.asDiagonal() * f.right_vectors.adjoint();
  return f;
}

Matrix matrix_aluthge(const Matrix& t, double exponent) {
  const auto f = polar(t);
  return f.modulus_power(exponent) * f.U * f.modulus_power(1 - exponent);
}

double commutator_min_eigenvalue(const Matrix& t) {
  const Matrix c = t.adjoint() * t - t * t.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(c, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double ComparisonReport::max_discrepancy() const {
  return std::max({aluthge, adjoint_modulus, polar_factor, adjoint_aluthge, polar_residual, modulus_residual});
}

namespace {

Vector to_dense(const StructuredVector& x, const DenseOperator& op) {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(op.order.size()));
  const auto flat = x.expanded();
  for (const auto& [v, c] : flat.e_terms()) out(op.index.at(v)) += c;
  return out;
}

/// Hermitian A >= 0 raised to s via its eigendecomposition, clamping round-off negatives.
Matrix psd_power(const Matrix& a, double s) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  const auto& lambda = eig.eigenvalues();
  const double top = std::max(lambda.cwiseAbs().maxCoeff(), 0.0);
  const double tol = 1e-12 * top;
  Eigen::VectorXcd d(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    d(i) = lambda(i) > tol ? std::pow(lambda(i), s) : 0.0;
  }
  return eig.eigenvectors() * d.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

ComparisonReport compare_with_formula(const WeightSystem& w, double t, const std::vector<double>& alphas) {
  require_t(t);
  ComparisonReport report;
  const auto op = assemble(w);
  const Matrix& T = op.matrix;
  const auto f = polar(T);

  report.polar_residual = max_abs(f.U * f.P - T);
  report.modulus_residual = max_abs(psd_power(T.adjoint() * T, 0.5) - f.P);

  const Matrix aluthge = f.modulus_power(t) * f.U * f.modulus_power(1 - t);
  report.aluthge = max_abs(aluthge - assemble(mu_weights(w, t)).matrix);
  report.polar_factor = max_abs(f.U - assemble(pi_weights(w)).matrix);

  const Matrix TTs = T * T.adjoint();
  for (const double alpha : alphas) {
    const Matrix dense_power = psd_power(TTs, alpha / 2);
    for (const auto& v : op.order) {
      const auto formula = to_dense(apply_adjoint_modulus_power(w, alpha, StructuredVector::basis(v)), op);
      report.adjoint_modulus = std::max(report.adjoint_modulus, (dense_power.col(op.index.at(v)) - formula).cwiseAbs().maxCoeff());
    }
  }

  const Matrix adjoint_aluthge = matrix_aluthge(T.adjoint(), t);
  for (const auto& v : op.order) {
    try {
      const auto formula = to_dense(adjoint_aluthge_basis_action(w, t, v), op);
      report.adjoint_aluthge =
          std::max(report.adjoint_aluthge, (adjoint_aluthge.col(op.index.at(v)) - formula).cwiseAbs().maxCoeff());
    } catch (const SingularityError&) {
      ++report.adjoint_aluthge_skipped;
    }
  }

  report.commutator_min_eig = commutator_min_eigenvalue(T);
  const double scale = std::max(1.0, f.singular_values.size() ? f.singular_values(0) * f.singular_values(0) : 0.0);
  report.hyponormal_matrix = report.commutator_min_eig >= -1e-9 * scale;
  report.hyponormal_formula = check_hyponormal(w, {}).verdict == HyponormalVerdict::Hyponormal;
  return report;
}

}  // namespace atree::dense
