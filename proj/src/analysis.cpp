// Copyright 2026 The tomoforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tomoforge/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "tomoforge/error.hpp"

namespace tomoforge {

NormalSystem normal_system(const DesignSystem& d) {
  const RealMatrix& a = d.A;
  const std::size_t n = a.cols();
  NormalSystem ns{RealMatrix(n, n), std::vector<double>(n, 0.0)};
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto row = a.row(r);
    for (std::size_t i = 0; i < n; ++i) {
      if (row[i] == 0.0) continue;
      ns.b[i] += d.B[r] * row[i];
      for (std::size_t j = 0; j < n; ++j) ns.C(i, j) += row[i] * row[j];
    }
  }
  return ns;
}

std::size_t ErrorMatrixReport::ill_count() const {
  return static_cast<std::size_t>(std::count(ill_determined.begin(), ill_determined.end(), true));
}

ErrorMatrixReport error_matrix_analysis(const NormalSystem& ns, double threshold) {
  if (!(threshold > 0.0)) throw InputError("threshold must be positive");
  const SymEigenDecomposition eig = sym_eigen(ns.C);
  const std::size_t n = eig.eigenvalues.size();

  ErrorMatrixReport report;
  report.threshold = threshold;
  report.eigenvalues = eig.eigenvalues;
  report.combinations = transpose(eig.vectors);
  report.b_prime = multiply(report.combinations, ns.b);
  report.ill_determined.resize(n);
  for (std::size_t k = 0; k < n; ++k) report.ill_determined[k] = eig.eigenvalues[k] < threshold;
  return report;
}

ReconstructionResult reconstruct(const DesignSystem& d, double threshold, const DensityParams& prior) {
  if (!d.has_readings) throw InputError("design system carries no readings to reconstruct from");
  const NormalSystem ns = normal_system(d);
  const ErrorMatrixReport report = error_matrix_analysis(ns, threshold);
  if (report.ill_count() == report.eigenvalues.size()) {
    throw NumericError("no determinable direction: every eigenvalue is below threshold " + std::to_string(threshold));
  }

  const std::vector<double> prior_y = multiply(report.combinations, prior.x);
  ReconstructionResult result;
  result.prior_used = prior;

  std::vector<double> y(kNumParams);
  for (std::size_t k = 0; k < kNumParams; ++k) {
    if (report.ill_determined[k]) {
      y[k] = prior_y[k];
      TruncatedDirection dir{report.eigenvalues[k], {}};
      const auto row = report.combinations.row(k);
      std::copy(row.begin(), row.end(), dir.combination.begin());
      result.truncated_directions.push_back(dir);
    } else {
      y[k] = report.b_prime[k] / report.eigenvalues[k];
    }
  }
  const std::vector<double> x = multiply_transposed(report.combinations, y);
  std::copy(x.begin(), x.end(), result.params.x.begin());
  result.chi2 = chi2(d, result.params);
  return result;
}

double chi2(const DesignSystem& d, const DensityParams& x) {
  const std::vector<double> predicted = multiply(d.A, x.x);
  double sum = 0.0;
  for (std::size_t r = 0; r < predicted.size(); ++r) {
    const double residual = predicted[r] - d.B[r];
    sum += residual * residual;
  }
  return sum;
}

double relative_error(const ComplexMatrix& rho_exp, const ComplexMatrix& rho_ref, NormKind norm) {
  if (rho_exp.rows() != rho_ref.rows() || rho_exp.cols() != rho_ref.cols()) {
    throw InputError("relative_error: matrices differ in shape");
  }
  auto measure = [norm](const ComplexMatrix& m) {
    return norm == NormKind::Spectral ? spectral_norm(m) : frobenius_norm(m);
  };
  const double denom = measure(rho_exp);
  if (denom == 0.0) throw InputError("relative_error: reference-normalizing matrix has zero norm");
  return std::abs(measure(subtract(rho_exp, rho_ref)) / denom);
}

ComplexMatrix project_to_psd(const ComplexMatrix& rho) {
  if (!rho.square()) throw InputError("project_to_psd: matrix is not square");
  const std::size_t n = rho.rows();
  const SymEigenDecomposition eig = sym_eigen(real_embedding(rho));
  const std::size_t m = eig.eigenvalues.size();

  RealMatrix clipped(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    const double lambda = std::max(eig.eigenvalues[k], 0.0);
    if (lambda == 0.0) continue;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) clipped(i, j) += lambda * eig.vectors(i, k) * eig.vectors(j, k);
  }

  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = Complex(clipped(i, j), clipped(i + n, j));

  const double target = trace(rho).real();
  const double got = trace(out).real();
  if (got > 0.0) {
    const double scale = target / got;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) *= scale;
  }
  return out;
}

}  // namespace tomoforge
