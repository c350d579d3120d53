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

#pragma once

// Least-squares normal equations, error-matrix conditioning analysis and the
// truncated reconstruction built on top of it.

#include <vector>

#include "tomoforge/linalg.hpp"
#include "tomoforge/model.hpp"

namespace tomoforge {

// Eigenvalues of C below this are treated as undetermined by the data.
inline constexpr double kDefaultThreshold = 1e-3;

struct NormalSystem {
  RealMatrix C;           // AᵀA, 16x16
  std::vector<double> b;  // AᵀB
};

NormalSystem normal_system(const DesignSystem& d);

struct ErrorMatrixReport {
  std::vector<double> eigenvalues;  // descending
  RealMatrix combinations;          // row k holds y_k as coefficients of x1..x16
  std::vector<double> b_prime;      // combinations · b
  std::vector<bool> ill_determined; // eigenvalue < threshold
  double threshold = kDefaultThreshold;

  std::size_t ill_count() const;
};

// Throws InputError if threshold <= 0.
ErrorMatrixReport error_matrix_analysis(const NormalSystem& ns, double threshold = kDefaultThreshold);

struct TruncatedDirection {
  double eigenvalue;
  ParamRow combination;
};

struct ReconstructionResult {
  DensityParams params;
  double chi2 = 0.0;
  std::vector<TruncatedDirection> truncated_directions;
  DensityParams prior_used;
};

// Solves the normal equations in the eigenbasis of C: well-determined y_k are
// b'_k / lambda_k, the rest are pinned to the prior's projection.
// Throws InputError if `d` carries no readings and NumericError if every
// eigenvalue falls below the threshold.
ReconstructionResult reconstruct(const DesignSystem& d, double threshold = kDefaultThreshold,
                                 const DensityParams& prior = DensityParams::maximally_mixed());

double chi2(const DesignSystem& d, const DensityParams& x);

enum class NormKind { Spectral, Frobenius };

// ||rho_exp - rho_ref|| / ||rho_exp||. Throws InputError on shape mismatch or a
// zero rho_exp.
double relative_error(const ComplexMatrix& rho_exp, const ComplexMatrix& rho_ref,
                      NormKind norm = NormKind::Spectral);

// Clips negative eigenvalues of a Hermitian matrix and rescales to the
// original trace.
ComplexMatrix project_to_psd(const ComplexMatrix& rho);

}  // namespace tomoforge
