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

// Small dense real/complex matrices and the Jacobi kernels the rest of the
// library is built on. Sizes here never exceed ~100x100.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tomoforge {

using Complex = std::complex<double>;

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries);

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<const T> entries() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

RealMatrix transpose(const RealMatrix& m);
ComplexMatrix adjoint(const ComplexMatrix& m);
RealMatrix multiply(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<double> multiply(const RealMatrix& m, std::span<const double> v);
// Mᵀ·v
std::vector<double> multiply_transposed(const RealMatrix& m, std::span<const double> v);
Complex trace(const ComplexMatrix& m);

// Largest |M(i,j) - conj(M(j,i))|; +inf for non-square input.
double hermiticity_defect(const ComplexMatrix& m);
// Largest |S(i,j) - S(j,i)|; +inf for non-square input.
double symmetry_defect(const RealMatrix& m);

// Real 2n x 2n representation [[Re, -Im], [Im, Re]] of an n x n complex matrix.
// Hermitian maps to symmetric, and every singular value / eigenvalue doubles.
RealMatrix real_embedding(const ComplexMatrix& m);

struct SymEigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  RealMatrix vectors;               // column k pairs with eigenvalues[k]
};

// Cyclic Jacobi diagonalization of a symmetric matrix. Eigenvalues come out
// descending; each eigenvector column is signed so that its entry of largest
// magnitude (first one on ties) is non-negative.
// Throws InputError if S is non-square or asymmetric beyond 1e-10.
SymEigenDecomposition sym_eigen(const RealMatrix& s);

// Singular values, descending, by one-sided Jacobi on the columns of M.
std::vector<double> singular_values(const RealMatrix& m);
std::vector<double> singular_values(const ComplexMatrix& m);

inline constexpr double kDefaultRankTolerance = 1e-10;

// Count of singular values above tol * (largest singular value).
// Throws InputError on an empty matrix or tol <= 0.
std::size_t matrix_rank(const RealMatrix& m, double tol = kDefaultRankTolerance);

double spectral_norm(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);

}  // namespace tomoforge
