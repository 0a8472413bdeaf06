// Copyright 2026 The qubot-sim Authors
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

#ifndef QUBOT_LINALG_HPP_
#define QUBOT_LINALG_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qubot::linalg {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. The problem sizes here are tiny
/// (dimensions up to 16), so everything is kept dependency-free and
/// strictly deterministic: no blocking, no parallel kernels, fixed
/// operation order.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix adjoint() const;
  Complex trace() const;

  /// Largest |a_ij| over all entries.
  double max_abs() const;
  /// max_ij |a_ij - conj(a_ji)|, zero for an exactly Hermitian matrix.
  double hermiticity_defect() const;
  bool is_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
    a *= s;
    return a;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& a,
                                 const ComplexMatrix& b);

  bool operator==(const ComplexMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Kronecker product, row-major: (a ⊗ b)[i*p+k, j*q+l] = a[i,j] * b[k,l]
/// for b of shape p x q.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// y = a * x for a square matrix and a column vector.
void matvec(const ComplexMatrix& a, std::span<const Complex> x,
            std::span<Complex> y);

/// Outer product |u><v| (conjugates v).
ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigResult {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, matching eigenvalue order
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi with complex
/// rotations. Input hermiticity defect must be <= 1e-10; sweeps run until the
/// off-diagonal Frobenius mass falls below 1e-14 * max_abs (at most 100
/// sweeps, NoConvergence otherwise). Eigenvalues are returned in ascending
/// order with matching eigenvector columns.
EigResult hermitian_eig(const ComplexMatrix& h);

/// Principal square root of a positive semidefinite matrix via
/// eigendecomposition. Eigenvalues in [-1e-8, 0) are clamped to zero;
/// anything lower throws NotPSD.
ComplexMatrix psd_sqrt(const ComplexMatrix& rho);

/// Solves a x = b by Gaussian elimination with partial pivoting. Throws
/// Singular when the best available pivot is below 1e-13 relative to the
/// largest entry of the input matrix.
std::vector<Complex> solve_linear(ComplexMatrix a, std::vector<Complex> b);

}  // namespace qubot::linalg

#endif  // QUBOT_LINALG_HPP_
