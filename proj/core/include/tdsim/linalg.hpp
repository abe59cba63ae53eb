// Copyright 2026 The tdsim Authors
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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "tdsim/errors.hpp"

namespace tdsim {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPredicateTol = 1e-9;
inline constexpr double kReconstructionTol = 1e-10;
inline constexpr int kDefaultMaxQubits = 12;

/// Largest register (in qubits) any operation may build. Reads
/// TDSIM_MAX_QUBITS on first use; set_max_qubits overrides it.
int max_qubits();
void set_max_qubits(int qubits);

/// Number of qubits of a 2^n dimensional space. Throws ArgumentError when
/// dim is not a power of two.
int qubit_count(Eigen::Index dim);

/// Throws SizeError if a space of this dimension exceeds the qubit cap.
void check_dimension(Eigen::Index dim);

bool is_finite(const Operator& a);
bool is_hermitian(const Operator& a, double tol = kPredicateTol);
bool is_unitary(const Operator& a, double tol = kPredicateTol);
bool is_psd(const Operator& a, double tol = kPredicateTol);

double operator_norm(const Operator& a);
double trace_norm(const Operator& a);

Operator identity(Eigen::Index dim);

/// Kronecker product. The first factor is the most significant register.
Operator tensor(const Operator& a, const Operator& b);
Operator tensor(std::initializer_list<Operator> factors);
StateVector tensor(const StateVector& a, const StateVector& b);

/// Trace out every qubit not listed in `keep`. Qubit 0 is the most
/// significant bit of the basis index. The kept qubits keep their relative
/// order.
Operator partial_trace(const Operator& a, const std::vector<int>& keep);

/// Lift an operator acting on `targets` (listed most significant first) to
/// the full `total_qubits` register.
Operator embed(const Operator& op, const std::vector<int>& targets,
               int total_qubits);

/// Permutation unitary exchanging two disjoint registers of equal width.
Operator swap_registers(const std::vector<int>& first,
                        const std::vector<int>& second, int total_qubits);

struct SpectralDecomposition {
  RealVector eigenvalues;  // descending
  Operator eigenvectors;   // columns
  Operator reconstruct() const;
};

/// Eigendecomposition of a Hermitian operator with a total ordering:
/// descending eigenvalues, ties kept in solver order.
SpectralDecomposition eigh(const Operator& a);

struct SingularValueDecomposition {
  Operator left;      // W
  RealVector values;  // descending, non-negative
  Operator right;     // V, so that A = W diag(values) V^dagger
  Operator reconstruct() const;
};

SingularValueDecomposition svd(const Operator& a);

/// Apply a real function to the eigenvalues of a Hermitian operator.
template <typename F>
Operator hermitian_function(const Operator& a, F&& f) {
  const SpectralDecomposition s = eigh(a);
  RealVector mapped(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped(i) = f(s.eigenvalues(i));
  return s.eigenvectors * mapped.asDiagonal() * s.eigenvectors.adjoint();
}

class DensityOperator {
 public:
  /// Validates hermiticity, positivity and trace. Slightly non-Hermitian
  /// input within tolerance is symmetrised.
  static DensityOperator from_operator(const Operator& op,
                                       bool normalized = true,
                                       double tol = kPredicateTol);
  static DensityOperator pure(const StateVector& psi);
  static DensityOperator maximally_mixed(int qubits);
  static DensityOperator basis(int qubits, Eigen::Index index);

  const Operator& op() const { return op_; }
  int qubits() const { return n_; }
  Eigen::Index dim() const { return op_.rows(); }
  bool normalized() const { return normalized_; }
  double trace() const { return op_.trace().real(); }

 private:
  DensityOperator(Operator op, int n, bool normalized)
      : op_(std::move(op)), n_(n), normalized_(normalized) {}

  Operator op_;
  int n_ = 0;
  bool normalized_ = true;
};

double trace_distance_exact(const DensityOperator& rho,
                            const DensityOperator& sigma);

/// Sum of |lambda| over eigenvalues with |lambda| <= delta.
double w_small_eigen(const Operator& a, double delta);
/// Number of eigenvalues with |lambda| > delta.
int rank_delta(const Operator& a, double delta);
/// Numerical rank at the predicate tolerance.
int numerical_rank(const Operator& a, double tol = kPredicateTol);

}  // namespace tdsim
