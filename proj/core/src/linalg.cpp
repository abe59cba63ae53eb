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

#include "tdsim/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "tdsim/bits.hpp"

namespace tdsim {

namespace {

int env_max_qubits() {
  if (const char* env = std::getenv("TDSIM_MAX_QUBITS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1 && v <= 30) return v;
    } catch (const std::exception&) {
    }
  }
  return kDefaultMaxQubits;
}

std::atomic<int>& cap() {
  static std::atomic<int> value{env_max_qubits()};
  return value;
}

std::vector<Eigen::Index> descending_order(const RealVector& v) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    return v(a) > v(b);
  });
  return idx;
}

void check_qubit_set(const std::vector<int>& qubits, int total) {
  std::vector<bool> seen(static_cast<std::size_t>(total), false);
  for (int q : qubits) {
    if (q < 0 || q >= total)
      throw ArgumentError("qubit index " + std::to_string(q) + " out of range");
    if (seen[static_cast<std::size_t>(q)])
      throw ArgumentError("duplicate qubit index " + std::to_string(q));
    seen[static_cast<std::size_t>(q)] = true;
  }
}

}  // namespace

int max_qubits() { return cap().load(); }

void set_max_qubits(int qubits) {
  if (qubits < 1 || qubits > 30) throw ArgumentError("qubit cap must be in [1, 30]");
  cap().store(qubits);
}

int qubit_count(Eigen::Index dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0)
    throw ArgumentError("dimension " + std::to_string(dim) + " is not a power of two");
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

void check_dimension(Eigen::Index dim) {
  if (dim > (Eigen::Index{1} << max_qubits()))
    throw SizeError("dimension " + std::to_string(dim) + " exceeds the " +
                    std::to_string(max_qubits()) + "-qubit cap");
}

bool is_finite(const Operator& a) { return a.allFinite(); }

bool is_hermitian(const Operator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Operator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const Operator g = a.adjoint() * a;
  return (g - Operator::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_psd(const Operator& a, double tol) {
  if (!is_hermitian(a, tol)) return false;
  Eigen::SelfAdjointEigenSolver<Operator> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

double operator_norm(const Operator& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Operator> s(a);
  return s.singularValues()(0);
}

double trace_norm(const Operator& a) {
  if (a.size() == 0) return 0.0;
  if (is_hermitian(a, 0.0)) {
    Eigen::SelfAdjointEigenSolver<Operator> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::BDCSVD<Operator> s(a);
  return s.singularValues().sum();
}

Operator identity(Eigen::Index dim) { return Operator::Identity(dim, dim); }

Operator tensor(const Operator& a, const Operator& b) {
  if (!a.allFinite() || !b.allFinite()) throw ArgumentError("tensor of non-finite operator");
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  check_dimension(std::max(rows, cols));
  Operator out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Operator tensor(std::initializer_list<Operator> factors) {
  Operator out = Operator::Ones(1, 1);
  for (const Operator& f : factors) out = tensor(out, f);
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  check_dimension(a.size() * b.size());
  StateVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Operator partial_trace(const Operator& a, const std::vector<int>& keep) {
  if (a.rows() != a.cols()) throw ArgumentError("partial trace of non-square operator");
  const int total = qubit_count(a.rows());
  check_qubit_set(keep, total);
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  std::vector<int> traced;
  for (int q = 0; q < total; ++q)
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);

  const std::vector<Eigen::Index> koff = bits::offsets(kept, total);
  const std::vector<Eigen::Index> toff = bits::offsets(traced, total);
  const Eigen::Index dk = static_cast<Eigen::Index>(koff.size());
  Operator out = Operator::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i)
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex acc{0.0, 0.0};
      for (Eigen::Index t : toff) acc += a(koff[i] + t, koff[j] + t);
      out(i, j) = acc;
    }
  return out;
}

Operator embed(const Operator& op, const std::vector<int>& targets, int total_qubits) {
  check_qubit_set(targets, total_qubits);
  const Eigen::Index local = Eigen::Index{1} << targets.size();
  if (op.rows() != local || op.cols() != local)
    throw ArgumentError("operator does not match the number of target qubits");
  const Eigen::Index dim = Eigen::Index{1} << total_qubits;
  check_dimension(dim);
  std::vector<int> rest;
  for (int q = 0; q < total_qubits; ++q)
    if (std::find(targets.begin(), targets.end(), q) == targets.end()) rest.push_back(q);
  const std::vector<Eigen::Index> toff = bits::offsets(targets, total_qubits);
  const std::vector<Eigen::Index> roff = bits::offsets(rest, total_qubits);
  Operator out = Operator::Zero(dim, dim);
  for (Eigen::Index r : roff)
    for (Eigen::Index i = 0; i < local; ++i)
      for (Eigen::Index j = 0; j < local; ++j) out(r + toff[i], r + toff[j]) = op(i, j);
  return out;
}

Operator swap_registers(const std::vector<int>& first, const std::vector<int>& second,
                        int total_qubits) {
  if (first.size() != second.size()) throw ArgumentError("swapped registers differ in width");
  std::vector<int> all = first;
  all.insert(all.end(), second.begin(), second.end());
  check_qubit_set(all, total_qubits);
  const Eigen::Index dim = Eigen::Index{1} << total_qubits;
  check_dimension(dim);
  Operator out = Operator::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    Eigen::Index y = x;
    for (std::size_t k = 0; k < first.size(); ++k) {
      const int p = total_qubits - 1 - first[k];
      const int q = total_qubits - 1 - second[k];
      const Eigen::Index bp = (x >> p) & 1, bq = (x >> q) & 1;
      y = (y & ~(Eigen::Index{1} << p) & ~(Eigen::Index{1} << q)) | (bq << p) | (bp << q);
    }
    out(y, x) = 1.0;
  }
  return out;
}

Operator SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition eigh(const Operator& a) {
  if (!is_hermitian(a)) throw ArgumentError("eigh requires a Hermitian operator");
  const Operator h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> es(h);
  const RealVector& ev = es.eigenvalues();
  const std::vector<Eigen::Index> order = descending_order(ev);
  SpectralDecomposition out;
  out.eigenvalues.resize(ev.size());
  out.eigenvectors.resize(h.rows(), h.cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.eigenvalues(static_cast<Eigen::Index>(k)) = ev(order[k]);
    out.eigenvectors.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(order[k]);
  }
  return out;
}

Operator SingularValueDecomposition::reconstruct() const {
  return left * values.cast<Complex>().asDiagonal() * right.adjoint();
}

SingularValueDecomposition svd(const Operator& a) {
  SingularValueDecomposition out;
  const auto assign = [&](const auto& s) {
    const std::vector<Eigen::Index> order = descending_order(s.singularValues());
    const Eigen::Index k = static_cast<Eigen::Index>(order.size());
    out.values.resize(k);
    out.left = s.matrixU();
    out.right = s.matrixV();
    for (Eigen::Index i = 0; i < k; ++i) {
      out.values(i) = s.singularValues()(order[static_cast<std::size_t>(i)]);
      out.left.col(i) = s.matrixU().col(order[static_cast<std::size_t>(i)]);
      out.right.col(i) = s.matrixV().col(order[static_cast<std::size_t>(i)]);
    }
  };
  if (a.rows() <= 64) {
    Eigen::JacobiSVD<Operator> s(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    assign(s);
  } else {
    Eigen::BDCSVD<Operator> s(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    assign(s);
  }
  return out;
}

DensityOperator DensityOperator::from_operator(const Operator& op, bool normalized, double tol) {
  if (op.rows() != op.cols() || op.rows() == 0) throw ArgumentError("density operator must be square");
  if (!op.allFinite()) throw ArgumentError("density operator has non-finite entries");
  const int n = qubit_count(op.rows());
  if (!is_hermitian(op, tol)) throw ArgumentError("density operator is not Hermitian");
  Operator h = 0.5 * (op + op.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) throw ArgumentError("density operator is not positive semidefinite");
  const double tr = h.trace().real();
  if (tr > 1.0 + tol) throw ArgumentError("density operator has trace above one");
  if (normalized && std::abs(tr - 1.0) > tol) throw ArgumentError("density operator is not normalized");
  return DensityOperator(std::move(h), n, normalized);
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw ArgumentError("zero state vector");
  const StateVector v = psi / norm;
  return from_operator(v * v.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(int qubits) {
  const Eigen::Index d = Eigen::Index{1} << qubits;
  return from_operator(identity(d) / static_cast<double>(d));
}

DensityOperator DensityOperator::basis(int qubits, Eigen::Index index) {
  const Eigen::Index d = Eigen::Index{1} << qubits;
  if (index < 0 || index >= d) throw ArgumentError("basis index out of range");
  Operator op = Operator::Zero(d, d);
  op(index, index) = 1.0;
  return from_operator(op);
}

double trace_distance_exact(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw ArgumentError("trace distance of states with different dimensions");
  const Operator diff = rho.op() - sigma.op();
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return std::clamp(0.5 * es.eigenvalues().cwiseAbs().sum(), 0.0, 1.0);
}

double w_small_eigen(const Operator& a, double delta) {
  if (delta < 0.0) throw ArgumentError("threshold must be non-negative");
  const SpectralDecomposition s = eigh(a);
  double w = 0.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    if (std::abs(s.eigenvalues(i)) <= delta) w += std::abs(s.eigenvalues(i));
  return w;
}

int rank_delta(const Operator& a, double delta) {
  if (delta < 0.0) throw ArgumentError("threshold must be non-negative");
  const SpectralDecomposition s = eigh(a);
  int r = 0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    if (std::abs(s.eigenvalues(i)) > delta) ++r;
  return r;
}

int numerical_rank(const Operator& a, double tol) {
  Eigen::JacobiSVD<Operator> s(a);
  int r = 0;
  for (Eigen::Index i = 0; i < s.singularValues().size(); ++i)
    if (s.singularValues()(i) > tol) ++r;
  return r;
}

}  // namespace tdsim
