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

#include "tdsim/block_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tdsim {

namespace {

// Eigenvalues at or below this are dropped from the purification.
constexpr double kSpectrumFloor = 1e-14;

std::vector<int> range(int begin, int count) {
  std::vector<int> out(static_cast<std::size_t>(count));
  std::iota(out.begin(), out.end(), begin);
  return out;
}

std::string encoding_label(const std::string& oracle_name) {
  if (oracle_name.rfind("O_", 0) == 0) return "U_" + oracle_name.substr(2);
  return "U_" + oracle_name;
}

const Operator kHadamard = (Operator(2, 2) << 1, 1, 1, -1).finished() / std::sqrt(2.0);
const Operator kPauliX = (Operator(2, 2) << 0, 1, 1, 0).finished();

}  // namespace

QueryCost operator+(const QueryCost& a, const QueryCost& b) {
  QueryCost out = a;
  for (const auto& [k, v] : b) out[k] += v;
  return out;
}

QueryCost operator*(std::uint64_t k, const QueryCost& c) {
  QueryCost out;
  for (const auto& [name, v] : c) out[name] = k * v;
  return out;
}

QueryCost invocation_cost(const std::string& label, const QueryCost& inner) {
  QueryCost out = inner;
  out[label] += 1;
  return out;
}

Operator BlockEncoding::block() const {
  const Eigen::Index d = system_dim();
  return unitary.topLeftCorner(d, d);
}

Operator BlockEncoding::encoded() const { return alpha * block(); }

double verify_block_encoding(const BlockEncoding& b, const Operator& target) {
  if (target.rows() != b.system_dim() || target.cols() != b.system_dim())
    throw ArgumentError("target does not match the encoded system size");
  return operator_norm(b.encoded() - target);
}

DensityOperator PurifiedOracle::reduced_state() const {
  const StateVector psi = prepared_state();
  return DensityOperator::from_operator(partial_trace(psi * psi.adjoint(), range(0, system_qubits)));
}

bool PurifiedOracle::is_pure(double tol) const {
  const Operator rho = reduced_state().op();
  return std::abs((rho * rho).trace().real() - 1.0) <= tol;
}

Operator complete_to_unitary(const Operator& columns) {
  const Eigen::Index d = columns.rows();
  const Eigen::Index k = columns.cols();
  if (k > d) throw ArgumentError("more columns than the dimension");
  if (!(columns.adjoint() * columns).isIdentity(kPredicateTol))
    throw ArgumentError("columns are not orthonormal");
  Operator out(d, d);
  out.leftCols(k) = columns;
  Eigen::Index filled = k;
  for (Eigen::Index e = 0; e < d && filled < d; ++e) {
    StateVector v = StateVector::Unit(d, e);
    for (int pass = 0; pass < 2; ++pass)
      v -= out.leftCols(filled) * (out.leftCols(filled).adjoint() * v);
    const double norm = v.norm();
    if (norm < 1e-6) continue;
    out.col(filled++) = v / norm;
  }
  if (filled != d) throw ConstructionError("unitary completion failed");
  return out;
}

PurifiedOracle purify(const DensityOperator& rho, const std::string& name) {
  if (!rho.normalized()) throw ArgumentError("purification requires a normalized state");
  const SpectralDecomposition s = eigh(rho.op());
  int rank = 0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    if (s.eigenvalues(i) > kSpectrumFloor) ++rank;
  int n_anc = 1;
  while ((1 << n_anc) < rank) ++n_anc;
  const int n = rho.qubits();
  const Eigen::Index da = Eigen::Index{1} << n_anc;
  check_dimension(rho.dim() * da);

  StateVector psi = StateVector::Zero(rho.dim() * da);
  for (int j = 0; j < rank; ++j) {
    const double amp = std::sqrt(s.eigenvalues(j));
    for (Eigen::Index x = 0; x < rho.dim(); ++x) psi(x * da + j) += amp * s.eigenvectors(x, j);
  }
  psi /= psi.norm();

  PurifiedOracle out;
  out.unitary = complete_to_unitary(psi);
  out.system_qubits = n;
  out.ancilla_qubits = n_anc;
  out.name = name;
  return out;
}

Operator dilate_contraction(const Operator& p, int ancillas) {
  if (ancillas < 1) throw ArgumentError("dilation needs at least one ancilla");
  if (p.rows() != p.cols()) throw ArgumentError("dilation of a non-square operator");
  const SingularValueDecomposition s = svd(p);
  if (s.values.size() > 0 && s.values(0) > 1.0 + kPredicateTol)
    throw DilationError("operator norm " + std::to_string(s.values(0)) + " exceeds one");
  const RealVector sv = s.values.cwiseMin(1.0);
  const RealVector comp = (RealVector::Ones(sv.size()) - sv.cwiseAbs2()).cwiseMax(0.0).cwiseSqrt();
  const Operator pc = s.left * sv.cast<Complex>().asDiagonal() * s.right.adjoint();
  const Eigen::Index d = p.rows();
  Operator dil(2 * d, 2 * d);
  dil.topLeftCorner(d, d) = pc;
  dil.topRightCorner(d, d) = s.left * comp.cast<Complex>().asDiagonal() * s.left.adjoint();
  dil.bottomLeftCorner(d, d) = s.right * comp.cast<Complex>().asDiagonal() * s.right.adjoint();
  dil.bottomRightCorner(d, d) = -pc.adjoint();
  if (ancillas == 1) return dil;
  const int n = qubit_count(d);
  std::vector<int> targets{0};
  for (int q = 0; q < n; ++q) targets.push_back(ancillas + q);
  return embed(dil, targets, ancillas + n);
}

BlockEncoding density_to_block_encoding(const PurifiedOracle& oracle) {
  const int n = oracle.system_qubits;
  const int na = oracle.ancilla_qubits;
  const int total = 2 * n + na;
  check_dimension(Eigen::Index{1} << total);
  const Operator o = tensor(oracle.unitary, identity(Eigen::Index{1} << n));
  const Operator swap = swap_registers(range(0, n), range(n + na, n), total);
  BlockEncoding out;
  out.unitary = o.adjoint() * swap * o;
  out.alpha = 1.0;
  out.ancillas = n + na;
  out.eps = 0.0;
  out.system_qubits = n;
  out.provenance = encoding_label(oracle.name);
  out.cost = {{oracle.name, 2}};
  return out;
}

double StatePrepPair::residual(const std::vector<Complex>& y) const {
  const Eigen::Index m = Eigen::Index{1} << qubits;
  if (static_cast<Eigen::Index>(y.size()) > m) throw ArgumentError("target vector longer than the pair register");
  double r = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const Complex yj = j < static_cast<Eigen::Index>(y.size()) ? y[static_cast<std::size_t>(j)] : Complex{};
    r += std::abs(beta * std::conj(left(j, 0)) * right(j, 0) - yj);
  }
  return r;
}

StatePrepPair difference_prep_pair() {
  StatePrepPair p;
  p.left = kHadamard * kPauliX;
  p.right = kHadamard;
  p.beta = 2.0;
  p.qubits = 1;
  p.eps = 0.0;
  return p;
}

BlockEncoding pad_ancillas(const BlockEncoding& b, int extra) {
  if (extra < 0) throw ArgumentError("negative ancilla padding");
  if (extra == 0) return b;
  BlockEncoding out = b;
  out.unitary = tensor(identity(Eigen::Index{1} << extra), b.unitary);
  out.ancillas += extra;
  return out;
}

BlockEncoding lcu(const StatePrepPair& pair, const std::vector<BlockEncoding>& terms,
                  const std::vector<Complex>& y, const std::string& provenance) {
  if (terms.empty()) throw ArgumentError("empty linear combination");
  const Eigen::Index slots = Eigen::Index{1} << pair.qubits;
  if (static_cast<Eigen::Index>(terms.size()) > slots || terms.size() != y.size())
    throw ArgumentError("coefficient count does not match the pair register");
  const int n = terms.front().system_qubits;
  const double alpha = terms.front().alpha;
  int a = 0;
  double eps_terms = 0.0;
  for (const BlockEncoding& t : terms) {
    if (t.system_qubits != n) throw ArgumentError("terms encode different system sizes");
    if (std::abs(t.alpha - alpha) > kPredicateTol) throw ArgumentError("terms have different normalisations");
    a = std::max(a, t.ancillas);
    eps_terms = std::max(eps_terms, t.eps);
  }
  const Eigen::Index inner = Eigen::Index{1} << (a + n);
  check_dimension(slots * inner);

  Operator select = Operator::Identity(slots * inner, slots * inner);
  QueryCost cost;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const BlockEncoding padded = pad_ancillas(terms[j], a - terms[j].ancillas);
    const Eigen::Index off = static_cast<Eigen::Index>(j) * inner;
    select.block(off, off, inner, inner) = padded.unitary;
    cost = cost + invocation_cost(terms[j].provenance, terms[j].cost);
  }
  const Operator in = identity(inner);
  BlockEncoding out;
  out.unitary = tensor(pair.left.adjoint(), in) * select * tensor(pair.right, in);
  out.alpha = alpha * pair.beta;
  out.ancillas = pair.qubits + a;
  out.eps = alpha * pair.eps + alpha * pair.beta * eps_terms;
  out.system_qubits = n;
  out.provenance = provenance;
  out.cost = std::move(cost);
  return out;
}

BlockEncoding lcu_difference(const BlockEncoding& u_rho, const BlockEncoding& u_sigma,
                             const std::string& provenance) {
  if (u_rho.system_qubits != u_sigma.system_qubits)
    throw ArgumentError("encoded states have different dimensions");
  BlockEncoding out = lcu(difference_prep_pair(), {u_rho, u_sigma}, {1.0, -1.0}, provenance);
  out.alpha /= 2.0;
  out.eps /= 2.0;
  return out;
}

BlockEncoding product_block_encodings(const BlockEncoding& u, const BlockEncoding& v,
                                      const std::string& provenance) {
  if (u.system_qubits != v.system_qubits) throw ArgumentError("factors act on different system sizes");
  const int n = u.system_qubits;
  const int a = u.ancillas;
  const int b = v.ancillas;
  const int total = a + b + n;
  check_dimension(Eigen::Index{1} << total);
  std::vector<int> v_targets = range(0, b);
  for (int q = 0; q < n; ++q) v_targets.push_back(b + a + q);
  BlockEncoding out;
  out.unitary = tensor(identity(Eigen::Index{1} << b), u.unitary) * embed(v.unitary, v_targets, total);
  out.alpha = u.alpha * v.alpha;
  out.ancillas = a + b;
  out.eps = u.alpha * v.eps + v.alpha * u.eps;
  out.system_qubits = n;
  out.provenance = provenance;
  out.cost = invocation_cost(u.provenance, u.cost) + invocation_cost(v.provenance, v.cost);
  return out;
}

}  // namespace tdsim
