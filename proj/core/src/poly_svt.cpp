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

#include "tdsim/poly_svt.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>
#include <utility>

#include <boost/math/special_functions/erf.hpp>

namespace tdsim {

namespace {

// Degree escalation cap for sign_poly.
constexpr int kMaxDegree = 400001;
// Split of eps between the erf tail and the truncation error.
constexpr int kSplitSteps = 39;

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<std::uint64_t, std::uint64_t>, OddPolynomial>& cache() {
  static std::map<std::pair<std::uint64_t, std::uint64_t>, OddPolynomial> c;
  return c;
}

// p(t) = t (b_0 - b_1) where b runs the Clenshaw recurrence for the odd
// series in u = 2 T_2(t). Exactly odd in t.
double clenshaw_odd(const std::vector<double>& c, double t) {
  const double u = 2.0 * (2.0 * t * t - 1.0);
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) {
    const double b0 = c[j] + u * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return t * (b1 - b2);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct Truncation {
  std::size_t terms = 0;  // m + 1 coefficients kept
  double tail = 0.0;
};

// Fewest terms with 2 * tail <= budget, where tail sums the dropped |c_j|.
Truncation truncate(const std::vector<double>& c, double budget) {
  std::vector<double> suffix(c.size() + 1, 0.0);
  for (std::size_t j = c.size(); j-- > 0;) suffix[j] = suffix[j + 1] + std::abs(c[j]);
  for (std::size_t m = 1; m <= c.size(); ++m)
    if (2.0 * suffix[m] <= budget) return {m, suffix[m]};
  return {0, 0.0};
}

// Enough Chebyshev terms that the neglected erf coefficients are far below
// double precision: e^{-z} I_j(z) ~ exp(-j^2 / 2z).
std::size_t coefficient_count(double k) {
  const double z = 2.0 * k * k;
  return static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * z * 60.0))) + 64;
}

OddPolynomial build_sign_poly(double delta, double eps) {
  struct Candidate {
    double k = 0.0;
    Truncation cut;
    std::vector<double> coeffs;
  };
  Candidate best;
  for (int s = 1; s <= kSplitSteps; ++s) {
    const double theta = static_cast<double>(s) / (kSplitSteps + 1);
    const double k = boost::math::erfc_inv(theta * eps) / delta;
    std::vector<double> c = erf_chebyshev_coeffs(k, coefficient_count(k));
    const Truncation cut = truncate(c, (1.0 - theta) * eps);
    if (cut.terms == 0) continue;
    if (best.cut.terms == 0 || cut.terms < best.cut.terms) best = {k, cut, std::move(c)};
  }
  if (best.cut.terms == 0) throw ConstructionError("no admissible erf truncation");

  std::size_t terms = best.cut.terms;
  while (true) {
    if (static_cast<int>(2 * terms - 1) > kMaxDegree || terms > best.coeffs.size())
      throw ConstructionError("sign polynomial exceeded the degree cap");
    double tail = 0.0;
    for (std::size_t j = terms; j < best.coeffs.size(); ++j) tail += std::abs(best.coeffs[j]);
    std::vector<double> kept(best.coeffs.begin(), best.coeffs.begin() + static_cast<std::ptrdiff_t>(terms));
    for (double& v : kept) v /= 1.0 + tail;
    OddPolynomial p = odd_polynomial(std::move(kept));
    p.delta = delta;
    p.eps = eps;
    p.erf_scale = best.k;
    p.tail_bound = tail;
    const PolyCertificate cert = certify(p, delta, eps);
    p.sup_norm_certificate = cert.max_abs;
    p.sign_error_certificate = cert.max_sign_error;
    if (cert.passed()) return p;
    terms += std::max<std::size_t>(2, terms / 20);
  }
}

}  // namespace

std::vector<double> scaled_bessel_i(double z, std::size_t count) {
  if (z < 0.0) throw ArgumentError("Bessel argument must be non-negative");
  std::vector<double> out(count, 0.0);
  if (count == 0) return out;
  if (z == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const std::size_t start =
      std::max(count, static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * z * 60.0)))) + 64;
  std::vector<double> r(start + 2, 0.0);
  r[start] = 1e-300;
  for (std::size_t j = start; j >= 1; --j) {
    r[j - 1] = r[j + 1] + (2.0 * static_cast<double>(j) / z) * r[j];
    if (r[j - 1] > 1e250) {
      for (std::size_t i = j - 1; i <= start; ++i) r[i] *= 1e-250;
    }
  }
  double norm = r[0];
  for (std::size_t j = 1; j <= start; ++j) norm += 2.0 * r[j];
  for (std::size_t j = 0; j < count; ++j) out[j] = r[j] / norm;
  return out;
}

std::vector<double> erf_chebyshev_coeffs(double k, std::size_t count) {
  // erf(a t) = (2a e^{-z} / sqrt(pi)) sum_j (-1)^j (I_j + I_{j+1})(z) T_{2j+1}(t) / (2j+1)
  // with t = x / 2, a = 2k and z = a^2 / 2.
  const double a = 2.0 * k;
  const double z = 0.5 * a * a;
  const std::vector<double> s = scaled_bessel_i(z, count + 1);
  std::vector<double> c(count);
  const double pre = 2.0 * a / std::sqrt(std::numbers::pi);
  for (std::size_t j = 0; j < count; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    c[j] = pre * sign * (s[j] + s[j + 1]) / static_cast<double>(2 * j + 1);
  }
  return c;
}

OddPolynomial odd_polynomial(std::vector<double> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  OddPolynomial p;
  p.degree = coeffs.empty() ? 0 : static_cast<int>(2 * coeffs.size() - 1);
  p.coeffs = std::move(coeffs);
  return p;
}

OddPolynomial odd_polynomial_from_monomials(const std::vector<double>& odd_monomials) {
  // x^m = 2^m t^m and t^m = 2^{1-m} sum_k binom(m, k) T_{m-2k}(t) for odd m.
  std::vector<double> c(odd_monomials.size(), 0.0);
  for (std::size_t j = 0; j < odd_monomials.size(); ++j) {
    const int m = static_cast<int>(2 * j + 1);
    for (int k = 0; k <= (m - 1) / 2; ++k)
      c[static_cast<std::size_t>((m - 2 * k - 1) / 2)] += 2.0 * binomial(m, k) * odd_monomials[j];
  }
  return odd_polynomial(std::move(c));
}

double eval_poly(const OddPolynomial& p, double x) {
  if (!(std::abs(x) <= 2.0)) throw DomainError("polynomial evaluated outside [-2, 2]");
  return clenshaw_odd(p.coeffs, 0.5 * x);
}

PolyCertificate certify(const OddPolynomial& p, double delta, double eps, std::size_t grid) {
  // Evaluation is exactly odd, so the non-negative half of the symmetric
  // grid plus the Chebyshev extrema covers [-2, 2].
  std::vector<double> xs;
  xs.reserve(grid / 2 + static_cast<std::size_t>(p.degree) / 2 + 8);
  const double step = 4.0 / static_cast<double>(grid - 1);
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = -2.0 + step * static_cast<double>(i);
    if (x >= 0.0) xs.push_back(x);
  }
  for (int j = 0; j <= p.degree / 2 + 1 && p.degree > 0; ++j)
    xs.push_back(std::abs(2.0 * std::cos(std::numbers::pi * j / p.degree)));
  xs.push_back(std::min(delta, 2.0));
  xs.push_back(2.0);

  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  std::vector<std::pair<double, double>> partial(workers, {0.0, 0.0});
  const auto scan = [&](std::size_t w) {
    double max_abs = 0.0, max_err = 0.0;
    for (std::size_t i = w; i < xs.size(); i += workers) {
      const double v = eval_poly(p, xs[i]);
      max_abs = std::max(max_abs, std::abs(v));
      if (xs[i] >= delta) max_err = std::max(max_err, std::abs(v - 1.0));
    }
    partial[w] = {max_abs, max_err};
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (std::thread& t : pool) t.join();
  }
  PolyCertificate cert;
  for (const auto& [a, e] : partial) {
    cert.max_abs = std::max(cert.max_abs, a);
    cert.max_sign_error = std::max(cert.max_sign_error, e);
  }
  cert.points = 2 * xs.size();
  cert.bounded = cert.max_abs <= 1.0 + 1e-12;
  cert.approximates = cert.max_sign_error <= eps;
  return cert;
}

OddPolynomial sign_poly(double delta, double eps) {
  if (!(delta > 0.0) || delta > 2.0) throw ArgumentError("delta must lie in (0, 2]");
  if (!(eps > 0.0) || eps >= 0.5) throw ArgumentError("eps must lie in (0, 1/2)");
  const auto key = std::make_pair(std::bit_cast<std::uint64_t>(delta), std::bit_cast<std::uint64_t>(eps));
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    if (auto it = cache().find(key); it != cache().end()) return it->second;
  }
  OddPolynomial p = build_sign_poly(delta, eps);
  std::lock_guard<std::mutex> lock(cache_mutex());
  return cache().emplace(key, std::move(p)).first->second;
}

Operator matrix_svt_exact(const OddPolynomial& p, const Operator& a) {
  const SingularValueDecomposition s = svd(a);
  if (s.values.size() > 0 && s.values(0) > 1.0 + kPredicateTol)
    throw ArgumentError("singular value transform needs ||A|| <= 1");
  RealVector mapped(s.values.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped(i) = eval_poly(p, s.values(i));
  return s.left * mapped.cast<Complex>().asDiagonal() * s.right.adjoint();
}

BlockEncoding qsvt_block_encoding(const OddPolynomial& p, const BlockEncoding& u_a,
                                  const std::string& provenance) {
  if (!(u_a.alpha > 0.0) || u_a.alpha > 2.0)
    throw ArgumentError("encoding normalisation must lie in (0, 2]");
  const Operator transformed = matrix_svt_exact(p, u_a.encoded()) / u_a.alpha;
  BlockEncoding out;
  out.unitary = dilate_contraction(transformed, u_a.ancillas + 1);
  out.alpha = u_a.alpha;
  out.ancillas = u_a.ancillas + 1;
  out.system_qubits = u_a.system_qubits;
  // Robustness of singular value transforms: ||P(A) - P(A')|| <= 4d sqrt(||A - A'||).
  out.eps = u_a.eps > 0.0 ? 4.0 * p.degree * std::sqrt(u_a.eps / u_a.alpha) : 0.0;
  out.provenance = provenance;
  out.cost = static_cast<std::uint64_t>(kQsvtQueryConstant) * static_cast<std::uint64_t>(p.degree) *
             invocation_cost(u_a.provenance, u_a.cost);
  return out;
}

}  // namespace tdsim
