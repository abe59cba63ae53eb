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

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "tdsim/block_encoding.hpp"
#include "tdsim/linalg.hpp"

namespace tdsim {

/// Queries to the input encoding per unit of polynomial degree charged by
/// qsvt_block_encoding. Counts U and U^dagger alternations.
inline constexpr int kQsvtQueryConstant = 2;

/// Constant eta in degree <= eta * ln(1/eps) / delta for sign_poly. The
/// measured ratio stays in [3.04, 3.25] for delta in [0.0015, 0.2] and eps in
/// [0.003, 0.1].
inline constexpr double kSignDegreeConstant = 3.3;

/// Odd polynomial p(x) = sum_j c_j T_{2j+1}(x / 2) on [-2, 2].
struct OddPolynomial {
  std::vector<double> coeffs;
  int degree = 0;
  double delta = 0.0;
  double eps = 0.0;
  double sup_norm_certificate = std::numeric_limits<double>::quiet_NaN();
  double sign_error_certificate = std::numeric_limits<double>::quiet_NaN();
  double erf_scale = 0.0;
  double tail_bound = 0.0;
};

/// Grid check used as the sup-norm certificate.
struct PolyCertificate {
  double max_abs = 0.0;
  double max_sign_error = 0.0;
  std::size_t points = 0;
  bool bounded = false;     // max |p| <= 1
  bool approximates = false;  // |p - sgn| <= eps for |x| >= delta
  bool passed() const { return bounded && approximates; }
};

inline constexpr std::size_t kCertificateGrid = 100000;

/// Odd polynomial within eps of sgn(x) for delta <= |x| <= 2 and bounded by
/// one on [-2, 2]. Built from the Chebyshev series of erf(kx), truncated and
/// rescaled, then grid certified. Results are cached per (delta, eps).
OddPolynomial sign_poly(double delta, double eps);

/// Odd polynomial from Chebyshev coefficients (c_j for T_{2j+1}(x/2)).
OddPolynomial odd_polynomial(std::vector<double> coeffs);
/// Odd polynomial sum_j a_j x^(2j+1) converted to the Chebyshev basis.
OddPolynomial odd_polynomial_from_monomials(const std::vector<double>& odd_monomials);

/// Clenshaw evaluation; exactly odd, p(0) = 0. Throws DomainError for |x| > 2.
double eval_poly(const OddPolynomial& p, double x);

PolyCertificate certify(const OddPolynomial& p, double delta, double eps,
                        std::size_t grid = kCertificateGrid);

/// e^{-z} I_j(z) for j = 0..count-1 via Miller's backward recurrence.
std::vector<double> scaled_bessel_i(double z, std::size_t count);

/// Chebyshev coefficients of erf(k x) in T_{2j+1}(x / 2), j = 0..count-1.
std::vector<double> erf_chebyshev_coeffs(double k, std::size_t count);

/// W p(Sigma) V^dagger. Requires ||A|| <= 1 + tol.
Operator matrix_svt_exact(const OddPolynomial& p, const Operator& a);

/// Encoding of p^SV(A) where A = alpha * block of u_a. The transformed block
/// p^SV(A) / alpha is dilated onto one extra ancilla; the result keeps alpha.
/// Equivalent to QSVT on the block with q(y) = p(alpha y) / alpha.
BlockEncoding qsvt_block_encoding(const OddPolynomial& p, const BlockEncoding& u_a,
                                  const std::string& provenance = "U_psv");

}  // namespace tdsim
