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

#include <string>
#include <string_view>
#include <vector>

#include "tdsim/linalg.hpp"

namespace tdsim {

enum class ProfileKind { kExact, kDepolarized, kGibbs, kPowerLaw, kUser };

std::string to_string(ProfileKind kind);
ProfileKind parse_profile_kind(std::string_view name);

/// One breakpoint of a user profile: R and W valid from `delta` upward until
/// the next breakpoint.
struct ProfilePoint {
  double delta = 0.0;
  int rank = 0;
  double mass = 0.0;
};

/// Prior knowledge about a state: R(delta) >= rank_delta and
/// W(delta) >= w(., delta) for every delta >= 0. R is non-increasing and W is
/// non-decreasing in delta.
class ApproxLowRankProfile {
 public:
  /// R = r, W = r delta.
  static ApproxLowRankProfile exact(int rank);
  /// (1 - lambda) rho + lambda I / N for rank(rho) <= r.
  static ApproxLowRankProfile depolarized(int rank, Eigen::Index dim, double lambda);
  /// Gibbs state with gap `gap` above the k lowest levels.
  static ApproxLowRankProfile gibbs(int k, Eigen::Index dim, double gap);
  /// Eigenvalues capped by C / i^2.
  static ApproxLowRankProfile power_law(double c, Eigen::Index dim);
  /// Step profile from breakpoints sorted by delta; the first must be 0.
  static ApproxLowRankProfile user(std::vector<ProfilePoint> points);
  /// User profile tight at every eigenvalue of a Hermitian operator.
  static ApproxLowRankProfile from_spectrum(const Operator& a);

  ProfileKind kind() const { return kind_; }
  std::string provenance() const { return to_string(kind_); }
  int rank_bound() const { return rank_; }
  Eigen::Index dim() const { return dim_; }
  double lambda() const { return lambda_; }
  double gap() const { return gap_; }
  double scale() const { return c_; }
  const std::vector<ProfilePoint>& points() const { return points_; }

  int R(double delta) const;
  double W(double delta) const;

  /// Largest delta with W(delta) <= mass. Closed form for the analytic
  /// families, bisection for user profiles. Throws InfeasibleError when no
  /// positive delta qualifies.
  double max_delta_for_mass(double mass) const;

  /// Threshold below which the depolarized and Gibbs profiles fall back to
  /// R = N, W = N delta.
  double knee() const;

  /// Largest deviation max(rank_delta - R, w - W) on the grid; <= 0 means
  /// the profile dominates.
  double domination_violation(const Operator& a, const std::vector<double>& grid) const;

 private:
  ProfileKind kind_ = ProfileKind::kExact;
  int rank_ = 0;
  Eigen::Index dim_ = 0;
  double lambda_ = 0.0;
  double gap_ = 0.0;
  double c_ = 0.0;
  std::vector<ProfilePoint> points_;
};

/// epsilon / (8 r): guarantees w((rho - sigma) / 2, delta_p) <= eps / 4 when
/// both ranks are at most r.
double choose_delta_p_rank(int r, double eps);

struct DeltaSelection {
  double delta_p = 0.0;
  double delta_rho = 0.0;
  double delta_sigma = 0.0;
  int rank_rho = 0;
  int rank_sigma = 0;
};

/// delta_p = 2 min(d1, d2, eps / 8 r1, eps / 8 r2) with W(d_i) <= eps / 8 and
/// r_i = R(d_i).
DeltaSelection select_delta_p(const ApproxLowRankProfile& p_rho,
                              const ApproxLowRankProfile& p_sigma, double eps);
double choose_delta_p_profile(const ApproxLowRankProfile& p_rho,
                              const ApproxLowRankProfile& p_sigma, double eps);

/// Composed bounds for (rho - sigma) / 2 when rho is (r1, delta, e1) and
/// sigma is (r2, delta, e2) approximately low rank.
struct LowRankBounds {
  int rank = 0;
  double delta = 0.0;
  double mass = 0.0;
};

LowRankBounds approx_low_rank_difference(int r1, double e1, int r2, double e2, double delta);
LowRankBounds approx_low_rank_difference(const ApproxLowRankProfile& p_rho,
                                         const ApproxLowRankProfile& p_sigma, double delta);

/// Test-only: largest delta with w(a, delta) <= mass, from the spectrum.
/// Capped at `cap`.
double oracle_delta_for_mass(const Operator& a, double mass, double cap = 1.0);

}  // namespace tdsim
