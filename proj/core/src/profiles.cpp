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


#include "tdsim/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tdsim {

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::kExact: return "exact";
    case ProfileKind::kDepolarized: return "depolarized";
    case ProfileKind::kGibbs: return "gibbs";
    case ProfileKind::kPowerLaw: return "power-law";
    case ProfileKind::kUser: return "user";
  }
  return "user";
}

ProfileKind parse_profile_kind(std::string_view name) {
  for (ProfileKind k : {ProfileKind::kExact, ProfileKind::kDepolarized, ProfileKind::kGibbs,
                        ProfileKind::kPowerLaw, ProfileKind::kUser}) {
    if (name == to_string(k)) return k;
  }
  throw ArgumentError("unknown profile kind '" + std::string(name) + "'");
}

ApproxLowRankProfile ApproxLowRankProfile::exact(int rank) {
  if (rank < 0) throw ArgumentError("rank bound must be non-negative");
  ApproxLowRankProfile p;
  p.kind_ = ProfileKind::kExact;
  p.rank_ = rank;
  return p;
}

ApproxLowRankProfile ApproxLowRankProfile::depolarized(int rank, Eigen::Index dim, double lambda) {
  if (rank < 1 || dim < rank) throw ArgumentError("depolarized profile needs 1 <= r <= N");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ArgumentError("lambda must lie in [0, 1]");
  ApproxLowRankProfile p;
  p.kind_ = ProfileKind::kDepolarized;
  p.rank_ = rank;
  p.dim_ = dim;
  p.lambda_ = lambda;
  return p;
}

ApproxLowRankProfile ApproxLowRankProfile::gibbs(int k, Eigen::Index dim, double gap) {
  if (k < 1 || dim < k) throw ArgumentError("Gibbs profile needs 1 <= k <= N");
  if (!(gap >= 0.0)) throw ArgumentError("gap must be non-negative");
  ApproxLowRankProfile p;
  p.kind_ = ProfileKind::kGibbs;
  p.rank_ = k;
  p.dim_ = dim;
  p.gap_ = gap;
  return p;
}

ApproxLowRankProfile ApproxLowRankProfile::power_law(double c, Eigen::Index dim) {
  if (!(c > 0.0)) throw ArgumentError("power-law scale must be positive");
  if (dim < 2) throw ArgumentError("power-law profile needs N >= 2");
  ApproxLowRankProfile p;
  p.kind_ = ProfileKind::kPowerLaw;
  p.c_ = c;
  p.dim_ = dim;
  return p;
}

ApproxLowRankProfile ApproxLowRankProfile::user(std::vector<ProfilePoint> points) {
  if (points.empty() || points.front().delta != 0.0)
    throw ArgumentError("user profile must start at delta = 0");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].delta > points[i - 1].delta)) throw ArgumentError("user profile deltas must increase");
    if (points[i].rank > points[i - 1].rank) throw ArgumentError("user profile R must not increase");
    if (points[i].mass < points[i - 1].mass) throw ArgumentError("user profile W must not decrease");
  }
  ApproxLowRankProfile p;
  p.kind_ = ProfileKind::kUser;
  p.points_ = std::move(points);
  p.rank_ = p.points_.front().rank;
  return p;
}

ApproxLowRankProfile ApproxLowRankProfile::from_spectrum(const Operator& a) {
  std::vector<double> mags;
  for (double v : eigh(a).eigenvalues) mags.push_back(std::abs(v));
  std::sort(mags.begin(), mags.end());
  std::vector<ProfilePoint> points{{0.0, 0, 0.0}};
  for (double m : mags) points[0].rank += m > 0.0 ? 1 : 0;
  double mass = 0.0;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    mass += mags[i];
    if (i + 1 < mags.size() && mags[i + 1] == mags[i]) continue;
    if (mags[i] == 0.0) continue;
    const int above = static_cast<int>(mags.size() - i - 1);
    points.push_back({mags[i], above, mass});
  }
  ApproxLowRankProfile p = user(std::move(points));
  p.dim_ = a.rows();
  return p;
}

double ApproxLowRankProfile::knee() const {
  switch (kind_) {
    case ProfileKind::kDepolarized: return lambda_ / static_cast<double>(dim_);
    case ProfileKind::kGibbs: return 1.0 / (std::exp(gap_) * rank_ + 1.0);
    default: return 0.0;
  }
}

int ApproxLowRankProfile::R(double delta) const {
  if (delta < 0.0) throw ArgumentError("threshold must be non-negative");
  const auto n = static_cast<int>(dim_);
  switch (kind_) {
    case ProfileKind::kExact: return rank_;
    case ProfileKind::kDepolarized: return delta >= knee() ? rank_ : n;
    case ProfileKind::kGibbs: return delta > knee() ? rank_ : n;
    case ProfileKind::kPowerLaw: {
      if (delta >= c_) return 0;
      const double s = std::sqrt(c_ / delta);
      return s >= n ? n : static_cast<int>(std::floor(s));
    }
    case ProfileKind::kUser: {
      int r = points_.front().rank;
      for (const ProfilePoint& q : points_) {
        if (q.delta > delta) break;
        r = q.rank;
      }
      return r;
    }
  }
  return rank_;
}

double ApproxLowRankProfile::W(double delta) const {
  if (delta < 0.0) throw ArgumentError("threshold must be non-negative");
  const auto n = static_cast<double>(dim_);
  switch (kind_) {
    case ProfileKind::kExact: return rank_ * delta;
    case ProfileKind::kDepolarized:
      return delta >= knee() ? lambda_ * (n - rank_) / n + rank_ * delta : n * delta;
    case ProfileKind::kGibbs:
      return delta > knee() ? (n - rank_) * knee() + rank_ * delta : n * delta;
    case ProfileKind::kPowerLaw: {
      // Every eigenvalue is at most C, so past C the whole trace is small.
      if (delta >= c_) return 1.0;
      const double s = std::sqrt(c_ / delta);
      const double bound = c_ / (s - 1.0) - c_ / (n - 1.0);
      return std::clamp(bound, 0.0, 1.0);
    }
    case ProfileKind::kUser: {
      double w = points_.front().mass;
      for (const ProfilePoint& q : points_) {
        if (q.delta > delta) break;
        w = q.mass;
      }
      return w;
    }
  }
  return 0.0;
}

double ApproxLowRankProfile::max_delta_for_mass(double mass) const {
  if (!(mass > 0.0)) throw ArgumentError("mass budget must be positive");
  const auto n = static_cast<double>(dim_);
  double out = 0.0;
  switch (kind_) {
    case ProfileKind::kExact:
      out = rank_ == 0 ? std::numeric_limits<double>::infinity() : mass / rank_;
      break;
    case ProfileKind::kDepolarized:
    case ProfileKind::kGibbs: {
      const double t = knee();
      out = mass >= W(t) && rank_ > 0 ? (mass - (W(t) - rank_ * t)) / rank_ : mass / n;
      break;
    }
    case ProfileKind::kPowerLaw: {
      if (mass >= 1.0) return c_;
      const double a = mass + c_ / (n - 1.0);
      out = c_ * a * a / ((a + c_) * (a + c_));
      break;
    }
    case ProfileKind::kUser: {
      if (W(0.0) > mass) break;
      double lo = 0.0, hi = std::max(1.0, points_.back().delta);
      if (W(hi) <= mass) return hi;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (W(mid) <= mass ? lo : hi) = mid;
      }
      out = lo;
      break;
    }
  }
  if (!(out > 0.0))
    throw InfeasibleError("profile cannot reach mass " + std::to_string(mass) + " at any positive threshold");
  return out;
}

double ApproxLowRankProfile::domination_violation(const Operator& a, const std::vector<double>& grid) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (double d : grid) {
    worst = std::max(worst, static_cast<double>(rank_delta(a, d) - R(d)));
    worst = std::max(worst, w_small_eigen(a, d) - W(d));
  }
  return worst;
}

double choose_delta_p_rank(int r, double eps) {
  if (r < 1) throw ArgumentError("rank bound must be at least 1");
  if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("eps must lie in (0, 1)");
  return eps / (8.0 * r);
}

DeltaSelection select_delta_p(const ApproxLowRankProfile& p_rho, const ApproxLowRankProfile& p_sigma,
                              double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("eps must lie in (0, 1)");
  DeltaSelection s;
  s.delta_rho = p_rho.max_delta_for_mass(eps / 8.0);
  s.delta_sigma = p_sigma.max_delta_for_mass(eps / 8.0);
  s.rank_rho = p_rho.R(s.delta_rho);
  s.rank_sigma = p_sigma.R(s.delta_sigma);
  double m = std::min(s.delta_rho, s.delta_sigma);
  if (s.rank_rho > 0) m = std::min(m, eps / (8.0 * s.rank_rho));
  if (s.rank_sigma > 0) m = std::min(m, eps / (8.0 * s.rank_sigma));
  if (!std::isfinite(m)) m = 0.5;  // both profiles are zero
  s.delta_p = 2.0 * m;
  return s;
}

double choose_delta_p_profile(const ApproxLowRankProfile& p_rho, const ApproxLowRankProfile& p_sigma,
                              double eps) {
  return select_delta_p(p_rho, p_sigma, eps).delta_p;
}

LowRankBounds approx_low_rank_difference(int r1, double e1, int r2, double e2, double delta) {
  return {r1 + r2, delta / 2.0, ((r1 + r2) * delta + e1 + e2) / 2.0};
}

LowRankBounds approx_low_rank_difference(const ApproxLowRankProfile& p_rho,
                                         const ApproxLowRankProfile& p_sigma, double delta) {
  return approx_low_rank_difference(p_rho.R(delta), p_rho.W(delta), p_sigma.R(delta), p_sigma.W(delta), delta);
}

double oracle_delta_for_mass(const Operator& a, double mass, double cap) {
  std::vector<double> mags;
  for (double v : eigh(a).eigenvalues) mags.push_back(std::abs(v));
  std::sort(mags.begin(), mags.end());
  double acc = 0.0;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    acc += mags[i];
    if (acc > mass) {
      // Any threshold strictly below mags[i] keeps it out of the mass.
      const double below = i > 0 ? mags[i - 1] : 0.0;
      const double d = std::max(below, mags[i] * (1.0 - 1e-6));
      if (!(d > 0.0)) throw InfeasibleError("spectrum leaves no positive threshold");
      return std::min(cap, d);
    }
  }
  return cap;
}

}  // namespace tdsim
