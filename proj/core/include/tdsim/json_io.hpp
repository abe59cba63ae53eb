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

#include <cstdint>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "tdsim/algorithms.hpp"
#include "tdsim/block_encoding.hpp"
#include "tdsim/channels.hpp"
#include "tdsim/fixtures.hpp"
#include "tdsim/ledger.hpp"
#include "tdsim/poly_svt.hpp"
#include "tdsim/profiles.hpp"

namespace tdsim {

using Json = nlohmann::json;

/// {"dim": d, "entries": [[re, im], ...]} in row-major order.
Json to_json(const Operator& a);
Operator operator_from_json(const Json& j);

/// Operator schema plus validation as a normalized density operator.
DensityOperator density_from_json(const Json& j);

Json to_json(const BlockEncoding& b);
BlockEncoding block_encoding_from_json(const Json& j);

/// {"cheb_odd_coeffs": [...], "degree": d, "delta": x, "eps": y}
Json to_json(const OddPolynomial& p);
OddPolynomial polynomial_from_json(const Json& j);

Json to_json(const ChannelModel& e);
Json to_json(const QueryLedger& ledger);

Json to_json(const ApproxLowRankProfile& p);
ApproxLowRankProfile profile_from_json(const Json& j);

Json to_json(const FixtureSpec& s);
FixtureSpec fixture_spec_from_json(const Json& j);
/// {"spec": ..., "state": operator, "profile": ...}
Json to_json(const Fixture& f);
Fixture fixture_from_json(const Json& j);

Json to_json(const EstimateReport& r);
Json to_json(const SwapTestReport& r);

/// Stable CSV layout of one estimate.
inline constexpr const char* kCsvHeader =
    "seed,mode,eps,delta_p,estimate,exact,abs_error,queries_total,samples_total";
std::string csv_row(std::uint64_t seed, const EstimateReport& r);
std::string csv_row(std::uint64_t seed, const SwapTestReport& r, double eps);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace tdsim
