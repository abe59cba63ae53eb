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
#include <map>
#include <string>

#include "tdsim/block_encoding.hpp"

namespace tdsim {

/// Monotone counters of oracle queries, channel uses and consumed samples.
/// Sample counters are keyed "samples:<state>". Additions saturate at
/// UINT64_MAX and set saturated().
class QueryLedger {
 public:
  void charge(const std::string& name, std::uint64_t count);
  void charge(const QueryCost& cost, std::uint64_t times = 1);
  void charge_samples(const std::string& state, std::uint64_t count);
  void merge(const QueryLedger& other);

  std::uint64_t count(const std::string& name) const;
  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }

  /// Sum over base oracles, the keys starting with "O_".
  std::uint64_t total_queries() const;
  std::uint64_t total_samples() const;
  bool saturated() const { return saturated_; }

  /// Rows "run_id,oracle,count" in key order.
  void write_csv(std::ostream& os, const std::string& run_id, bool header = true) const;

 private:
  std::map<std::string, std::uint64_t> counts_;
  bool saturated_ = false;
};

std::string samples_key(const std::string& state);

}  // namespace tdsim
