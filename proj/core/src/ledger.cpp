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

#include "tdsim/ledger.hpp"

#include <limits>
#include <ostream>

namespace tdsim {

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t add(std::uint64_t a, std::uint64_t b, bool& saturated) {
  if (a > kMax - b) {
    saturated = true;
    return kMax;
  }
  return a + b;
}

std::uint64_t mul(std::uint64_t a, std::uint64_t b, bool& saturated) {
  if (a != 0 && b > kMax / a) {
    saturated = true;
    return kMax;
  }
  return a * b;
}

}  // namespace

std::string samples_key(const std::string& state) { return "samples:" + state; }

void QueryLedger::charge(const std::string& name, std::uint64_t count) {
  std::uint64_t& slot = counts_[name];
  slot = add(slot, count, saturated_);
}

void QueryLedger::charge(const QueryCost& cost, std::uint64_t times) {
  for (const auto& [name, n] : cost) charge(name, mul(n, times, saturated_));
}

void QueryLedger::charge_samples(const std::string& state, std::uint64_t count) {
  charge(samples_key(state), count);
}

void QueryLedger::merge(const QueryLedger& other) {
  for (const auto& [name, n] : other.counts_) charge(name, n);
  saturated_ = saturated_ || other.saturated_;
}

std::uint64_t QueryLedger::count(const std::string& name) const {
  const auto it = counts_.find(name);
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t QueryLedger::total_queries() const {
  bool ignored = false;
  std::uint64_t total = 0;
  for (const auto& [name, n] : counts_)
    if (name.rfind("O_", 0) == 0) total = add(total, n, ignored);
  return total;
}

std::uint64_t QueryLedger::total_samples() const {
  bool ignored = false;
  std::uint64_t total = 0;
  for (const auto& [name, n] : counts_)
    if (name.rfind("samples:", 0) == 0) total = add(total, n, ignored);
  return total;
}

void QueryLedger::write_csv(std::ostream& os, const std::string& run_id, bool header) const {
  if (header) os << "run_id,oracle,count\n";
  for (const auto& [name, n] : counts_) os << run_id << ',' << name << ',' << n << '\n';
}

}  // namespace tdsim
