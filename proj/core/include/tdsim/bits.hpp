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
#include <vector>

#include <Eigen/Core>

namespace tdsim::bits {

// Bit position of qubit q in a basis index; qubit 0 is most significant.
inline int position(int q, int total) { return total - 1 - q; }

// offsets[l] is the basis-index contribution of local index l on `qubits`,
// whose first entry is the most significant local bit.
inline std::vector<Eigen::Index> offsets(const std::vector<int>& qubits, int total) {
  const std::size_t k = qubits.size();
  std::vector<Eigen::Index> out(std::size_t{1} << k, 0);
  for (std::size_t l = 0; l < out.size(); ++l) {
    Eigen::Index off = 0;
    for (std::size_t j = 0; j < k; ++j)
      if ((l >> (k - 1 - j)) & 1U) off |= Eigen::Index{1} << position(qubits[j], total);
    out[l] = off;
  }
  return out;
}

inline Eigen::Index mask(const std::vector<int>& qubits, int total) {
  Eigen::Index m = 0;
  for (int q : qubits) m |= Eigen::Index{1} << position(q, total);
  return m;
}

}  // namespace tdsim::bits
