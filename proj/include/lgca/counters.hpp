// Copyright 2026 The LGCA Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LGCA_COUNTERS_HPP
#define LGCA_COUNTERS_HPP

#include <cstdint>

namespace lgca {

/// Work performed during one run. Per-run state: not shared across threads.
struct OpCounters {
  std::uint64_t matrix_entries = 0;
  std::uint64_t sort_comparisons = 0;
  std::uint64_t encoder_calls = 0;
  std::uint64_t expansions = 0;

  std::uint64_t total() const noexcept { return matrix_entries + sort_comparisons; }

  OpCounters& operator+=(const OpCounters& o) noexcept {
    matrix_entries += o.matrix_entries;
    sort_comparisons += o.sort_comparisons;
    encoder_calls += o.encoder_calls;
    expansions += o.expansions;
    return *this;
  }
  bool operator==(const OpCounters&) const = default;
};

}  // namespace lgca

#endif  // LGCA_COUNTERS_HPP
