// Copyright 2026 The snforge Authors
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

#ifndef SNFORGE_SEEDING_HPP
#define SNFORGE_SEEDING_HPP

#include <cstddef>
#include <cstdint>
#include <functional>

namespace snforge {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed for stream `index` under `master`. Streams are independent of the
/// order in which they are requested, so trials can run on any thread.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index
/// is visited exactly once; callers write results into per-index slots.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace snforge

#endif  // SNFORGE_SEEDING_HPP
