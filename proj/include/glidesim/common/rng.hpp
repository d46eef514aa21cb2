// Copyright 2026 The glidesim Authors
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
#include <random>
#include <string_view>

namespace glidesim {

/// 64-bit FNV-1a. Stable across platforms, unlike std::hash.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

using Rng = std::mt19937_64;

/// Independent generator for a named stream ("site/CIT", "workload/bw", ...).
/// Streams depend only on (seed, name), so adding a stream leaves the others
/// untouched.
Rng substream(std::uint64_t seed, std::string_view name);

/// Uniform draw in [0, 1).
double uniform01(Rng& rng);

}  // namespace glidesim
