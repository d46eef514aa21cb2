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

#include <span>
#include <vector>

#include "glidesim/matchlang/ad.hpp"

namespace glidesim::matchlang {

/// True iff `a.requirements`, evaluated with SELF = a and TARGET = b, is
/// Boolean(true). Undefined, Error and a missing `requirements` all count as
/// no match.
bool requirements_match(const Ad& a, const Ad& b);

/// Both sides accept each other.
bool symmetric_match(const Ad& job, const Ad& slot);

/// Numeric value of `job.rank` against `candidate`; 0 when absent or non-numeric.
double rank_value(const Ad& job, const Ad& candidate);

/// Permutation of candidate indices: descending rank, ties by the candidate's
/// `name` attribute ascending, then input order.
std::vector<std::size_t> rank_permutation(const Ad& job, std::span<const Ad* const> candidates);

std::vector<Ad> rank_order(const Ad& job, std::span<const Ad> candidates);

}  // namespace glidesim::matchlang
