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

#include "glidesim/matchlang/ad.hpp"
#include "glidesim/matchlang/expr.hpp"
#include "glidesim/matchlang/value.hpp"

namespace glidesim::matchlang {

/// Longest chain of attribute references followed before evaluation yields an
/// Error. A reference back into an attribute already being resolved yields
/// Undefined instead.
inline constexpr int kMaxResolutionDepth = 32;

/// Three-valued (Kleene) evaluation. Never throws: malformed operations
/// produce Error values, missing attributes produce Undefined.
///
/// Unscoped references resolve in `self` first, then in `target`. An
/// attribute found in the target ad is evaluated with the roles swapped.
Value evaluate(const Expr& expr, const Ad& self, const Ad* target = nullptr);

inline Value evaluate(const Expr& expr, const Ad& self, const Ad& target) {
    return evaluate(expr, self, &target);
}

}  // namespace glidesim::matchlang
