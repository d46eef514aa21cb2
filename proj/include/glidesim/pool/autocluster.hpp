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
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "glidesim/matchlang/ad.hpp"

namespace glidesim::pool {

/// Groups jobs that no requirements or rank expression can tell apart, so
/// that match results computed for one member hold for all of them.
///
/// A job's signature covers every attribute named anywhere in the observer
/// ads (slot templates) or in the job's own expressions, plus `requirements`
/// and `rank`. Slot ads later presented to the negotiator must not reference
/// attributes outside what their templates referenced.
class Autoclusterer {
public:
    explicit Autoclusterer(std::span<const matchlang::Ad> observers);

    std::uint64_t assign(const matchlang::Ad& job);

    std::size_t cluster_count() const { return ids_.size(); }
    const std::set<std::string>& observed_attributes() const { return observed_; }

private:
    const std::vector<std::string>& references_of(const matchlang::Expr& e);

    std::set<std::string> observed_;
    std::map<std::string, std::uint64_t> ids_;
    std::unordered_map<const void*, std::pair<matchlang::Expr, std::vector<std::string>>> refs_cache_;
};

}  // namespace glidesim::pool
