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

#include "glidesim/matchlang/match.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "glidesim/matchlang/evaluate.hpp"

namespace glidesim::matchlang {

bool requirements_match(const Ad& a, const Ad& b) {
    const Expr* req = a.find("requirements");
    if (!req) return false;
    return evaluate(*req, a, &b).is_true();
}

bool symmetric_match(const Ad& job, const Ad& slot) {
    return requirements_match(job, slot) && requirements_match(slot, job);
}

double rank_value(const Ad& job, const Ad& candidate) {
    const Expr* rank = job.find("rank");
    if (!rank) return 0.0;
    const Value v = evaluate(*rank, job, &candidate);
    auto number = v.to_number();
    if (!number || std::isnan(*number)) return 0.0;
    return *number;
}

std::vector<std::size_t> rank_permutation(const Ad& job, std::span<const Ad* const> candidates) {
    struct Key {
        double rank;
        std::string name;
    };
    std::vector<Key> keys;
    keys.reserve(candidates.size());
    for (const Ad* c : candidates) {
        keys.push_back({rank_value(job, *c), c->get_text("name").value_or("")});
    }
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&keys](std::size_t a, std::size_t b) {
        if (keys[a].rank != keys[b].rank) return keys[a].rank > keys[b].rank;
        return keys[a].name < keys[b].name;
    });
    return order;
}

std::vector<Ad> rank_order(const Ad& job, std::span<const Ad> candidates) {
    std::vector<const Ad*> ptrs;
    ptrs.reserve(candidates.size());
    for (const Ad& c : candidates) ptrs.push_back(&c);
    std::vector<Ad> out;
    out.reserve(candidates.size());
    for (std::size_t i : rank_permutation(job, ptrs)) out.push_back(candidates[i]);
    return out;
}

}  // namespace glidesim::matchlang
