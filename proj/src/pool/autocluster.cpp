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

#include "glidesim/pool/autocluster.hpp"

#include <variant>

namespace glidesim::pool {

using matchlang::Ad;
using matchlang::Expr;

Autoclusterer::Autoclusterer(std::span<const Ad> observers) {
    observed_.insert("requirements");
    observed_.insert("rank");
    for (const Ad& ad : observers) {
        for (const auto& [name, expr] : ad.attributes()) {
            std::vector<std::string> refs;
            matchlang::collect_references(expr, refs);
            observed_.insert(refs.begin(), refs.end());
        }
    }
}

const std::vector<std::string>& Autoclusterer::references_of(const Expr& e) {
    auto it = refs_cache_.find(e.identity());
    if (it == refs_cache_.end()) {
        std::vector<std::string> refs;
        matchlang::collect_references(e, refs);
        it = refs_cache_.emplace(e.identity(), std::make_pair(e, std::move(refs))).first;
    }
    return it->second.second;
}

std::uint64_t Autoclusterer::assign(const Ad& job) {
    static const std::vector<std::string> none;
    std::set<std::string> significant = observed_;
    for (const auto& [name, expr] : job.attributes()) {
        if (std::holds_alternative<matchlang::Literal>(expr.node())) continue;
        const auto& refs = references_of(expr);
        significant.insert(refs.begin(), refs.end());
    }
    std::string signature;
    for (const std::string& name : significant) {
        signature += name;
        if (const Expr* e = job.find(name)) {
            signature += '=';
            signature += matchlang::unparse(*e);
        }
        signature += '\n';
    }
    const auto [pos, inserted] = ids_.emplace(std::move(signature), ids_.size());
    return pos->second;
}

}  // namespace glidesim::pool
