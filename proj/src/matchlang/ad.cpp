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

#include "glidesim/matchlang/ad.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "glidesim/matchlang/evaluate.hpp"
#include "glidesim/matchlang/parser.hpp"

namespace glidesim::matchlang {

namespace {

bool is_lower_ident(std::string_view s) {
    return std::none_of(s.begin(), s.end(), [](unsigned char c) { return std::isupper(c); });
}

const Expr& kind_expr(AdKind kind) {
    static const std::array<Expr, 5> exprs = {
        make_literal(Value::text("job")),   make_literal(Value::text("slot")),
        make_literal(Value::text("entry")), make_literal(Value::text("cache")),
        make_literal(Value::text("other")),
    };
    return exprs[static_cast<std::size_t>(kind)];
}

}  // namespace

std::string_view kind_name(AdKind kind) {
    switch (kind) {
        case AdKind::Job: return "job";
        case AdKind::Slot: return "slot";
        case AdKind::Entry: return "entry";
        case AdKind::Cache: return "cache";
        case AdKind::Other: return "other";
    }
    return "other";
}

std::optional<AdKind> parse_kind(std::string_view name) {
    const std::string folded = fold_case(name);
    for (AdKind k : {AdKind::Job, AdKind::Slot, AdKind::Entry, AdKind::Cache, AdKind::Other}) {
        if (kind_name(k) == folded) return k;
    }
    return std::nullopt;
}

bool valid_attribute_name(std::string_view name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
    if (!std::all_of(name.begin(), name.end(),
                     [](unsigned char c) { return std::isalnum(c) || c == '_'; })) {
        return false;
    }
    static constexpr std::string_view reserved[] = {"true", "false", "undefined", "error",
                                                    "target", "self", "my"};
    const std::string folded = fold_case(name);
    return std::find(std::begin(reserved), std::end(reserved), folded) == std::end(reserved);
}

Ad& Ad::set(std::string_view name, Expr value) {
    if (!valid_attribute_name(name)) {
        throw InvalidAd("invalid attribute name '" + std::string(name) + "'");
    }
    std::string folded = fold_case(name);
    for (auto& [n, e] : attrs_) {
        if (n == folded) {
            e = std::move(value);
            return *this;
        }
    }
    attrs_.emplace_back(std::move(folded), std::move(value));
    return *this;
}

Ad& Ad::set_expr(std::string_view name, std::string_view text) { return set(name, parse(text)); }

bool Ad::erase(std::string_view name) {
    const std::string folded = fold_case(name);
    auto it = std::find_if(attrs_.begin(), attrs_.end(), [&](const Attribute& a) { return a.first == folded; });
    if (it == attrs_.end()) return false;
    attrs_.erase(it);
    return true;
}

const Expr* Ad::find(std::string_view name) const {
    // Evaluator lookups arrive already folded; only fold when needed.
    std::string folded;
    if (!is_lower_ident(name)) {
        folded = fold_case(name);
        name = folded;
    }
    for (const auto& [n, e] : attrs_) {
        if (n == name) return &e;
    }
    if (name == "kind") return &kind_expr(kind_);
    return nullptr;
}

Value Ad::value_of(std::string_view name) const {
    const Expr* e = find(name);
    if (!e) return Value::undefined();
    return evaluate(*e, *this);
}

std::optional<std::int64_t> Ad::get_integer(std::string_view name) const {
    Value v = value_of(name);
    if (v.is_integer()) return v.as_integer();
    return std::nullopt;
}

std::optional<double> Ad::get_number(std::string_view name) const { return value_of(name).to_number(); }

std::optional<bool> Ad::get_bool(std::string_view name) const {
    Value v = value_of(name);
    if (v.is_boolean()) return v.as_boolean();
    return std::nullopt;
}

std::optional<std::string> Ad::get_text(std::string_view name) const {
    Value v = value_of(name);
    if (v.is_text()) return v.as_text();
    return std::nullopt;
}

bool operator==(const Ad& a, const Ad& b) { return a.kind_ == b.kind_ && a.attrs_ == b.attrs_; }

std::optional<std::string> check_required_attributes(const Ad& ad) {
    if ((ad.kind() == AdKind::Job || ad.kind() == AdKind::Slot) && !ad.contains("requirements")) {
        return std::string(kind_name(ad.kind())) + " ad is missing 'requirements'";
    }
    return std::nullopt;
}

}  // namespace glidesim::matchlang
