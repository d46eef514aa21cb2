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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glidesim/matchlang/expr.hpp"

namespace glidesim::matchlang {

enum class AdKind { Job, Slot, Entry, Cache, Other };

std::string_view kind_name(AdKind kind);
std::optional<AdKind> parse_kind(std::string_view name);

class InvalidAd : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Attribute map (name -> expression) describing a job, slot, entry point or
/// cache. Names are case-insensitive and stored lowercase; insertion order is
/// preserved. Every ad also exposes a read-only `kind` attribute holding its
/// kind name unless the ad defines `kind` itself.
class Ad {
public:
    using Attribute = std::pair<std::string, Expr>;

    explicit Ad(AdKind kind = AdKind::Other) : kind_(kind) {}

    AdKind kind() const { return kind_; }

    /// Inserts or replaces. Throws InvalidAd if `name` is not an identifier or is a keyword.
    Ad& set(std::string_view name, Expr value);
    Ad& set(std::string_view name, Value value) { return set(name, make_literal(std::move(value))); }
    Ad& set(std::string_view name, std::int64_t v) { return set(name, Value::integer(v)); }
    Ad& set(std::string_view name, int v) { return set(name, Value::integer(v)); }
    Ad& set(std::string_view name, double v) { return set(name, Value::real(v)); }
    Ad& set(std::string_view name, bool v) { return set(name, Value::boolean(v)); }
    Ad& set(std::string_view name, const char* v) { return set(name, Value::text(v)); }
    Ad& set(std::string_view name, std::string v) { return set(name, Value::text(std::move(v))); }
    /// Parses `text` as the attribute expression.
    Ad& set_expr(std::string_view name, std::string_view text);

    bool erase(std::string_view name);

    /// Expression bound to `name` (case-insensitive), including the built-in `kind`.
    const Expr* find(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name) != nullptr; }

    /// Evaluates the attribute with this ad as SELF and no TARGET.
    Value value_of(std::string_view name) const;
    std::optional<std::int64_t> get_integer(std::string_view name) const;
    std::optional<double> get_number(std::string_view name) const;
    std::optional<bool> get_bool(std::string_view name) const;
    std::optional<std::string> get_text(std::string_view name) const;

    const std::vector<Attribute>& attributes() const { return attrs_; }
    std::size_t size() const { return attrs_.size(); }

    friend bool operator==(const Ad& a, const Ad& b);

private:
    AdKind kind_;
    std::vector<Attribute> attrs_;
};

/// Diagnostic if the ad violates its kind's required attributes (JOB and SLOT
/// ads need `requirements`), nullopt otherwise.
std::optional<std::string> check_required_attributes(const Ad& ad);

/// True if `name` can be used as an attribute name (identifier, not a keyword).
bool valid_attribute_name(std::string_view name);

/// Line-oriented text form:
///
///     [slot]
///     name = "slot_p0000001"
///     cpus = 8
///     requirements = TARGET.requestcpus <= cpus
///
/// Ads are separated by one blank line. write_ads(read_ads(t)) == t for any t
/// produced by write_ads.
std::string write_ad(const Ad& ad);
std::string write_ads(const std::vector<Ad>& ads);

/// Parses the text form; '#' comment lines and blank lines are ignored.
/// Throws InvalidAd (with line number) or SyntaxError.
std::vector<Ad> read_ads(std::string_view text);

}  // namespace glidesim::matchlang
