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
#include <optional>
#include <string>
#include <variant>

namespace glidesim::matchlang {

struct Undefined {
    friend bool operator==(const Undefined&, const Undefined&) = default;
};

struct ErrorValue {
    std::string message;
    friend bool operator==(const ErrorValue&, const ErrorValue&) = default;
};

/// Result of evaluating an expression. Exactly one alternative is populated;
/// an Error always carries a non-empty message.
class Value {
public:
    using Storage = std::variant<Undefined, ErrorValue, std::int64_t, double, bool, std::string>;

    Value() = default;

    static Value undefined() { return Value(Storage{Undefined{}}); }
    static Value error(std::string message);
    static Value integer(std::int64_t v) { return Value(Storage{v}); }
    static Value real(double v) { return Value(Storage{v}); }
    static Value boolean(bool v) { return Value(Storage{v}); }
    static Value text(std::string v) { return Value(Storage{std::move(v)}); }

    bool is_undefined() const { return std::holds_alternative<Undefined>(storage_); }
    bool is_error() const { return std::holds_alternative<ErrorValue>(storage_); }
    bool is_integer() const { return std::holds_alternative<std::int64_t>(storage_); }
    bool is_real() const { return std::holds_alternative<double>(storage_); }
    bool is_boolean() const { return std::holds_alternative<bool>(storage_); }
    bool is_text() const { return std::holds_alternative<std::string>(storage_); }
    bool is_number() const { return is_integer() || is_real(); }

    /// True only for Boolean(true).
    bool is_true() const { return is_boolean() && std::get<bool>(storage_); }

    std::int64_t as_integer() const { return std::get<std::int64_t>(storage_); }
    double as_real() const { return std::get<double>(storage_); }
    bool as_boolean() const { return std::get<bool>(storage_); }
    const std::string& as_text() const { return std::get<std::string>(storage_); }
    const std::string& error_message() const { return std::get<ErrorValue>(storage_).message; }

    /// Integer or Real widened to double; nullopt otherwise.
    std::optional<double> to_number() const;

    const Storage& storage() const { return storage_; }

    friend bool operator==(const Value& a, const Value& b);

private:
    explicit Value(Storage s) : storage_(std::move(s)) {}
    Storage storage_;
};

/// Human-readable rendering, e.g. `7`, `2.5`, `"idle"`, `undefined`, `error("division by zero")`.
std::string describe(const Value& v);

}  // namespace glidesim::matchlang
