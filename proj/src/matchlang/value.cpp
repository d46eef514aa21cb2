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

#include "glidesim/matchlang/value.hpp"

#include "glidesim/matchlang/expr.hpp"

namespace glidesim::matchlang {

Value Value::error(std::string message) {
    if (message.empty()) message = "error";
    return Value(Storage{ErrorValue{std::move(message)}});
}

std::optional<double> Value::to_number() const {
    if (is_integer()) return static_cast<double>(as_integer());
    if (is_real()) return as_real();
    return std::nullopt;
}

bool operator==(const Value& a, const Value& b) {
    // Reals compare bitwise-exact through ==; NaN never equals itself, which is fine
    // for structural comparison of parsed trees (the grammar cannot produce NaN).
    return a.storage_ == b.storage_;
}

std::string describe(const Value& v) {
    if (v.is_error()) return "error(\"" + v.error_message() + "\")";
    return unparse(make_literal(v));
}

}  // namespace glidesim::matchlang
