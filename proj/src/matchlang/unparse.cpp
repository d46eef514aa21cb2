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

#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "glidesim/matchlang/expr.hpp"

namespace glidesim::matchlang {

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string format_real(double v) {
    if (std::isnan(v)) return "error";
    if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string out(buf, end);
    if (out.find_first_of(".e") == std::string::npos) out += ".0";
    return out;
}

std::string literal_text(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Undefined>) {
                return "undefined";
            } else if constexpr (std::is_same_v<T, ErrorValue>) {
                return "error";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                if (x == std::numeric_limits<std::int64_t>::min()) return "(-9223372036854775807 - 1)";
                return std::to_string(x);
            } else if constexpr (std::is_same_v<T, double>) {
                return format_real(x);
            } else if constexpr (std::is_same_v<T, bool>) {
                return x ? "true" : "false";
            } else {
                return quote(x);
            }
        },
        v.storage());
}

void emit(const Expr& e, std::string& out);

void emit_operand(const Expr& e, std::string& out) {
    const Node& n = e.node();
    if (std::holds_alternative<Binary>(n) || std::holds_alternative<Unary>(n)) {
        out += '(';
        emit(e, out);
        out += ')';
    } else {
        emit(e, out);
    }
}

void emit(const Expr& e, std::string& out) {
    std::visit(
        [&out](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Literal>) {
                out += literal_text(n.value);
            } else if constexpr (std::is_same_v<T, AttrRef>) {
                if (n.scope == Scope::Self) out += "SELF.";
                if (n.scope == Scope::Target) out += "TARGET.";
                out += n.name;
            } else if constexpr (std::is_same_v<T, Unary>) {
                out += n.op == UnaryOp::Not ? '!' : '-';
                emit_operand(n.operand, out);
            } else if constexpr (std::is_same_v<T, Binary>) {
                emit_operand(n.lhs, out);
                out += ' ';
                out += operator_token(n.op);
                out += ' ';
                emit_operand(n.rhs, out);
            } else {
                out += function_name(n.fn);
                out += '(';
                for (std::size_t i = 0; i < n.args.size(); ++i) {
                    if (i) out += ", ";
                    emit(n.args[i], out);
                }
                out += ')';
            }
        },
        static_cast<const Node::variant&>(e.node()));
}

}  // namespace

std::string unparse(const Expr& e) {
    std::string out;
    emit(e, out);
    return out;
}

}  // namespace glidesim::matchlang
