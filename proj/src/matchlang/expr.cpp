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

#include "glidesim/matchlang/expr.hpp"

#include <algorithm>
#include <cctype>

namespace glidesim::matchlang {

namespace {

const std::shared_ptr<const Node>& undefined_node() {
    static const auto node = std::make_shared<const Node>(Literal{Value::undefined()});
    return node;
}

bool equal_nodes(const Node& a, const Node& b);

bool equal_exprs(const Expr& a, const Expr& b) {
    return a.identity() == b.identity() || equal_nodes(a.node(), b.node());
}

bool equal_nodes(const Node& a, const Node& b) {
    if (a.index() != b.index()) return false;
    return std::visit(
        [&b](const auto& lhs) -> bool {
            using T = std::decay_t<decltype(lhs)>;
            const auto& rhs = std::get<T>(b);
            if constexpr (std::is_same_v<T, Literal>) {
                return lhs.value == rhs.value;
            } else if constexpr (std::is_same_v<T, AttrRef>) {
                return lhs.scope == rhs.scope && lhs.name == rhs.name;
            } else if constexpr (std::is_same_v<T, Unary>) {
                return lhs.op == rhs.op && equal_exprs(lhs.operand, rhs.operand);
            } else if constexpr (std::is_same_v<T, Binary>) {
                return lhs.op == rhs.op && equal_exprs(lhs.lhs, rhs.lhs) && equal_exprs(lhs.rhs, rhs.rhs);
            } else {
                return lhs.fn == rhs.fn &&
                       std::equal(lhs.args.begin(), lhs.args.end(), rhs.args.begin(), rhs.args.end(),
                                  equal_exprs);
            }
        },
        static_cast<const Node::variant&>(a));
}

}  // namespace

Expr::Expr() : node_(undefined_node()) {}

Expr::Expr(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

bool operator==(const Expr& a, const Expr& b) { return equal_exprs(a, b); }

Expr make_literal(Value v) { return Expr(Node{Literal{std::move(v)}}); }
Expr make_ref(Scope scope, std::string_view name) { return Expr(Node{AttrRef{scope, fold_case(name)}}); }
Expr make_unary(UnaryOp op, Expr operand) { return Expr(Node{Unary{op, std::move(operand)}}); }
Expr make_binary(BinaryOp op, Expr lhs, Expr rhs) {
    return Expr(Node{Binary{op, std::move(lhs), std::move(rhs)}});
}
Expr make_call(Function fn, std::vector<Expr> args) { return Expr(Node{Call{fn, std::move(args)}}); }

std::string fold_case(std::string_view name) {
    std::string out(name);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view function_name(Function fn) {
    switch (fn) {
        case Function::Min: return "min";
        case Function::Max: return "max";
        case Function::Abs: return "abs";
        case Function::Floor: return "floor";
        case Function::Ceil: return "ceil";
        case Function::IsUndefined: return "isUndefined";
    }
    return "?";
}

Arity function_arity(Function fn) {
    switch (fn) {
        case Function::Min:
        case Function::Max: return {1, 64};
        default: return {1, 1};
    }
}

std::string_view operator_token(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Mod: return "%";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::And: return "&&";
        case BinaryOp::Or: return "||";
    }
    return "?";
}

void collect_references(const Expr& e, std::vector<std::string>& out) {
    std::visit(
        [&out](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, AttrRef>) {
                out.push_back(n.name);
            } else if constexpr (std::is_same_v<T, Unary>) {
                collect_references(n.operand, out);
            } else if constexpr (std::is_same_v<T, Binary>) {
                collect_references(n.lhs, out);
                collect_references(n.rhs, out);
            } else if constexpr (std::is_same_v<T, Call>) {
                for (const auto& a : n.args) collect_references(a, out);
            }
        },
        static_cast<const Node::variant&>(e.node()));
}

}  // namespace glidesim::matchlang
