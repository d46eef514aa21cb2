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

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "glidesim/matchlang/value.hpp"

namespace glidesim::matchlang {

enum class Scope { Self, Target, Unscoped };
enum class UnaryOp { Not, Neg };
enum class BinaryOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };
enum class Function { Min, Max, Abs, Floor, Ceil, IsUndefined };

struct Node;

/// Immutable expression tree. Copies share structure; equality is structural.
class Expr {
public:
    /// Literal undefined.
    Expr();
    explicit Expr(Node node);

    const Node& node() const { return *node_; }
    /// Identity of the shared node; stable for the lifetime of any copy.
    const void* identity() const { return node_.get(); }

    friend bool operator==(const Expr& a, const Expr& b);

private:
    std::shared_ptr<const Node> node_;
};

struct Literal {
    Value value;
};

struct AttrRef {
    Scope scope = Scope::Unscoped;
    std::string name;  // canonical lowercase
};

struct Unary {
    UnaryOp op;
    Expr operand;
};

struct Binary {
    BinaryOp op;
    Expr lhs;
    Expr rhs;
};

struct Call {
    Function fn;
    std::vector<Expr> args;
};

struct Node : std::variant<Literal, AttrRef, Unary, Binary, Call> {
    using variant::variant;
};

Expr make_literal(Value v);
Expr make_ref(Scope scope, std::string_view name);
Expr make_unary(UnaryOp op, Expr operand);
Expr make_binary(BinaryOp op, Expr lhs, Expr rhs);
Expr make_call(Function fn, std::vector<Expr> args);

inline Expr operator&&(Expr a, Expr b) { return make_binary(BinaryOp::And, std::move(a), std::move(b)); }
inline Expr operator||(Expr a, Expr b) { return make_binary(BinaryOp::Or, std::move(a), std::move(b)); }

/// Canonical lowercase spelling used for attribute names.
std::string fold_case(std::string_view name);

std::string_view function_name(Function fn);
std::string_view operator_token(BinaryOp op);

/// Accepted argument count range for a function.
struct Arity {
    std::size_t min;
    std::size_t max;
};
Arity function_arity(Function fn);

/// Canonical text: binary sub-expressions fully parenthesized, top level bare.
/// parse(unparse(e)) == e for any tree the parser can produce.
std::string unparse(const Expr& e);

/// Attribute names referenced anywhere in the tree, any scope.
void collect_references(const Expr& e, std::vector<std::string>& out);

}  // namespace glidesim::matchlang
