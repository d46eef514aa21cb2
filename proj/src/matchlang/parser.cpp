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

#include "glidesim/matchlang/parser.hpp"

#include <optional>

#include "lexer.hpp"

namespace glidesim::matchlang {

using detail::Token;
using detail::TokenKind;

SyntaxError::SyntaxError(std::string message, int line, int column, std::string token)
    : std::runtime_error("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message + (token.empty() ? " at end of input" : " near '" + token + "'")),
      line_(line),
      column_(column),
      token_(std::move(token)),
      detail_(std::move(message)) {}

namespace {

std::optional<Function> lookup_function(const std::string& folded) {
    if (folded == "min") return Function::Min;
    if (folded == "max") return Function::Max;
    if (folded == "abs") return Function::Abs;
    if (folded == "floor") return Function::Floor;
    if (folded == "ceil") return Function::Ceil;
    if (folded == "isundefined") return Function::IsUndefined;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Expr run() {
        Expr e = parse_or();
        if (peek().kind != TokenKind::End) fail("unexpected token");
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    bool at_punct(std::string_view p) const {
        return peek().kind == TokenKind::Punct && peek().text == p;
    }

    bool accept(std::string_view p) {
        if (!at_punct(p)) return false;
        ++pos_;
        return true;
    }

    void expect(std::string_view p) {
        if (!accept(p)) fail("expected '" + std::string(p) + "'");
    }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string spelling = t.kind == TokenKind::String ? "\"" + t.text + "\"" : t.text;
        throw SyntaxError(msg, t.line, t.column, spelling);
    }

    Expr parse_or() {
        Expr lhs = parse_and();
        while (accept("||")) lhs = make_binary(BinaryOp::Or, std::move(lhs), parse_and());
        return lhs;
    }

    Expr parse_and() {
        Expr lhs = parse_not();
        while (accept("&&")) lhs = make_binary(BinaryOp::And, std::move(lhs), parse_not());
        return lhs;
    }

    Expr parse_not() {
        if (accept("!")) return make_unary(UnaryOp::Not, parse_not());
        return parse_comparison();
    }

    Expr parse_comparison() {
        Expr lhs = parse_additive();
        for (;;) {
            std::optional<BinaryOp> op;
            if (at_punct("<")) op = BinaryOp::Lt;
            else if (at_punct("<=")) op = BinaryOp::Le;
            else if (at_punct(">")) op = BinaryOp::Gt;
            else if (at_punct(">=")) op = BinaryOp::Ge;
            else if (at_punct("==")) op = BinaryOp::Eq;
            else if (at_punct("!=")) op = BinaryOp::Ne;
            if (!op) return lhs;
            ++pos_;
            lhs = make_binary(*op, std::move(lhs), parse_additive());
        }
    }

    Expr parse_additive() {
        Expr lhs = parse_multiplicative();
        for (;;) {
            if (accept("+")) lhs = make_binary(BinaryOp::Add, std::move(lhs), parse_multiplicative());
            else if (accept("-")) lhs = make_binary(BinaryOp::Sub, std::move(lhs), parse_multiplicative());
            else return lhs;
        }
    }

    Expr parse_multiplicative() {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept("*")) lhs = make_binary(BinaryOp::Mul, std::move(lhs), parse_unary());
            else if (accept("/")) lhs = make_binary(BinaryOp::Div, std::move(lhs), parse_unary());
            else if (accept("%")) lhs = make_binary(BinaryOp::Mod, std::move(lhs), parse_unary());
            else return lhs;
        }
    }

    Expr parse_unary() {
        if (accept("-")) return make_unary(UnaryOp::Neg, parse_unary());
        return parse_primary();
    }

    Expr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::Integer: ++pos_; return make_literal(Value::integer(t.integer));
            case TokenKind::Real: ++pos_; return make_literal(Value::real(t.real));
            case TokenKind::String: ++pos_; return make_literal(Value::text(t.text));
            case TokenKind::Identifier: return parse_identifier();
            case TokenKind::End: fail("unexpected end of input");
            case TokenKind::Punct:
                if (accept("(")) {
                    Expr inner = parse_or();
                    expect(")");
                    return inner;
                }
                fail("unexpected token");
        }
        fail("unexpected token");
    }

    Expr parse_identifier() {
        const std::string folded = fold_case(next().text);
        if (folded == "true") return make_literal(Value::boolean(true));
        if (folded == "false") return make_literal(Value::boolean(false));
        if (folded == "undefined") return make_literal(Value::undefined());
        if (folded == "error") return make_literal(Value::error("error literal"));

        if (at_punct("(")) {
            --pos_;
            auto fn = lookup_function(folded);
            if (!fn) fail("unknown function");
            ++pos_;
            return parse_call(*fn);
        }
        if (accept(".")) {
            Scope scope;
            if (folded == "target") {
                scope = Scope::Target;
            } else if (folded == "self" || folded == "my") {
                scope = Scope::Self;
            } else {
                pos_ -= 2;
                fail("unknown scope '" + folded + "'");
            }
            if (peek().kind != TokenKind::Identifier) fail("expected attribute name after scope");
            return make_ref(scope, next().text);
        }
        return make_ref(Scope::Unscoped, folded);
    }

    Expr parse_call(Function fn) {
        const Token& open = peek();
        const int line = open.line;
        const int column = open.column;
        expect("(");
        std::vector<Expr> args;
        if (!at_punct(")")) {
            do {
                args.push_back(parse_or());
            } while (accept(","));
        }
        expect(")");
        const Arity arity = function_arity(fn);
        if (args.size() < arity.min || args.size() > arity.max) {
            throw SyntaxError("wrong number of arguments to " + std::string(function_name(fn)), line, column, "(");
        }
        return make_call(fn, std::move(args));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(detail::tokenize(text)).run(); }

}  // namespace glidesim::matchlang
