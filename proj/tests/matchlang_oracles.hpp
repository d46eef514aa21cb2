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

// Test-only generators and reference implementations for the matching
// language. Nothing here calls into the evaluator under test.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "glidesim/matchlang/matchlang.hpp"

namespace glidesim::testing {

namespace ml = glidesim::matchlang;

// ---- random ASTs in the parser's image -------------------------------------

class RandomAst {
public:
    explicit RandomAst(std::uint64_t seed) : rng_(seed) {}

    ml::Expr expr(int depth = 0) {
        const int choice = depth >= 5 ? pick(0, 1) : pick(0, 4);
        switch (choice) {
            case 0: return ml::make_literal(literal());
            case 1: return ml::make_ref(scope(), name());
            case 2: return ml::make_unary(pick(0, 1) ? ml::UnaryOp::Not : ml::UnaryOp::Neg, expr(depth + 1));
            case 3: return ml::make_binary(static_cast<ml::BinaryOp>(pick(0, 12)), expr(depth + 1), expr(depth + 1));
            default: {
                const auto fn = static_cast<ml::Function>(pick(0, 5));
                const auto arity = ml::function_arity(fn);
                const int n = arity.max > 1 ? pick(1, 3) : 1;
                std::vector<ml::Expr> args;
                for (int i = 0; i < n; ++i) args.push_back(expr(depth + 1));
                return ml::make_call(fn, std::move(args));
            }
        }
    }

private:
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    ml::Value literal() {
        switch (pick(0, 6)) {
            case 0: return ml::Value::integer(std::uniform_int_distribution<std::int64_t>(0, INT64_MAX)(rng_));
            case 1: return ml::Value::integer(pick(0, 100));
            case 2: {
                const double mant = std::uniform_real_distribution<double>(0.0, 10.0)(rng_);
                return ml::Value::real(mant * std::pow(10.0, pick(-20, 20)));
            }
            case 3: return ml::Value::boolean(pick(0, 1) == 1);
            case 4: {
                static const std::string alphabet = "abcXYZ 019\"\\\n\t.,()&|";
                std::string s;
                const int len = pick(0, 8);
                for (int i = 0; i < len; ++i) s += alphabet[static_cast<std::size_t>(pick(0, static_cast<int>(alphabet.size()) - 1))];
                return ml::Value::text(s);
            }
            case 5: return ml::Value::undefined();
            default: return ml::Value::error("error literal");
        }
    }

    ml::Scope scope() { return static_cast<ml::Scope>(pick(0, 2)); }

    std::string name() {
        static const char* names[] = {"cpus", "memory", "requestcpus", "gpus", "name", "a", "b_2", "owner", "x"};
        return names[pick(0, 8)];
    }

    std::mt19937_64 rng_;
};

// Structural comparator written against the AST variant directly.
inline bool same_tree(const ml::Expr& a, const ml::Expr& b) {
    const auto& na = static_cast<const ml::Node::variant&>(a.node());
    const auto& nb = static_cast<const ml::Node::variant&>(b.node());
    if (na.index() != nb.index()) return false;
    if (auto* x = std::get_if<ml::Literal>(&na)) {
        const auto& y = std::get<ml::Literal>(nb);
        return x->value.storage() == y.value.storage();
    }
    if (auto* x = std::get_if<ml::AttrRef>(&na)) {
        const auto& y = std::get<ml::AttrRef>(nb);
        return x->scope == y.scope && x->name == y.name;
    }
    if (auto* x = std::get_if<ml::Unary>(&na)) {
        const auto& y = std::get<ml::Unary>(nb);
        return x->op == y.op && same_tree(x->operand, y.operand);
    }
    if (auto* x = std::get_if<ml::Binary>(&na)) {
        const auto& y = std::get<ml::Binary>(nb);
        return x->op == y.op && same_tree(x->lhs, y.lhs) && same_tree(x->rhs, y.rhs);
    }
    const auto& x = std::get<ml::Call>(na);
    const auto& y = std::get<ml::Call>(nb);
    if (x.fn != y.fn || x.args.size() != y.args.size()) return false;
    for (std::size_t i = 0; i < x.args.size(); ++i) {
        if (!same_tree(x.args[i], y.args[i])) return false;
    }
    return true;
}

// ---- Kleene truth tables ---------------------------------------------------

enum class Tri { False, True, Unknown };

// Written out cell by cell.
inline Tri kleene_and(Tri a, Tri b) {
    static const Tri table[3][3] = {
        /* F */ {Tri::False, Tri::False, Tri::False},
        /* T */ {Tri::False, Tri::True, Tri::Unknown},
        /* U */ {Tri::False, Tri::Unknown, Tri::Unknown},
    };
    return table[static_cast<int>(a)][static_cast<int>(b)];
}

inline Tri kleene_or(Tri a, Tri b) {
    static const Tri table[3][3] = {
        /* F */ {Tri::False, Tri::True, Tri::Unknown},
        /* T */ {Tri::True, Tri::True, Tri::True},
        /* U */ {Tri::Unknown, Tri::True, Tri::Unknown},
    };
    return table[static_cast<int>(a)][static_cast<int>(b)];
}

inline const char* tri_text(Tri t) {
    return t == Tri::True ? "true" : t == Tri::False ? "false" : "undefined";
}

// ---- random requirement expressions with a reference evaluator --------------

using IntAttrs = std::map<std::string, std::int64_t>;

struct Requirement {
    enum class Kind { Clause, And, Or, Not } kind = Kind::Clause;
    std::string target_attr;               // compared TARGET attribute
    std::string op;                        // <, <=, >, >=, ==, !=
    std::optional<std::int64_t> constant;  // rhs constant, or...
    std::string self_attr;                 // ...rhs SELF attribute when constant is empty
    std::vector<Requirement> kids;
};

class RandomRequirements {
public:
    explicit RandomRequirements(std::uint64_t seed) : rng_(seed) {}

    Requirement requirement(int depth = 0) {
        Requirement r;
        const int c = depth >= 3 ? 0 : pick(0, 3);
        if (c == 0) {
            static const char* ops[] = {"<", "<=", ">", ">=", "==", "!="};
            r.kind = Requirement::Kind::Clause;
            r.target_attr = attr();
            r.op = ops[pick(0, 5)];
            if (pick(0, 1)) r.constant = pick(0, 16);
            else r.self_attr = attr();
        } else if (c == 3) {
            r.kind = Requirement::Kind::Not;
            r.kids.push_back(requirement(depth + 1));
        } else {
            r.kind = c == 1 ? Requirement::Kind::And : Requirement::Kind::Or;
            r.kids.push_back(requirement(depth + 1));
            r.kids.push_back(requirement(depth + 1));
        }
        return r;
    }

    IntAttrs attrs() {
        IntAttrs out;
        for (const char* a : {"cpus", "memory", "gpus", "disk"}) {
            if (pick(0, 4) != 0) out[a] = pick(0, 16);
        }
        return out;
    }

private:
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    std::string attr() {
        static const char* names[] = {"cpus", "memory", "gpus", "disk"};
        return names[pick(0, 3)];
    }
    std::mt19937_64 rng_;
};

inline std::string to_text(const Requirement& r) {
    switch (r.kind) {
        case Requirement::Kind::Clause:
            return "TARGET." + r.target_attr + " " + r.op + " " +
                   (r.constant ? std::to_string(*r.constant) : "MY." + r.self_attr);
        case Requirement::Kind::Not: return "!(" + to_text(r.kids[0]) + ")";
        case Requirement::Kind::And: return "(" + to_text(r.kids[0]) + ") && (" + to_text(r.kids[1]) + ")";
        case Requirement::Kind::Or: return "(" + to_text(r.kids[0]) + ") || (" + to_text(r.kids[1]) + ")";
    }
    return "";
}

inline Tri reference_eval(const Requirement& r, const IntAttrs& self, const IntAttrs& target) {
    switch (r.kind) {
        case Requirement::Kind::Clause: {
            auto t = target.find(r.target_attr);
            if (t == target.end()) return Tri::Unknown;
            std::int64_t rhs;
            if (r.constant) {
                rhs = *r.constant;
            } else {
                auto s = self.find(r.self_attr);
                if (s == self.end()) return Tri::Unknown;
                rhs = s->second;
            }
            const std::int64_t lhs = t->second;
            bool v = false;
            if (r.op == "<") v = lhs < rhs;
            else if (r.op == "<=") v = lhs <= rhs;
            else if (r.op == ">") v = lhs > rhs;
            else if (r.op == ">=") v = lhs >= rhs;
            else if (r.op == "==") v = lhs == rhs;
            else v = lhs != rhs;
            return v ? Tri::True : Tri::False;
        }
        case Requirement::Kind::Not: {
            const Tri k = reference_eval(r.kids[0], self, target);
            return k == Tri::Unknown ? Tri::Unknown : (k == Tri::True ? Tri::False : Tri::True);
        }
        case Requirement::Kind::And:
            return kleene_and(reference_eval(r.kids[0], self, target), reference_eval(r.kids[1], self, target));
        case Requirement::Kind::Or:
            return kleene_or(reference_eval(r.kids[0], self, target), reference_eval(r.kids[1], self, target));
    }
    return Tri::Unknown;
}

inline ml::Ad make_int_ad(ml::AdKind kind, const IntAttrs& attrs, const Requirement& req) {
    ml::Ad ad(kind);
    for (const auto& [k, v] : attrs) ad.set(k, ml::Value::integer(v));
    ad.set_expr("requirements", to_text(req));
    return ad;
}

}  // namespace glidesim::testing
