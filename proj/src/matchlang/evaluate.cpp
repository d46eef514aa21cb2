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

#include "glidesim/matchlang/evaluate.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace glidesim::matchlang {

namespace {

using Int = std::int64_t;

Value type_mismatch(std::string_view what) { return Value::error("type mismatch in " + std::string(what)); }

Int wrap_add(Int a, Int b) { return static_cast<Int>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b)); }
Int wrap_sub(Int a, Int b) { return static_cast<Int>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b)); }
Int wrap_mul(Int a, Int b) { return static_cast<Int>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b)); }

Value arithmetic(BinaryOp op, const Value& l, const Value& r) {
    if (l.is_error()) return l;
    if (r.is_error()) return r;
    if (l.is_undefined() || r.is_undefined()) return Value::undefined();
    if (!l.is_number() || !r.is_number()) return type_mismatch(operator_token(op));

    if (l.is_integer() && r.is_integer()) {
        const Int a = l.as_integer();
        const Int b = r.as_integer();
        switch (op) {
            case BinaryOp::Add: return Value::integer(wrap_add(a, b));
            case BinaryOp::Sub: return Value::integer(wrap_sub(a, b));
            case BinaryOp::Mul: return Value::integer(wrap_mul(a, b));
            case BinaryOp::Div:
                if (b == 0) return Value::error("division by zero");
                if (a == std::numeric_limits<Int>::min() && b == -1) return Value::integer(a);
                return Value::integer(a / b);
            case BinaryOp::Mod:
                if (b == 0) return Value::error("modulo by zero");
                if (b == -1) return Value::integer(0);
                return Value::integer(a % b);
            default: break;
        }
    } else {
        const double a = *l.to_number();
        const double b = *r.to_number();
        switch (op) {
            case BinaryOp::Add: return Value::real(a + b);
            case BinaryOp::Sub: return Value::real(a - b);
            case BinaryOp::Mul: return Value::real(a * b);
            case BinaryOp::Div:
                if (b == 0.0) return Value::error("division by zero");
                return Value::real(a / b);
            case BinaryOp::Mod:
                if (b == 0.0) return Value::error("modulo by zero");
                return Value::real(std::fmod(a, b));
            default: break;
        }
    }
    return Value::error("bad arithmetic operator");
}

template <typename T>
bool compare(BinaryOp op, const T& a, const T& b) {
    switch (op) {
        case BinaryOp::Lt: return a < b;
        case BinaryOp::Le: return a <= b;
        case BinaryOp::Gt: return a > b;
        case BinaryOp::Ge: return a >= b;
        case BinaryOp::Eq: return a == b;
        case BinaryOp::Ne: return a != b;
        default: return false;
    }
}

Value comparison(BinaryOp op, const Value& l, const Value& r) {
    if (l.is_error()) return l;
    if (r.is_error()) return r;
    if (l.is_undefined() || r.is_undefined()) return Value::undefined();
    if (l.is_integer() && r.is_integer()) return Value::boolean(compare(op, l.as_integer(), r.as_integer()));
    if (l.is_number() && r.is_number()) return Value::boolean(compare(op, *l.to_number(), *r.to_number()));
    if (l.is_text() && r.is_text()) return Value::boolean(compare(op, l.as_text(), r.as_text()));
    if (l.is_boolean() && r.is_boolean() && (op == BinaryOp::Eq || op == BinaryOp::Ne)) {
        return Value::boolean(compare(op, l.as_boolean(), r.as_boolean()));
    }
    return type_mismatch(operator_token(op));
}

// Kleene logic operand check: Boolean or Undefined pass through, anything else is an Error.
std::optional<Value> logic_operand_error(const Value& v, BinaryOp op) {
    if (v.is_error()) return v;
    if (!v.is_boolean() && !v.is_undefined()) return type_mismatch(operator_token(op));
    return std::nullopt;
}

class Evaluator {
public:
    Value eval(const Expr& e, const Ad& self, const Ad* target) {
        return std::visit([&](const auto& n) { return eval_node(n, self, target); },
                          static_cast<const Node::variant&>(e.node()));
    }

private:
    struct Frame {
        const Ad* ad;
        const std::string* name;
    };

    Value eval_node(const Literal& n, const Ad&, const Ad*) { return n.value; }

    Value eval_node(const AttrRef& n, const Ad& self, const Ad* target) {
        switch (n.scope) {
            case Scope::Self: return resolve(self, target, n.name);
            case Scope::Target:
                if (!target) return Value::undefined();
                return resolve(*target, &self, n.name);
            case Scope::Unscoped:
                if (self.find(n.name)) return resolve(self, target, n.name);
                if (target) return resolve(*target, &self, n.name);
                return Value::undefined();
        }
        return Value::undefined();
    }

    Value resolve(const Ad& owner, const Ad* other, const std::string& name) {
        const Expr* expr = owner.find(name);
        if (!expr) return Value::undefined();
        for (const Frame& f : stack_) {
            if (f.ad == &owner && *f.name == name) return Value::undefined();
        }
        if (stack_.size() >= static_cast<std::size_t>(kMaxResolutionDepth)) {
            return Value::error("attribute resolution depth exceeded");
        }
        stack_.push_back({&owner, &name});
        Value v = eval(*expr, owner, other);
        stack_.pop_back();
        return v;
    }

    Value eval_node(const Unary& n, const Ad& self, const Ad* target) {
        Value v = eval(n.operand, self, target);
        if (v.is_error() || v.is_undefined()) return v;
        if (n.op == UnaryOp::Not) {
            if (!v.is_boolean()) return type_mismatch("!");
            return Value::boolean(!v.as_boolean());
        }
        if (v.is_integer()) return Value::integer(wrap_sub(0, v.as_integer()));
        if (v.is_real()) return Value::real(-v.as_real());
        return type_mismatch("unary -");
    }

    Value eval_node(const Binary& n, const Ad& self, const Ad* target) {
        switch (n.op) {
            case BinaryOp::And: return logical_and(n, self, target);
            case BinaryOp::Or: return logical_or(n, self, target);
            case BinaryOp::Add:
            case BinaryOp::Sub:
            case BinaryOp::Mul:
            case BinaryOp::Div:
            case BinaryOp::Mod:
                return arithmetic(n.op, eval(n.lhs, self, target), eval(n.rhs, self, target));
            default: return comparison(n.op, eval(n.lhs, self, target), eval(n.rhs, self, target));
        }
    }

    Value logical_and(const Binary& n, const Ad& self, const Ad* target) {
        Value l = eval(n.lhs, self, target);
        if (l.is_boolean() && !l.as_boolean()) return l;
        if (auto err = logic_operand_error(l, n.op)) return *err;
        Value r = eval(n.rhs, self, target);
        if (auto err = logic_operand_error(r, n.op)) return *err;
        if (r.is_boolean() && !r.as_boolean()) return r;
        if (l.is_undefined() || r.is_undefined()) return Value::undefined();
        return Value::boolean(true);
    }

    Value logical_or(const Binary& n, const Ad& self, const Ad* target) {
        Value l = eval(n.lhs, self, target);
        if (l.is_true()) return l;
        if (auto err = logic_operand_error(l, n.op)) return *err;
        Value r = eval(n.rhs, self, target);
        if (auto err = logic_operand_error(r, n.op)) return *err;
        if (r.is_true()) return r;
        if (l.is_undefined() || r.is_undefined()) return Value::undefined();
        return Value::boolean(false);
    }

    Value eval_node(const Call& n, const Ad& self, const Ad* target) {
        if (n.fn == Function::IsUndefined) {
            return Value::boolean(eval(n.args.at(0), self, target).is_undefined());
        }
        std::vector<Value> args;
        args.reserve(n.args.size());
        for (const auto& a : n.args) args.push_back(eval(a, self, target));
        for (const auto& v : args) {
            if (v.is_error()) return v;
        }
        for (const auto& v : args) {
            if (v.is_undefined()) return v;
        }
        for (const auto& v : args) {
            if (!v.is_number()) return type_mismatch(function_name(n.fn));
        }
        switch (n.fn) {
            case Function::Abs: {
                const Value& v = args[0];
                if (v.is_integer()) {
                    const Int i = v.as_integer();
                    return Value::integer(i < 0 ? wrap_sub(0, i) : i);
                }
                return Value::real(std::fabs(v.as_real()));
            }
            case Function::Floor:
            case Function::Ceil: {
                const Value& v = args[0];
                if (v.is_integer()) return v;
                const double d = n.fn == Function::Floor ? std::floor(v.as_real()) : std::ceil(v.as_real());
                // 2^63 is exactly representable; anything at or beyond it does not fit.
                if (!(d >= -0x1.0p63 && d < 0x1.0p63)) return Value::error("integer overflow in floor/ceil");
                return Value::integer(static_cast<Int>(d));
            }
            case Function::Min:
            case Function::Max: {
                const bool want_min = n.fn == Function::Min;
                bool all_int = true;
                for (const auto& v : args) all_int = all_int && v.is_integer();
                if (all_int) {
                    Int best = args[0].as_integer();
                    for (const auto& v : args) best = want_min ? std::min(best, v.as_integer()) : std::max(best, v.as_integer());
                    return Value::integer(best);
                }
                double best = *args[0].to_number();
                for (const auto& v : args) {
                    const double d = *v.to_number();
                    best = want_min ? std::min(best, d) : std::max(best, d);
                }
                return Value::real(best);
            }
            case Function::IsUndefined: break;
        }
        return Value::error("unknown function");
    }

    std::vector<Frame> stack_;
};

}  // namespace

Value evaluate(const Expr& expr, const Ad& self, const Ad* target) { return Evaluator().eval(expr, self, target); }

}  // namespace glidesim::matchlang
