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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "glidesim/matchlang/matchlang.hpp"
#include "matchlang_oracles.hpp"

using namespace glidesim::matchlang;
using glidesim::testing::Tri;

namespace {

Value eval_text(std::string_view text, const Ad& self = Ad{}, const Ad* target = nullptr) {
    return evaluate(parse(text), self, target);
}

Value tri_value(Tri t) {
    if (t == Tri::Unknown) return Value::undefined();
    return Value::boolean(t == Tri::True);
}

}  // namespace

TEST_CASE("parse respects precedence") {
    const Expr e = parse("1 + 2 * 3");
    const Expr expected = make_binary(BinaryOp::Add, make_literal(Value::integer(1)),
                                      make_binary(BinaryOp::Mul, make_literal(Value::integer(2)),
                                                  make_literal(Value::integer(3))));
    CHECK(e == expected);
    CHECK(evaluate(e, Ad{}) == Value::integer(7));

    CHECK(parse("a || b && c") ==
          make_binary(BinaryOp::Or, make_ref(Scope::Unscoped, "a"),
                      make_binary(BinaryOp::And, make_ref(Scope::Unscoped, "b"), make_ref(Scope::Unscoped, "c"))));
    // NOT binds looser than comparison.
    CHECK(parse("!a == b") ==
          make_unary(UnaryOp::Not, make_binary(BinaryOp::Eq, make_ref(Scope::Unscoped, "a"), make_ref(Scope::Unscoped, "b"))));
    CHECK(parse("-a * b") ==
          make_binary(BinaryOp::Mul, make_unary(UnaryOp::Neg, make_ref(Scope::Unscoped, "a")), make_ref(Scope::Unscoped, "b")));
    CHECK(parse("(1 + 2) * 3") ==
          make_binary(BinaryOp::Mul, make_binary(BinaryOp::Add, make_literal(Value::integer(1)), make_literal(Value::integer(2))),
                      make_literal(Value::integer(3))));
    CHECK(evaluate(parse("10 - 4 - 3"), Ad{}) == Value::integer(3));
}

TEST_CASE("parse scoped references fold case") {
    const Expr e = parse("TARGET.Cpus >= RequestCpus");
    CHECK(e == make_binary(BinaryOp::Ge, make_ref(Scope::Target, "cpus"), make_ref(Scope::Unscoped, "requestcpus")));
    const auto& ref = std::get<AttrRef>(std::get<Binary>(e.node()).lhs.node());
    CHECK(ref.name == "cpus");
    CHECK(parse("my.X") == make_ref(Scope::Self, "x"));
    CHECK(parse("Self.X") == make_ref(Scope::Self, "x"));
    CHECK(parse("TRUE") == make_literal(Value::boolean(true)));
}

TEST_CASE("syntax errors report position and token") {
    try {
        parse("(a &&");
        FAIL("expected syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 6);
        CHECK(e.token().empty());
    }
    try {
        parse("a +\n  * b");
        FAIL("expected syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
        CHECK(e.token() == "*");
    }
    CHECK_THROWS_AS(parse("foo(1)"), SyntaxError);
    CHECK_THROWS_AS(parse("abs(1, 2)"), SyntaxError);
    CHECK_THROWS_AS(parse("other.x"), SyntaxError);
    CHECK_THROWS_AS(parse("\"open"), SyntaxError);
    CHECK_THROWS_AS(parse("1 2"), SyntaxError);
    CHECK_THROWS_AS(parse("a $ b"), SyntaxError);
    CHECK_THROWS_AS(parse("99999999999999999999"), SyntaxError);
    CHECK_THROWS_AS(parse(""), SyntaxError);
}

TEST_CASE("unparse canonical form") {
    CHECK(unparse(make_literal(Value::integer(7))) == "7");
    CHECK(unparse(parse("1 + 2 * 3")) == "1 + (2 * 3)");
    CHECK(unparse(parse("TARGET.cpus>=requestcpus&&!x")) == "(TARGET.cpus >= requestcpus) && (!x)");
    CHECK(unparse(parse("isundefined(MY.a)")) == "isUndefined(SELF.a)");
    CHECK(unparse(make_literal(Value::real(2.0))) == "2.0");
    CHECK(unparse(make_literal(Value::text("say \"hi\""))) == "\"say \\\"hi\\\"\"");
    CHECK(unparse(parse("- - 3")) == "-(-3)");
}

TEST_CASE("parse(unparse(e)) is structurally equal on random trees") {
    glidesim::testing::RandomAst gen(20261016);
    for (int i = 0; i < 1000; ++i) {
        const Expr e = gen.expr();
        const std::string text = unparse(e);
        INFO(text);
        const Expr back = parse(text);
        REQUIRE(glidesim::testing::same_tree(e, back));
        CHECK(unparse(back) == text);
    }
}

TEST_CASE("evaluate: missing attributes and Kleene identities") {
    CHECK(eval_text("isUndefined(nosuch)") == Value::boolean(true));
    CHECK(eval_text("nosuch || true") == Value::boolean(true));
    CHECK(eval_text("nosuch && false") == Value::boolean(false));
    CHECK(eval_text("nosuch && true").is_undefined());
    CHECK(eval_text("nosuch + 1").is_undefined());
    CHECK(eval_text("nosuch < 1").is_undefined());
    CHECK(eval_text("!nosuch").is_undefined());
    CHECK(eval_text("TARGET.x").is_undefined());
}

TEST_CASE("Kleene AND/OR truth tables match the hand-written oracle") {
    const Tri all[] = {Tri::False, Tri::True, Tri::Unknown};
    int cases = 0;
    for (Tri a : all) {
        for (Tri b : all) {
            Ad ad;
            ad.set("a", tri_value(a)).set("b", tri_value(b));
            if (a == Tri::Unknown) ad.erase("a");
            if (b == Tri::Unknown) ad.erase("b");
            INFO(glidesim::testing::tri_text(a), " ", glidesim::testing::tri_text(b));
            CHECK(evaluate(parse("a && b"), ad) == tri_value(glidesim::testing::kleene_and(a, b)));
            CHECK(evaluate(parse("a || b"), ad) == tri_value(glidesim::testing::kleene_or(a, b)));
            // Literal form as well.
            const std::string la = glidesim::testing::tri_text(a);
            const std::string lb = glidesim::testing::tri_text(b);
            CHECK(eval_text(la + " && " + lb) == tri_value(glidesim::testing::kleene_and(a, b)));
            CHECK(eval_text(la + " || " + lb) == tri_value(glidesim::testing::kleene_or(a, b)));
            cases += 2;
        }
    }
    CHECK(cases == 18);
}

TEST_CASE("evaluate: arithmetic and comparison typing") {
    CHECK(eval_text("7 / 2") == Value::integer(3));
    CHECK(eval_text("7 % 3") == Value::integer(1));
    CHECK(eval_text("7.0 / 2") == Value::real(3.5));
    CHECK(eval_text("1 / 0").is_error());
    CHECK(eval_text("1.5 / 0").is_error());
    CHECK(eval_text("1 % 0").is_error());
    CHECK(eval_text("\"a\" + 1").is_error());
    CHECK(eval_text("true + 1").is_error());
    CHECK(eval_text("\"a\" < 1").is_error());
    CHECK(eval_text("1 && true").is_error());
    CHECK(eval_text("false && (1 / 0)") == Value::boolean(false));
    CHECK(eval_text("true || (1 / 0)") == Value::boolean(true));
    CHECK(eval_text("true && (1 / 0)").is_error());
    CHECK(eval_text("1 == 1.0") == Value::boolean(true));
    CHECK(eval_text("\"idle\" == \"idle\"") == Value::boolean(true));
    CHECK(eval_text("\"abc\" < \"abd\"") == Value::boolean(true));
    CHECK(eval_text("true == false") == Value::boolean(false));
    CHECK(eval_text("true < false").is_error());
    CHECK(eval_text("(1 / 0) + nosuch").is_error());
    CHECK(eval_text("-(9223372036854775807) - 1") == Value::integer(INT64_MIN));
}

TEST_CASE("evaluate: functions") {
    CHECK(eval_text("min(3, 1, 2)") == Value::integer(1));
    CHECK(eval_text("max(3, 1.5)") == Value::real(3.0));
    CHECK(eval_text("abs(-4)") == Value::integer(4));
    CHECK(eval_text("floor(2.7)") == Value::integer(2));
    CHECK(eval_text("ceil(2.1)") == Value::integer(3));
    CHECK(eval_text("floor(-2.5)") == Value::integer(-3));
    CHECK(eval_text("floor(1e300)").is_error());
    CHECK(eval_text("min(1, nosuch)").is_undefined());
    CHECK(eval_text("max(1, \"x\")").is_error());
    CHECK(eval_text("isUndefined(1 / 0)") == Value::boolean(false));
}

TEST_CASE("evaluate: scoping, role swap, cycles and depth") {
    Ad job(AdKind::Job);
    job.set("requestcpus", 2).set("owner", "alice").set_expr("requirements", "TARGET.cpus >= requestcpus");
    Ad slot(AdKind::Slot);
    slot.set("cpus", 4).set_expr("requirements", "TARGET.owner == \"alice\"").set_expr("doubled", "cpus * 2");

    CHECK(evaluate(parse("requestcpus"), job, &slot) == Value::integer(2));
    CHECK(evaluate(parse("cpus"), job, &slot) == Value::integer(4));         // falls through to target
    CHECK(evaluate(parse("SELF.cpus"), job, &slot).is_undefined());
    CHECK(evaluate(parse("TARGET.doubled"), job, &slot) == Value::integer(8));  // evaluated in slot's scope
    CHECK(evaluate(parse("kind"), job) == Value::text("job"));
    CHECK(evaluate(parse("TARGET.kind == \"slot\""), job, &slot) == Value::boolean(true));

    Ad cyc;
    cyc.set_expr("a", "b + 1").set_expr("b", "a + 1");
    CHECK(evaluate(parse("a"), cyc).is_undefined());
    cyc.set_expr("self_loop", "self_loop");
    CHECK(evaluate(parse("self_loop"), cyc).is_undefined());

    Ad chain;
    for (int i = 0; i < 40; ++i) chain.set_expr("v" + std::to_string(i), "v" + std::to_string(i + 1) + " + 1");
    chain.set("v40", 0);
    CHECK(evaluate(parse("v10"), chain) == Value::integer(30));
    CHECK(evaluate(parse("v0"), chain).is_error());
}

TEST_CASE("evaluate is pure") {
    glidesim::testing::RandomAst gen(7);
    Ad a;
    a.set("cpus", 4).set("memory", 2.5).set("name", "x").set_expr("a", "cpus + 1");
    for (int i = 0; i < 300; ++i) {
        const Expr e = gen.expr();
        CHECK(evaluate(e, a, &a) == evaluate(e, a, &a));
    }
}

TEST_CASE("requirements_match examples") {
    Ad job(AdKind::Job);
    job.set_expr("requirements", "TARGET.cpus >= 1");
    Ad slot(AdKind::Slot);
    slot.set("cpus", 4).set("requirements", true);
    CHECK(requirements_match(job, slot));

    Ad gpu_job(AdKind::Job);
    gpu_job.set_expr("requirements", "TARGET.hasgpu");
    CHECK_FALSE(requirements_match(gpu_job, slot));

    Ad no_req(AdKind::Job);
    CHECK_FALSE(requirements_match(no_req, slot));

    Ad err_job(AdKind::Job);
    err_job.set_expr("requirements", "1 / 0");
    CHECK_FALSE(requirements_match(err_job, slot));
}

TEST_CASE("requirements_match agrees with the reference evaluator on random pairs") {
    glidesim::testing::RandomRequirements gen(42);
    int undefined_seen = 0;
    for (int i = 0; i < 500; ++i) {
        const auto job_attrs = gen.attrs();
        const auto slot_attrs = gen.attrs();
        const auto job_req = gen.requirement();
        const auto slot_req = gen.requirement();
        const Ad job = glidesim::testing::make_int_ad(AdKind::Job, job_attrs, job_req);
        const Ad slot = glidesim::testing::make_int_ad(AdKind::Slot, slot_attrs, slot_req);
        const Tri expect_js = glidesim::testing::reference_eval(job_req, job_attrs, slot_attrs);
        const Tri expect_sj = glidesim::testing::reference_eval(slot_req, slot_attrs, job_attrs);
        undefined_seen += expect_js == Tri::Unknown;
        INFO(glidesim::testing::to_text(job_req));
        CHECK(evaluate(*job.find("requirements"), job, &slot) == tri_value(expect_js));
        CHECK(requirements_match(job, slot) == (expect_js == Tri::True));
        CHECK(requirements_match(slot, job) == (expect_sj == Tri::True));
        CHECK(symmetric_match(job, slot) == (requirements_match(job, slot) && requirements_match(slot, job)));
    }
    CHECK(undefined_seen > 0);
}

TEST_CASE("symmetric_match examples") {
    Ad job(AdKind::Job);
    job.set("requirements", true);
    Ad slot(AdKind::Slot);
    slot.set("requirements", true);
    CHECK(symmetric_match(job, slot));

    slot.set_expr("requirements", "TARGET.is_ligo");
    CHECK(requirements_match(job, slot));
    CHECK_FALSE(symmetric_match(job, slot));
    job.set("is_ligo", true);
    CHECK(symmetric_match(job, slot));
}

TEST_CASE("rank_order examples") {
    Ad job(AdKind::Job);
    job.set("requirements", true);
    std::vector<Ad> slots;
    for (auto [name, mem] : {std::pair{"s1", 2048}, {"s2", 8192}, {"s3", 4096}}) {
        Ad s(AdKind::Slot);
        s.set("name", name).set("memory", mem).set("requirements", true);
        slots.push_back(s);
    }
    auto unranked = rank_order(job, slots);
    CHECK(unranked[0].get_text("name") == "s1");
    CHECK(unranked[1].get_text("name") == "s2");
    CHECK(unranked[2].get_text("name") == "s3");

    job.set_expr("rank", "TARGET.memory");
    auto ranked = rank_order(job, slots);
    CHECK(ranked[0].get_integer("memory") == 8192);
    CHECK(ranked[1].get_integer("memory") == 4096);
    CHECK(ranked[2].get_integer("memory") == 2048);

    // Equal names keep input order.
    std::vector<Ad> twins = {slots[0], slots[0]};
    twins[0].set("tag", 1);
    twins[1].set("tag", 2);
    job.set("rank", 0);
    auto kept = rank_order(job, twins);
    CHECK(kept[0].get_integer("tag") == 1);
}

TEST_CASE("rank_order equals a sort-by-evaluated-key oracle") {
    std::mt19937_64 rng(99);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int round = 0; round < 200; ++round) {
        Ad job(AdKind::Job);
        job.set("requirements", true);
        const int rank_kind = pick(0, 2);
        if (rank_kind == 1) job.set_expr("rank", "TARGET.memory");
        if (rank_kind == 2) job.set_expr("rank", "TARGET.memory / 1024.0 - TARGET.cpus");
        std::vector<Ad> cands;
        struct Row { double key; std::string name; int idx; };
        std::vector<Row> rows;
        const int n = pick(0, 12);
        for (int i = 0; i < n; ++i) {
            Ad s(AdKind::Slot);
            const std::string name = "slot" + std::to_string(pick(0, 5));
            const bool has_mem = pick(0, 3) != 0;
            const int mem = pick(1, 4) * 1024;
            const int cpus = pick(1, 8);
            s.set("name", name).set("cpus", cpus).set("requirements", true).set("idx", i);
            if (has_mem) s.set("memory", mem);
            cands.push_back(s);
            double key = 0;
            if (rank_kind == 1 && has_mem) key = mem;
            if (rank_kind == 2 && has_mem) key = mem / 1024.0 - cpus;
            rows.push_back({key, name, i});
        }
        std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
            if (a.key != b.key) return a.key > b.key;
            return a.name < b.name;
        });
        const auto got = rank_order(job, cands);
        REQUIRE(got.size() == rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) CHECK(got[i].get_integer("idx") == rows[i].idx);
        // Permutation and determinism.
        CHECK(rank_order(job, cands) == got);
    }
}
