/*
 * Copyright 2026 The inseq authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "random_programs.hpp"

#include <iseq/error.hpp>
#include <iseq/translate.hpp>

#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

using namespace iseq;

TEST_CASE("eliminate_backward is a left-uniform factor-3 homomorphism") {
    std::mt19937_64 rng(307);
    for (int round = 0; round < 500; ++round) {
        const CInSeq x = testgen::random_c(rng, 8, 3, 6);
        const CInSeq y = eliminate_backward(x);
        CHECK(y.len() == 3 * x.len());
        for (const CInstr& u : y.instrs) {
            CHECK(u.kind != CInstr::Kind::BwdBasic);
            CHECK(u.kind != CInstr::Kind::BwdPos);
            CHECK(u.kind != CInstr::Kind::BwdNeg);
        }
        for (long long i = 1; i <= x.len(); ++i)
            CHECK(bisimilar(c_behavior_at(x, i), c_behavior_at(y, 3 * (i - 1) + 1)));
    }
}

TEST_CASE("eliminate_backward distributes over concatenation") {
    std::mt19937_64 rng(311);
    for (int round = 0; round < 100; ++round) {
        const CInSeq a = testgen::random_c(rng, 5, 3, 4);
        const CInSeq b = testgen::random_c(rng, 5, 3, 4);
        CInSeq ab = a;
        ab.instrs.insert(ab.instrs.end(), b.instrs.begin(), b.instrs.end());
        CInSeq want = eliminate_backward(a);
        const CInSeq tail = eliminate_backward(b);
        want.instrs.insert(want.instrs.end(), tail.instrs.begin(), tail.instrs.end());
        CHECK(eliminate_backward(ab) == want);
    }
}

TEST_CASE("to_program removes every exit position") {
    std::mt19937_64 rng(313);
    for (int round = 0; round < 200; ++round) {
        const CInSeq x = testgen::random_c(rng, 6, 3, 5);
        const long long m = std::max<long long>(2, max_jump(x)) + testgen::pick(rng, 0, 2);
        const CInSeq y = to_program(x, m);
        CHECK(y.len() == x.len() + 2 * m + 2);
        CHECK(exits(y).empty());
        CHECK(bisimilar(c_left(x), c_left(y)));
        CHECK(bisimilar(c_right(x), c_right(y)));
    }
    CHECK_THROWS_AS(to_program(parse_c("/a"), 1), PreconditionError);
    CHECK_THROWS_AS(to_program(parse_c("/#5"), 4), PreconditionError);
}

TEST_CASE("single-pass translation keeps the left behavior") {
    CHECK(print_pga(c2pga(parse_c("!"))).size() > 0);
    const PgaTerm halt_term = c2pga(parse_c("!"));
    CHECK(halt_term.prefix.empty());
    CHECK(halt_term.loop.size() == 9);
    std::mt19937_64 rng(317);
    for (int round = 0; round < 400; ++round) {
        const CInSeq x = testgen::random_c(rng, 7, 3, 5);
        CHECK(bisimilar(pga_behavior(c2pga(x)), c_left(x)));
    }
}

TEST_CASE("single-pass programs translate back to the bidirectional form") {
    CHECK(print_c(pga2c(parse_pga("a;(b)^w"))) == "/a;/b;\\#1;\\#1");
    CHECK(print_c(pga2c(parse_pga("#0"))) == "#");
    std::mt19937_64 rng(331);
    for (int round = 0; round < 400; ++round) {
        const PgaTerm t = testgen::random_pga_term(rng);
        CHECK(bisimilar(c_left(pga2c(t)), pga_behavior(t)));
    }
}

TEST_CASE("maximum counters and labels are read off the sequence") {
    CHECK(max_jump(parse_c("/a;!")) == 0);
    CHECK(max_jump(parse_c("/#3;\\#7;/a")) == 7);
    CHECK(max_goto_label(parse_cg("/L9;/G2;\\G5")) == 5);
    CHECK(max_goto_label(parse_cg("/L9;/a")) == 0);
}

TEST_CASE("goto-form translations preserve both margins") {
    std::mt19937_64 rng(337);
    for (int round = 0; round < 250; ++round) {
        const CInSeq x = testgen::random_c(rng, 8, 3, 6);
        const CgInSeq plain = c2cg(x);
        CHECK(bisimilar(c_left(x), cg_left(plain)));
        CHECK(bisimilar(c_right(x), cg_right(plain)));
        const long long k = std::max<long long>(2, max_jump(x));
        const CgInSeq positional = c2cg_positional(x, k);
        CHECK(bisimilar(c_left(x), cg_left(positional)));
        CHECK(bisimilar(c_right(x), cg_right(positional)));
    }
    CHECK_THROWS_AS(c2cg_positional(parse_c("/a"), 1), PreconditionError);
    CHECK_THROWS_AS(c2cg_positional(parse_c("/#5"), 4), PreconditionError);
}

TEST_CASE("positional goto-form blocks have the advertised lengths") {
    const long long k = 2;
    CHECK(c2cg_positional(parse_c("/#1"), k).len() == 5);
    CHECK(c2cg_positional(parse_c("#"), k).len() == 5);
    CHECK(c2cg_positional(parse_c("!"), k).len() == 5);
    CHECK(c2cg_positional(parse_c("/a"), k).len() == 6);
    CHECK(c2cg_positional(parse_c("+/a"), k).len() == 7);
}

TEST_CASE("homomorphic goto-form satisfies both uniform identities") {
    std::mt19937_64 rng(347);
    for (int round = 0; round < 150; ++round) {
        const CInSeq x = testgen::random_c(rng, 5, 3, 4);
        const long long k = std::max<long long>(testgen::pick(rng, 2, 4), max_jump(x));
        const CgInSeq y = c2cg_hom(x, k);
        const long long b = 4 * k + 6;
        CHECK(y.len() == b * x.len());
        for (long long i = 1; i <= x.len(); ++i) {
            const ThreadSpec want = c_behavior_at(x, i);
            CHECK(bisimilar(want, cg_behavior_at(y, b * (i - 1) + 1)));
            CHECK(bisimilar(want, cg_behavior_at(y, b * i)));
        }
    }
    CHECK_THROWS_AS(c2cg_hom(parse_c("/a"), 1), PreconditionError);
    CHECK_THROWS_AS(c2cg_hom(parse_c("/#5"), 4), PreconditionError);
}

TEST_CASE("goto elimination is exact at every position") {
    CHECK(print_c(cg2c(parse_cg("/b;/G0;/a;/L0;!"))) == "/b;/#2;/a;/#1;!");
    CHECK(print_c(cg2c(parse_cg("/L0;\\G0;/G0;\\L0"))) == "/#1;\\#2;/#2;\\#1");
    std::mt19937_64 rng(349);
    for (int round = 0; round < 400; ++round) {
        const CgInSeq x = testgen::random_cg(rng, 8, 3, 4);
        const CInSeq y = cg2c(x);
        CHECK(y.len() == x.len());
        for (long long i = 0; i <= x.len() + 1; ++i)
            CHECK(bisimilar(cg_behavior_at(x, i), c_behavior_at(y, i)));
    }
}

TEST_CASE("the highway construction carries gotos by lane") {
    CHECK(print_c(cg2c_hom(parse_cg("/G0"), 0)) == "/#4;/#4;/#8;\\#5;/#5");
    std::mt19937_64 rng(353);
    for (int round = 0; round < 200; ++round) {
        const long long k = testgen::pick(rng, 0, 3);
        const CgInSeq x = testgen::random_cg(rng, 6, 3, k);
        const CInSeq y = cg2c_hom(x, k);
        const long long b = 2 * k + 5;
        CHECK(y.len() == b * x.len());
        for (long long i = 1; i <= x.len(); ++i)
            CHECK(bisimilar(cg_behavior_at(x, i), c_behavior_at(y, (i - 1) * b + 1)));
    }
    CHECK_THROWS_AS(cg2c_hom(parse_cg("/G3"), 2), PreconditionError);
    CHECK_THROWS_AS(cg2c_hom(parse_cg("/G0"), -1), PreconditionError);
    // Labels above k are allowed; their gotos are what the bound limits.
    CHECK(cg2c_hom(parse_cg("/L7;/G0"), 0).len() == 10);
}

TEST_CASE("route reports expose factors only for uniform routes") {
    const RouteReport hom = make_route_report("c2cg-hom", 4, 56, 2);
    CHECK(hom.route == "c2cg-hom");
    CHECK(hom.input_len == 4);
    CHECK(hom.output_len == 56);
    REQUIRE(hom.factor.has_value());
    CHECK(*hom.factor == 14);
    REQUIRE(hom.k.has_value());
    CHECK(*hom.k == 2);
    CHECK(!hom.correspondence.empty());

    const RouteReport plain = make_route_report("pga2c", 3, 7, std::nullopt);
    CHECK(!plain.factor.has_value());
    CHECK(!plain.k.has_value());
    CHECK(!plain.correspondence.empty());

    const RouteReport elim = make_route_report("eliminate-backward", 5, 15, std::nullopt);
    REQUIRE(elim.factor.has_value());
    CHECK(*elim.factor == 3);
}
