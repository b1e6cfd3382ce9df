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

#include <iseq/c.hpp>
#include <iseq/error.hpp>
#include <iseq/thread.hpp>

#include <doctest.h>

#include <random>
#include <set>
#include <string>

using namespace iseq;

namespace {

std::string left_print(const std::string& text) {
    return print_thread_spec(minimize(c_left(parse_c(text))));
}

std::string right_print(const std::string& text) {
    return print_thread_spec(minimize(c_right(parse_c(text))));
}

} // namespace

TEST_CASE("worked examples extract left and right") {
    CHECK(left_print("/a") == "P0 = a . P1 ; P1 = D");
    CHECK(right_print("/a") == "P0 = a . P1 ; P1 = D");
    CHECK(left_print("\\#2;-\\c") == "P0 = D");
    CHECK(right_print("\\#2;-\\c") == "P0 = c . P1 ; P1 = D");
    CHECK(left_print("/#3;\\#1;!;\\#2;#;+\\a") == "P0 = D");
    CHECK(right_print("/#3;\\#1;!;\\#2;#;+\\a") == "P0 = a . P1 ; P1 = D");
    CHECK(left_print("/a;+/a;!;\\#3") == "P0 = a . P1 ; P1 = a ? P2 : P0 ; P2 = S");
    CHECK(right_print("/a;+/a;!;\\#3") == "P0 = a . P1 ; P1 = a ? P2 : P0 ; P2 = S");
    CHECK(left_print("+/b;-/c;-\\c") ==
          "P0 = b ? P1 : P2 ; P1 = c ? P3 : P2 ; P2 = c ? P0 : P1 ; P3 = D");
}

TEST_CASE("out-of-range positions and the empty margin behave as D") {
    const CInSeq x = parse_c("/a;!");
    CHECK(bisimilar(c_behavior_at(x, 0), dead_thread()));
    CHECK(bisimilar(c_behavior_at(x, 3), dead_thread()));
    CHECK(bisimilar(c_behavior_at(x, -5), dead_thread()));
    CHECK(bisimilar(c_behavior_at(x, 1), c_left(x)));
    CHECK(bisimilar(c_behavior_at(x, 2), halt_thread()));
}

TEST_CASE("pure jump cycles deadlock") {
    CHECK(left_print("/#1;\\#1") == "P0 = D");
    CHECK(left_print("\\#1") == "P0 = D");
    CHECK(left_print("#") == "P0 = D");
}

TEST_CASE("postconditional expansion multiplies positions by five") {
    std::mt19937_64 rng(101);
    for (int round = 0; round < 300; ++round) {
        const CInSeq x = testgen::random_c(rng, 8, 3, 6);
        const CpInSeq y = c_to_cp(x);
        CHECK(y.len() == 5 * x.len());
        for (long long i = 1; i <= x.len(); ++i) {
            const ThreadSpec want = c_behavior_at(x, i);
            CHECK(bisimilar(want, cp_behavior_at(y, 5 * (i - 1) + 1)));
            CHECK(bisimilar(want, cp_behavior_at(y, 5 * i)));
        }
    }
}

TEST_CASE("postconditional removal multiplies positions by four") {
    std::mt19937_64 rng(103);
    for (int round = 0; round < 300; ++round) {
        const CInSeq seed = testgen::random_c(rng, 6, 3, 5);
        const CpInSeq x = c_to_cp(seed);
        const CInSeq y = cp_to_c(x);
        CHECK(y.len() == 4 * x.len());
        for (long long i = 1; i <= x.len(); ++i) {
            const ThreadSpec want = cp_behavior_at(x, i);
            CHECK(bisimilar(want, c_behavior_at(y, 4 * (i - 1) + 1)));
            CHECK(bisimilar(want, c_behavior_at(y, 4 * i)));
        }
    }
}

TEST_CASE("cp text forms round-trip") {
    const std::string text = "/a;+?b;-?c;\\a;/#2;\\#1;#;!";
    CHECK(print_cp(parse_cp(text)) == text);
    CHECK_THROWS_AS(parse_cp("+/a"), ParseError);
}

TEST_CASE("dual flips direction and rev reverses with duals") {
    CHECK(dual(CInstr::fwd_pos("a")) == CInstr::bwd_pos("a"));
    CHECK(dual(CInstr::bwd_jump(3)) == CInstr::fwd_jump(3));
    CHECK(dual(CInstr::halt()) == CInstr::halt());
    CHECK(dual(CInstr::abort()) == CInstr::abort());
    CHECK(print_c(rev(parse_c("+/a;!;\\#2"))) == "/#2;!;+\\a");
}

TEST_CASE("reversal swaps the two extraction directions") {
    std::mt19937_64 rng(107);
    for (int round = 0; round < 300; ++round) {
        const CInSeq x = testgen::random_c(rng, 8, 3, 6);
        const CInSeq r = rev(x);
        CHECK(bisimilar(c_left(x), c_right(r)));
        CHECK(bisimilar(c_right(x), c_left(r)));
        for (long long i = 1; i <= x.len(); ++i)
            CHECK(bisimilar(c_behavior_at(x, i), c_behavior_at(r, x.len() + 1 - i)));
    }
}

TEST_CASE("the zero-jump variant swaps abort for jump-zero") {
    std::mt19937_64 rng(109);
    for (int round = 0; round < 200; ++round) {
        const CInSeq x = testgen::random_c(rng, 8, 3, 6);
        const C0InSeq z = c_to_c0(x);
        CHECK(c0_to_c(z) == x);
        for (long long i = 1; i <= x.len(); ++i)
            CHECK(bisimilar(c0_behavior_at(z, i), c_behavior_at(x, i)));
    }
    C0InSeq zero;
    zero.instrs.push_back(C0Instr{C0Instr::Kind::Jump0, {}, 0});
    CHECK(print_c(c0_to_c(zero)) == "#");
}

TEST_CASE("accessibility clamps out-of-range targets to the margins") {
    const CInSeq x = parse_c("+/a;\\#9");
    const PositionGraph g = accessibility(x);
    CHECK(g.len == 2);
    CHECK(g.edges.count({1, 2}));
    CHECK(g.edges.count({1, 3}));
    CHECK(g.edges.count({2, 0}));
    CHECK(reachable(x, 1) == std::set<long long>{0, 1, 2, 3});
    // Exits are the in-range sources of margin-crossing steps.
    CHECK(exits(x) == std::set<long long>{1, 2});
}

TEST_CASE("unreachable positions can be dropped without behavior change") {
    const CInSeq x = parse_c("/#2;\\a;!");
    const auto [y, at] = remove_unreachable(x, 1);
    CHECK(print_c(y) == "/#1;!");
    CHECK(at == 1);
    CHECK(bisimilar(c_behavior_at(x, 1), c_behavior_at(y, at)));
    CHECK_THROWS_AS(remove_unreachable(x, 0), PreconditionError);
    CHECK_THROWS_AS(remove_unreachable(x, 4), PreconditionError);
}

TEST_CASE("remove_unreachable preserves behavior on random programs") {
    std::mt19937_64 rng(113);
    for (int round = 0; round < 300; ++round) {
        const CInSeq x = testgen::random_c(rng, 8, 3, 6);
        const long long i = testgen::pick(rng, 1, x.len());
        const auto [y, at] = remove_unreachable(x, i);
        CHECK(bisimilar(c_behavior_at(x, i), c_behavior_at(y, at)));
        CHECK(y.len() <= x.len());
    }
}

TEST_CASE("text forms round-trip, with direction-first synonyms") {
    const std::string text = "/a;\\a;+/a;-/a;+\\a;-\\a;/#3;\\#1;#;!";
    CHECK(print_c(parse_c(text)) == text);
    CHECK(parse_c("/+a;\\-b") == parse_c("+/a;-\\b"));
    CHECK_THROWS_AS(parse_c(""), ParseError);
    CHECK_THROWS_AS(parse_c("/#0"), ParseError);
    CHECK_THROWS_AS(parse_c("a"), ParseError);
    CHECK_THROWS_AS(parse_c("/a;"), ParseError);
    CHECK_THROWS_AS(parse_c("/a;;!"), ParseError);
}

TEST_CASE("random programs round-trip through print and parse") {
    std::mt19937_64 rng(127);
    for (int round = 0; round < 300; ++round) {
        const CInSeq x = testgen::random_c(rng, 10, 3, 9);
        CHECK(parse_c(print_c(x)) == x);
    }
}
