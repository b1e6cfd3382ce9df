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
#include <iseq/expressiveness.hpp>

#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace iseq;

namespace {

CounterSet evens_from_4() { return parse_counter_set("every 2 from 4 offset 0"); }
CounterSet all_from_1() { return parse_counter_set("every 1 from 1 offset 0"); }

// Audits that every counter of x lies in fwd/bwd according to the
// jump's direction.
void audit_counters(const CInSeq& x, const CounterSet& fwd, const CounterSet& bwd) {
    for (const CInstr& u : x.instrs) {
        if (u.kind == CInstr::Kind::FwdJump) CHECK(fwd.contains(u.counter));
        if (u.kind == CInstr::Kind::BwdJump) CHECK(bwd.contains(u.counter));
    }
}

} // namespace

TEST_CASE("counter sets answer membership and least-member queries") {
    const CounterSet evens = evens_from_4();
    CHECK(evens.contains(4));
    CHECK(evens.contains(6));
    CHECK_FALSE(evens.contains(5));
    CHECK_FALSE(evens.contains(2));
    CHECK(min_at_least(evens, 5) == 6);
    CHECK(min_at_least(evens, 4) == 4);
    CHECK(min_at_least(evens, -3) == 4);
    CHECK(min_at_least(all_from_1(), 1) == 1);
    const CounterSet triples{{CounterClass{3, 0, 3}}, {}};
    CHECK(min_at_least(triples, 10) == 12);
    const CounterSet mixed = parse_counter_set("every 4 from 5 offset 1, plus {4}");
    CHECK(mixed.contains(4));
    CHECK(mixed.contains(5));
    CHECK(mixed.contains(9));
    CHECK_FALSE(mixed.contains(6));
    CHECK(min_at_least(mixed, 2) == 4);
    CHECK(min_at_least(mixed, 6) == 9);
}

TEST_CASE("counter set text round-trips") {
    for (const std::string text : {
             "every 2 from 4 offset 0",
             "every 3 from 6 offset 0",
             "every 4 from 5 offset 1, plus {4}",
             "every 1 from 1 offset 0, plus {7,9}",
         }) {
        CHECK(print_counter_set(parse_counter_set(text)) == text);
    }
    CHECK_THROWS_AS(parse_counter_set(""), ParseError);
    CHECK_THROWS_AS(parse_counter_set("plus {3}"), ParseError);
    CHECK_THROWS_AS(parse_counter_set("every 2 from 4 offset 2"), ParseError);
    CHECK_THROWS_AS(parse_counter_set("every 0 from 1 offset 0"), ParseError);
}

TEST_CASE("the minimal-alphabet expansion stays on four instruction forms") {
    std::mt19937_64 rng(401);
    for (int round = 0; round < 500; ++round) {
        const CInSeq x = testgen::random_c(rng, 7, 3, 5);
        const CInSeq y = elim_backward_to_minimal(x);
        CHECK(y.len() == 3 * x.len());
        for (const CInstr& u : y.instrs) {
            const bool allowed = u.kind == CInstr::Kind::FwdPos ||
                                 u.kind == CInstr::Kind::FwdJump ||
                                 u.kind == CInstr::Kind::BwdJump ||
                                 u.kind == CInstr::Kind::Halt;
            CHECK(allowed);
        }
        for (long long i = 1; i <= x.len(); ++i)
            CHECK(bisimilar(c_behavior_at(x, i), c_behavior_at(y, 3 * (i - 1) + 1)));
    }
}

TEST_CASE("the minimal-alphabet rows match the table") {
    CHECK(print_c(elim_backward_to_minimal(parse_c("-/a"))) == "+/a;/#5;/#1");
    CHECK(print_c(elim_backward_to_minimal(parse_c("#"))) == "/#1;\\#1;!");
    CHECK(print_c(elim_backward_to_minimal(parse_c("/#2"))) == "/#6;!;!");
    CHECK(print_c(elim_backward_to_minimal(parse_c("!"))) == "!;!;!");
}

TEST_CASE("forward-only builds draw all counters from the given set") {
    const CounterSet evens = evens_from_4();
    CHECK(print_c(forward_only_build(halt_thread(), evens, Polarity::Pos)) == "!");
    CHECK(print_c(forward_only_build(dead_thread(), evens, Polarity::Pos)) == "/#4");
    std::mt19937_64 rng(409);
    for (int round = 0; round < 400; ++round) {
        const ThreadSpec p = testgen::random_finite_thread(rng, 6);
        for (Polarity polarity : {Polarity::Pos, Polarity::Neg}) {
            const CInSeq y = forward_only_build(p, evens, polarity);
            CHECK(bisimilar(c_left(y), p));
            for (const CInstr& u : y.instrs) {
                const bool allowed =
                    u.kind == (polarity == Polarity::Pos ? CInstr::Kind::FwdPos
                                                         : CInstr::Kind::FwdNeg) ||
                    u.kind == CInstr::Kind::FwdJump || u.kind == CInstr::Kind::Halt;
                CHECK(allowed);
                if (u.kind == CInstr::Kind::FwdJump) CHECK(evens.contains(u.counter));
            }
        }
    }
    CHECK_THROWS_AS(forward_only_build(parse_thread_spec("P0 = a . P0"), evens, Polarity::Pos),
                    PreconditionError);
}

TEST_CASE("sparse counter sets keep re-pointed exits out of range") {
    // With counters {1,2,3} u {8,9,...} the nested build's exit jumps
    // cannot stop at the padding added around them.
    const CounterSet sparse = parse_counter_set("every 1 from 8 offset 0, plus {1, 2, 3}");
    const ThreadSpec p = postconditional("b", dead_thread(),
                                         postconditional("a", dead_thread(), dead_thread()));
    const CInSeq y = forward_only_build(p, sparse, Polarity::Pos);
    audit_counters(y, sparse, sparse);
    CHECK(bisimilar(c_left(y), p));
    std::mt19937_64 rng(419);
    for (int round = 0; round < 200; ++round) {
        const ThreadSpec q = testgen::random_finite_thread(rng, 6);
        const CInSeq z = forward_only_build(q, sparse, Polarity::Pos);
        audit_counters(z, sparse, sparse);
        CHECK(bisimilar(c_left(z), q));
    }
}

TEST_CASE("connect reaches a replica of the target state") {
    const CounterSet fwd = evens_from_4();
    const CounterSet bwd = all_from_1();
    const long long s = 4;
    for (long long state : {0LL, 1LL, 2LL}) {
        const long long j = state * s * (s - 1) + 1;
        const long long i = 50;
        const long long z = 60;
        const auto placed = connect(i, j, z, s, fwd, bwd);
        REQUIRE(!placed.empty());
        std::map<long long, CInstr> at;
        for (const auto& [pos, u] : placed) {
            CHECK(!at.count(pos));
            at.emplace(pos, u);
            if (u.kind == CInstr::Kind::FwdJump) CHECK(fwd.contains(u.counter));
            if (u.kind == CInstr::Kind::BwdJump) CHECK(bwd.contains(u.counter));
        }
        // Walk the lane from i; it must stop on a replica of state j's
        // owner, i.e. a position j + h*(s-1) with 0 <= h < s.
        long long pos = i;
        int steps = 0;
        while (at.count(pos) && steps < 1000) {
            const CInstr& u = at.at(pos);
            pos = u.kind == CInstr::Kind::FwdJump ? pos + u.counter : pos - u.counter;
            ++steps;
        }
        const long long offset = pos - j;
        CHECK(offset >= 0);
        CHECK(offset < s * (s - 1));
        CHECK(offset % (s - 1) == 0);
        // Every intermediate lane position lies beyond z.
        for (const auto& [where, u] : placed)
            if (where != i) CHECK(where > z);
    }
}

TEST_CASE("construct_inseq realizes the entry state on both profiles") {
    const CounterSet fwd = evens_from_4();
    const CounterSet bwd = all_from_1();
    const CInSeq halt_out = construct_inseq(halt_thread(), fwd, bwd);
    CHECK(print_c(halt_out) == "!;!;!;!;!;!;!;!;!;!;!");
    CHECK(bisimilar(c_left(halt_out), halt_thread()));

    const ThreadSpec loop = parse_thread_spec("P0 = a . P0");
    const CInSeq loop_out = construct_inseq(loop, fwd, bwd);
    audit_counters(loop_out, fwd, bwd);
    CHECK(bisimilar(c_left(loop_out), loop));

    const CInSeq dead_out = construct_inseq(dead_thread(), fwd, bwd);
    audit_counters(dead_out, fwd, bwd);
    CHECK(bisimilar(c_left(dead_out), dead_thread()));
}

TEST_CASE("construct_inseq handles non-zero entry indices") {
    ThreadSpec p;
    p.states = {StateDef::halt(), StateDef::test("a", 0, 1)};
    p.entry = 1;
    const CInSeq y = construct_inseq(p, evens_from_4(), all_from_1());
    CHECK(bisimilar(c_left(y), p));
}

TEST_CASE("construct_inseq respects all three counter profiles on random specs") {
    const std::vector<std::pair<CounterSet, CounterSet>> profiles = {
        {evens_from_4(), all_from_1()},
        {parse_counter_set("every 3 from 6 offset 0"), parse_counter_set("every 3 from 6 offset 0")},
        {parse_counter_set("every 4 from 5 offset 1, plus {4}"), all_from_1()},
    };
    std::mt19937_64 rng(421);
    for (int round = 0; round < 60; ++round) {
        const ThreadSpec p = testgen::random_thread(rng, 6);
        for (const auto& [fwd, bwd] : profiles) {
            const CInSeq y = construct_inseq(p, fwd, bwd);
            audit_counters(y, fwd, bwd);
            CHECK(bisimilar(c_left(y), p));
        }
    }
}

TEST_CASE("seeded construction stays correct while varying choices") {
    const CounterSet fwd = evens_from_4();
    const CounterSet bwd = all_from_1();
    std::mt19937_64 rng(431);
    for (int round = 0; round < 25; ++round) {
        const ThreadSpec p = testgen::random_thread(rng, 5);
        const CInSeq plain = construct_inseq(p, fwd, bwd);
        const CInSeq seeded = construct_inseq(p, fwd, bwd, rng());
        audit_counters(seeded, fwd, bwd);
        CHECK(bisimilar(c_left(seeded), p));
        CHECK(bisimilar(c_left(seeded), c_left(plain)));
    }
    // The same seed reproduces the same output.
    const ThreadSpec p = parse_thread_spec("P0 = a ? P1 : P0 ; P1 = b . P0");
    CHECK(construct_inseq(p, fwd, bwd, 7) == construct_inseq(p, fwd, bwd, 7));
}

TEST_CASE("the a+n family passes its own property and nothing more") {
    for (long long n = 1; n <= 4; ++n) {
        const ThreadSpec t = gen_a_plus_n_thread("a", n);
        CHECK(has_a_plus_n_property(t, "a", n));
        CHECK_FALSE(has_a_plus_n_property(t, "a", n + 1));
    }
    CHECK_THROWS_AS(gen_a_plus_n_thread("a", 0), PreconditionError);
    CHECK_THROWS_AS(gen_a_plus_n_thread("a", 17), PreconditionError);
}

TEST_CASE("the a+2 instance matches its defining equations") {
    // P_l for l in [1,4); rows Q_m over two bits of m; P_3+m = Q_m^2.
    std::vector<ThreadSpec> q(4), p(4);
    for (long long m = 0; m < 4; ++m) {
        ThreadSpec row = postconditional("a", dead_thread(), dead_thread());
        for (long long d = 1; d <= 2; ++d) {
            const bool bit = ((m >> (d - 1)) & 1) != 0;
            row = bit ? postconditional("a", dead_thread(), row)
                      : postconditional("a", row, dead_thread());
        }
        q[static_cast<std::size_t>(m)] = row;
    }
    const ThreadSpec want =
        postconditional("a", postconditional("a", q[0], q[1]),
                        postconditional("a", q[2], q[3]));
    CHECK(bisimilar(gen_a_plus_n_thread("a", 2), want));
}

TEST_CASE("the one-direction family has distinct deep residuals") {
    const ThreadSpec t = gen_one_dir_thread("a", 2);
    CHECK(t.states.size() == 95);
    CHECK(bisimilar(approximate(t, 4), action_power("a", 4, dead_thread())));
    const auto deep = n_residuals(t, 4);
    CHECK(deep.size() == 16);
    for (std::size_t i = 0; i < deep.size(); ++i)
        for (std::size_t j = i + 1; j < deep.size(); ++j)
            CHECK_FALSE(bisimilar(deep[i], deep[j]));
    CHECK_THROWS_AS(gen_one_dir_thread("a", 0), PreconditionError);
    CHECK_THROWS_AS(gen_one_dir_thread("a", 9), PreconditionError);
}

TEST_CASE("the jump tree has a full set of exits") {
    CHECK(print_c(gen_c_tree(2)) == "+/a;/#2;/#4;+/a;/#5;/#7;+/a;/#8;/#10");
    for (long long n = 1; n <= 5; ++n) {
        const CInSeq x = gen_c_tree(n);
        CHECK(x.len() == 3 * ((1LL << n) - 1));
        CHECK(static_cast<long long>(exits(x).size()) == (1LL << n));
        // Every in-range position is reachable, plus the right margin.
        const std::set<long long> live = reachable(x, 1);
        for (long long p = 1; p <= x.len() + 1; ++p) CHECK(live.count(p));
        CHECK_FALSE(live.count(0));
    }
    CHECK_THROWS_AS(gen_c_tree(0), PreconditionError);
}

TEST_CASE("the goto tree has a full set of orphans") {
    for (long long n = 1; n <= 5; ++n) {
        const CgInSeq x = gen_cg_tree(n);
        CHECK(x.len() == 4 * ((1LL << n) - 1));
        const std::set<long long> orphans = orphaned(x);
        CHECK(static_cast<long long>(orphans.size()) == (1LL << n));
        std::set<long long> labels;
        for (long long pos : orphans) {
            const CgInstr& u = x.instrs[static_cast<std::size_t>(pos - 1)];
            CHECK(u.kind == CgInstr::Kind::FwdGoto);
            labels.insert(u.label);
        }
        CHECK(*labels.begin() == (1LL << n));
        CHECK(*labels.rbegin() == (1LL << (n + 1)) - 1);
        CHECK(static_cast<long long>(labels.size()) == (1LL << n));
    }
    CHECK_THROWS_AS(gen_cg_tree(0), PreconditionError);
}
