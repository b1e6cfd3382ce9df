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
#pragma once

#include <iseq/thread.hpp>

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace iseq {

// Bidirectional instructions: /a, \a, +/a, -/a, +\a, -\a, /#k, \#k
// (k >= 1), # (abort), ! (halt).
struct CInstr {
    enum class Kind {
        FwdBasic,
        BwdBasic,
        FwdPos,
        BwdPos,
        FwdNeg,
        BwdNeg,
        FwdJump,
        BwdJump,
        Abort,
        Halt,
    };

    Kind kind = Kind::Halt;
    Action action{};
    long long counter = 0;

    static CInstr fwd_basic(Action a) { return {Kind::FwdBasic, std::move(a), 0}; }
    static CInstr bwd_basic(Action a) { return {Kind::BwdBasic, std::move(a), 0}; }
    static CInstr fwd_pos(Action a) { return {Kind::FwdPos, std::move(a), 0}; }
    static CInstr bwd_pos(Action a) { return {Kind::BwdPos, std::move(a), 0}; }
    static CInstr fwd_neg(Action a) { return {Kind::FwdNeg, std::move(a), 0}; }
    static CInstr bwd_neg(Action a) { return {Kind::BwdNeg, std::move(a), 0}; }
    static CInstr fwd_jump(long long k) { return {Kind::FwdJump, {}, k}; }
    static CInstr bwd_jump(long long k) { return {Kind::BwdJump, {}, k}; }
    static CInstr abort() { return {Kind::Abort, {}, 0}; }
    static CInstr halt() { return {Kind::Halt, {}, 0}; }

    bool operator==(const CInstr&) const = default;
};

struct CInSeq {
    std::vector<CInstr> instrs;

    long long len() const { return static_cast<long long>(instrs.size()); }
    bool operator==(const CInSeq&) const = default;
};

// Thread extraction |i, X|: out-of-range positions and pure-jump cycles
// yield D.
ThreadSpec c_behavior_at(const CInSeq& x, long long i);
ThreadSpec c_left(const CInSeq& x);
ThreadSpec c_right(const CInSeq& x);

// One-step control-flow edges; targets below 1 clamp to 0 and targets
// beyond the end clamp to len+1 (the two out-of-range sentinels).
struct PositionGraph {
    long long len = 0;
    std::set<std::pair<long long, long long>> edges;
};

PositionGraph accessibility(const CInSeq& x);
std::set<long long> reachable(const CInSeq& x, long long i);
std::set<long long> exits(const CInSeq& x);

// Drops every position not reachable from i, adjusting jump counters
// that cross removed positions; returns the new sequence and the new
// index of i. Behavior at i is preserved.
std::pair<CInSeq, long long> remove_unreachable(const CInSeq& x, long long i);

// dual flips direction and keeps action/counter; rev reverses the
// sequence and dualizes every instruction.
CInstr dual(const CInstr& u);
CInSeq rev(const CInSeq& x);

// Variant with a jump of distance zero in place of abort; /#0 and \#0
// are identified as the single Jump0 instruction.
struct C0Instr {
    enum class Kind {
        FwdBasic,
        BwdBasic,
        FwdPos,
        BwdPos,
        FwdNeg,
        BwdNeg,
        FwdJump,
        BwdJump,
        Jump0,
        Halt,
    };

    Kind kind = Kind::Halt;
    Action action{};
    long long counter = 0;

    bool operator==(const C0Instr&) const = default;
};

struct C0InSeq {
    std::vector<C0Instr> instrs;

    bool operator==(const C0InSeq&) const = default;
};

CInSeq c0_to_c(const C0InSeq& x);
C0InSeq c_to_c0(const CInSeq& x);
ThreadSpec c0_behavior_at(const C0InSeq& x, long long i);

// Variant with postconditional tests +?a / -?a: the action decides
// whether control moves left or right of the test.
struct CpInstr {
    enum class Kind {
        FwdBasic,
        BwdBasic,
        PosTest,
        NegTest,
        FwdJump,
        BwdJump,
        Abort,
        Halt,
    };

    Kind kind = Kind::Halt;
    Action action{};
    long long counter = 0;

    static CpInstr fwd_basic(Action a) { return {Kind::FwdBasic, std::move(a), 0}; }
    static CpInstr bwd_basic(Action a) { return {Kind::BwdBasic, std::move(a), 0}; }
    static CpInstr pos_test(Action a) { return {Kind::PosTest, std::move(a), 0}; }
    static CpInstr neg_test(Action a) { return {Kind::NegTest, std::move(a), 0}; }
    static CpInstr fwd_jump(long long k) { return {Kind::FwdJump, {}, k}; }
    static CpInstr bwd_jump(long long k) { return {Kind::BwdJump, {}, k}; }
    static CpInstr abort() { return {Kind::Abort, {}, 0}; }
    static CpInstr halt() { return {Kind::Halt, {}, 0}; }

    bool operator==(const CpInstr&) const = default;
};

struct CpInSeq {
    std::vector<CpInstr> instrs;

    long long len() const { return static_cast<long long>(instrs.size()); }
    bool operator==(const CpInSeq&) const = default;
};

ThreadSpec cp_behavior_at(const CpInSeq& x, long long i);
ThreadSpec cp_left(const CpInSeq& x);
ThreadSpec cp_right(const CpInSeq& x);

// 1-to-5 expansion with |i,X| = |5(i-1)+1, f(X)| = |5i, f(X)|.
CpInSeq c_to_cp(const CInSeq& x);
// 1-to-4 expansion with |i,X| = |4(i-1)+1, g(X)| = |4i, g(X)|.
CInSeq cp_to_c(const CpInSeq& x);

// Text grammar: tokens as listed on CInstr, separated by `;`. Tests are
// also accepted with the direction written first (`/+a` for `+/a`).
CInSeq parse_c(const std::string& text);
std::string print_c_instr(const CInstr& u);
std::string print_c(const CInSeq& x);

CpInSeq parse_cp(const std::string& text);
std::string print_cp_instr(const CpInstr& u);
std::string print_cp(const CpInSeq& x);

} // namespace iseq
