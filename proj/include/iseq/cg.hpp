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

#include <iseq/c.hpp>
#include <iseq/thread.hpp>

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace iseq {

// C's basics and tests plus labels /Ll, \Ll and gotos /Gl, \Gl with
// label numbers l >= 0; no relative jumps.
struct CgInstr {
    enum class Kind {
        FwdBasic,
        BwdBasic,
        FwdPos,
        BwdPos,
        FwdNeg,
        BwdNeg,
        FwdLabel,
        BwdLabel,
        FwdGoto,
        BwdGoto,
        Abort,
        Halt,
    };

    Kind kind = Kind::Halt;
    Action action{};
    long long label = 0;

    static CgInstr fwd_basic(Action a) { return {Kind::FwdBasic, std::move(a), 0}; }
    static CgInstr bwd_basic(Action a) { return {Kind::BwdBasic, std::move(a), 0}; }
    static CgInstr fwd_pos(Action a) { return {Kind::FwdPos, std::move(a), 0}; }
    static CgInstr bwd_pos(Action a) { return {Kind::BwdPos, std::move(a), 0}; }
    static CgInstr fwd_neg(Action a) { return {Kind::FwdNeg, std::move(a), 0}; }
    static CgInstr bwd_neg(Action a) { return {Kind::BwdNeg, std::move(a), 0}; }
    static CgInstr fwd_label(long long l) { return {Kind::FwdLabel, {}, l}; }
    static CgInstr bwd_label(long long l) { return {Kind::BwdLabel, {}, l}; }
    static CgInstr fwd_goto(long long l) { return {Kind::FwdGoto, {}, l}; }
    static CgInstr bwd_goto(long long l) { return {Kind::BwdGoto, {}, l}; }
    static CgInstr abort() { return {Kind::Abort, {}, 0}; }
    static CgInstr halt() { return {Kind::Halt, {}, 0}; }

    bool operator==(const CgInstr&) const = default;
};

struct CgInSeq {
    std::vector<CgInstr> instrs;

    long long len() const { return static_cast<long long>(instrs.size()); }
    bool operator==(const CgInSeq&) const = default;
};

// fsearch = min({j >= i | inst_j in targets} u {len+1});
// bsearch = max({j <= i | inst_j in targets} u {0}).
long long fsearch(const CgInSeq& x, long long i, const std::vector<CgInstr>& targets);
long long bsearch(const CgInSeq& x, long long i, const std::vector<CgInstr>& targets);

// Thread extraction: labels step over, gotos transfer to the matching
// same-direction label; orphaned gotos and control cycles yield D.
ThreadSpec cg_behavior_at(const CgInSeq& x, long long i);
ThreadSpec cg_left(const CgInSeq& x);
ThreadSpec cg_right(const CgInSeq& x);

// Goto positions whose search target is out of range.
std::set<long long> orphaned(const CgInSeq& x);

// corr: distinct label/goto positions with equal direction and number.
// gacc: goto positions paired with the label position they target.
// te: distinct identical gotos sharing their resolved target.
// classes: the partition induced by te, gacc and label reflexivity,
// ordered by least member. corr/te hold both orientations of a pair.
struct LabelRelations {
    std::set<std::pair<long long, long long>> corr;
    std::set<std::pair<long long, long long>> gacc;
    std::set<std::pair<long long, long long>> te;
    std::vector<std::vector<long long>> classes;
};

LabelRelations label_relations(const CgInSeq& x);

// Label normal form: every pair of corresponding instructions is
// related (same class).
bool is_lnf(const CgInSeq& x);

// Renumbers label/goto instructions by their class index (classes
// numbered 1..n by least member); preserves behavior at every i.
CgInSeq to_lnf(const CgInSeq& x);

// Increments every label number >= l by one, making l unused; free_seq
// applies the numbers of L in order (all of a nondecreasing L end up
// unused). Behavior is preserved at every position.
CgInSeq free_one(const CgInSeq& x, long long l);
CgInSeq free_seq(const CgInSeq& x, const std::vector<long long>& numbers);

// Alternative semantics where gotos with number l <= k act as relative
// jumps over l positions (l = 0 diverges); labels and gotos with
// l > k keep their standard meaning.
ThreadSpec cg_rel_behavior_at(const CgInSeq& x, long long i, long long k);

// Emulates the relative-jump semantics under standard extraction: each
// instruction expands to 4k+6 instructions and
// cg_rel_behavior_at(x,i,k) = |b(i-1)+1, rel_k(x)| = |b*i, rel_k(x)|
// with b = 4k+6. Requires k >= 2 (BadK otherwise).
CgInSeq rel_k(const CgInSeq& x, long long k);

// Alternative semantics where gotos target labels with the same number
// irrespective of the label's direction.
ThreadSpec cgp_behavior_at(const CgInSeq& x, long long i);

// Renumbers forward instructions to 2l and backward ones to 2l+1 so
// that cg_behavior_at(x, i) = cgp_behavior_at(to_directional(x), i)
// for all i: in the image each label accepts one direction only.
CgInSeq to_directional(const CgInSeq& x);

// Translation from the general-target semantics into standard Cg:
// cgp_behavior_at(x, i) = cg_behavior_at(output, witness[i-1]).
struct FromGeneralResult {
    CgInSeq output;
    std::vector<long long> witness;
};

FromGeneralResult from_general(const CgInSeq& x);
// Variant expanding every instruction to exactly 16 instructions, so
// block ends are witnesses too: |16(i-1)+1| and |16i| both work.
FromGeneralResult from_general_uniform(const CgInSeq& x);

// Accessibility analysis as for C; goto edges point at the resolved
// search target.
PositionGraph cg_accessibility(const CgInSeq& x);
std::set<long long> cg_reachable(const CgInSeq& x, long long i);
std::set<long long> cg_exits(const CgInSeq& x);

// Unreachable positions are deleted outright: a removed position can
// never be the search target of a kept goto, so no adjustment is
// needed.
std::pair<CgInSeq, long long> cg_remove_unreachable(const CgInSeq& x, long long i);

CgInstr cg_dual(const CgInstr& u);
CgInSeq cg_rev(const CgInSeq& x);

// Text grammar extends C's with `/Ll`, `\Ll`, `/Gl`, `\Gl`.
CgInSeq parse_cg(const std::string& text);
std::string print_cg_instr(const CgInstr& u);
std::string print_cg(const CgInSeq& x);

} // namespace iseq
