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
#include <iseq/c.hpp>

#include <iseq/error.hpp>

#include "extraction.hpp"
#include "text_cursor.hpp"

#include <algorithm>
#include <sstream>

namespace iseq {

namespace {

void check_c(const CInSeq& x) {
    if (x.instrs.empty())
        throw PreconditionError(Precondition::BadBound, "empty instruction sequence");
    for (const CInstr& u : x.instrs)
        if ((u.kind == CInstr::Kind::FwdJump || u.kind == CInstr::Kind::BwdJump) &&
            u.counter < 1)
            throw PreconditionError(Precondition::BadBound, "jump counter must be at least 1");
}

void check_cp(const CpInSeq& x) {
    if (x.instrs.empty())
        throw PreconditionError(Precondition::BadBound, "empty instruction sequence");
    for (const CpInstr& u : x.instrs)
        if ((u.kind == CpInstr::Kind::FwdJump || u.kind == CpInstr::Kind::BwdJump) &&
            u.counter < 1)
            throw PreconditionError(Precondition::BadBound, "jump counter must be at least 1");
}

std::vector<detail::Step> c_steps(const CInSeq& x) {
    check_c(x);
    std::vector<detail::Step> steps;
    steps.reserve(x.instrs.size());
    for (long long i = 1; i <= x.len(); ++i) {
        const CInstr& u = x.instrs[static_cast<std::size_t>(i - 1)];
        switch (u.kind) {
        case CInstr::Kind::FwdBasic:
            steps.push_back(detail::Step::act(u.action, i + 1, i + 1));
            break;
        case CInstr::Kind::BwdBasic:
            steps.push_back(detail::Step::act(u.action, i - 1, i - 1));
            break;
        case CInstr::Kind::FwdPos:
            steps.push_back(detail::Step::act(u.action, i + 1, i + 2));
            break;
        case CInstr::Kind::FwdNeg:
            steps.push_back(detail::Step::act(u.action, i + 2, i + 1));
            break;
        case CInstr::Kind::BwdPos:
            steps.push_back(detail::Step::act(u.action, i - 1, i - 2));
            break;
        case CInstr::Kind::BwdNeg:
            steps.push_back(detail::Step::act(u.action, i - 2, i - 1));
            break;
        case CInstr::Kind::FwdJump:
            steps.push_back(detail::Step::transfer(i + u.counter));
            break;
        case CInstr::Kind::BwdJump:
            steps.push_back(detail::Step::transfer(i - u.counter));
            break;
        case CInstr::Kind::Abort:
            steps.push_back(detail::Step::dead());
            break;
        case CInstr::Kind::Halt:
            steps.push_back(detail::Step::halt());
            break;
        }
    }
    return steps;
}

} // namespace

ThreadSpec c_behavior_at(const CInSeq& x, long long i) { return detail::assemble(c_steps(x), i); }
ThreadSpec c_left(const CInSeq& x) { return c_behavior_at(x, 1); }
ThreadSpec c_right(const CInSeq& x) { return c_behavior_at(x, x.len()); }

PositionGraph accessibility(const CInSeq& x) {
    check_c(x);
    PositionGraph g;
    g.len = x.len();
    auto clamp = [&](long long t) -> long long {
        if (t < 1) return 0;
        if (t > g.len) return g.len + 1;
        return t;
    };
    auto edge = [&](long long i, long long t) { g.edges.emplace(i, clamp(t)); };
    for (long long i = 1; i <= g.len; ++i) {
        const CInstr& u = x.instrs[static_cast<std::size_t>(i - 1)];
        switch (u.kind) {
        case CInstr::Kind::FwdBasic: edge(i, i + 1); break;
        case CInstr::Kind::BwdBasic: edge(i, i - 1); break;
        case CInstr::Kind::FwdPos:
        case CInstr::Kind::FwdNeg:
            edge(i, i + 1);
            edge(i, i + 2);
            break;
        case CInstr::Kind::BwdPos:
        case CInstr::Kind::BwdNeg:
            edge(i, i - 1);
            edge(i, i - 2);
            break;
        case CInstr::Kind::FwdJump: edge(i, i + u.counter); break;
        case CInstr::Kind::BwdJump: edge(i, i - u.counter); break;
        case CInstr::Kind::Abort:
        case CInstr::Kind::Halt: break;
        }
    }
    return g;
}

std::set<long long> reachable(const CInSeq& x, long long i) {
    return detail::graph_reachable(accessibility(x), i);
}

std::set<long long> exits(const CInSeq& x) {
    const PositionGraph g = accessibility(x);
    std::set<long long> out;
    for (const auto& [src, dst] : g.edges)
        if (dst == 0 || dst == g.len + 1) out.insert(src);
    return out;
}

std::pair<CInSeq, long long> remove_unreachable(const CInSeq& x, long long i) {
    check_c(x);
    if (i < 1 || i > x.len())
        throw PreconditionError(Precondition::BadBound, "start position out of range");
    const std::set<long long> live = reachable(x, i);
    std::vector<long long> removed;
    std::vector<long long> kept;
    for (long long p = 1; p <= x.len(); ++p)
        (live.count(p) ? kept : removed).push_back(p);
    if (removed.empty()) return {x, i};

    auto removed_between = [&](long long lo, long long hi) -> long long {
        // count of removed positions q with lo < q < hi
        auto first = std::upper_bound(removed.begin(), removed.end(), lo);
        auto last = std::lower_bound(removed.begin(), removed.end(), hi);
        return last - first;
    };
    CInSeq out;
    long long entry = 0;
    for (long long p : kept) {
        CInstr u = x.instrs[static_cast<std::size_t>(p - 1)];
        if (u.kind == CInstr::Kind::FwdJump)
            u.counter -= removed_between(p, p + u.counter);
        else if (u.kind == CInstr::Kind::BwdJump)
            u.counter -= removed_between(p - u.counter, p);
        out.instrs.push_back(std::move(u));
        if (p == i) entry = out.len();
    }
    return {out, entry};
}

CInstr dual(const CInstr& u) {
    CInstr d = u;
    switch (u.kind) {
    case CInstr::Kind::FwdBasic: d.kind = CInstr::Kind::BwdBasic; break;
    case CInstr::Kind::BwdBasic: d.kind = CInstr::Kind::FwdBasic; break;
    case CInstr::Kind::FwdPos: d.kind = CInstr::Kind::BwdPos; break;
    case CInstr::Kind::BwdPos: d.kind = CInstr::Kind::FwdPos; break;
    case CInstr::Kind::FwdNeg: d.kind = CInstr::Kind::BwdNeg; break;
    case CInstr::Kind::BwdNeg: d.kind = CInstr::Kind::FwdNeg; break;
    case CInstr::Kind::FwdJump: d.kind = CInstr::Kind::BwdJump; break;
    case CInstr::Kind::BwdJump: d.kind = CInstr::Kind::FwdJump; break;
    case CInstr::Kind::Abort:
    case CInstr::Kind::Halt: break;
    }
    return d;
}

CInSeq rev(const CInSeq& x) {
    CInSeq out;
    out.instrs.reserve(x.instrs.size());
    for (auto it = x.instrs.rbegin(); it != x.instrs.rend(); ++it)
        out.instrs.push_back(dual(*it));
    return out;
}

CInSeq c0_to_c(const C0InSeq& x) {
    CInSeq out;
    out.instrs.reserve(x.instrs.size());
    for (const C0Instr& u : x.instrs) {
        if (u.kind == C0Instr::Kind::Jump0) {
            out.instrs.push_back(CInstr::abort());
            continue;
        }
        CInstr v;
        switch (u.kind) {
        case C0Instr::Kind::FwdBasic: v.kind = CInstr::Kind::FwdBasic; break;
        case C0Instr::Kind::BwdBasic: v.kind = CInstr::Kind::BwdBasic; break;
        case C0Instr::Kind::FwdPos: v.kind = CInstr::Kind::FwdPos; break;
        case C0Instr::Kind::BwdPos: v.kind = CInstr::Kind::BwdPos; break;
        case C0Instr::Kind::FwdNeg: v.kind = CInstr::Kind::FwdNeg; break;
        case C0Instr::Kind::BwdNeg: v.kind = CInstr::Kind::BwdNeg; break;
        case C0Instr::Kind::FwdJump: v.kind = CInstr::Kind::FwdJump; break;
        case C0Instr::Kind::BwdJump: v.kind = CInstr::Kind::BwdJump; break;
        case C0Instr::Kind::Halt: v.kind = CInstr::Kind::Halt; break;
        case C0Instr::Kind::Jump0: break;
        }
        v.action = u.action;
        v.counter = u.counter;
        out.instrs.push_back(std::move(v));
    }
    return out;
}

C0InSeq c_to_c0(const CInSeq& x) {
    C0InSeq out;
    out.instrs.reserve(x.instrs.size());
    for (const CInstr& u : x.instrs) {
        C0Instr v;
        switch (u.kind) {
        case CInstr::Kind::FwdBasic: v.kind = C0Instr::Kind::FwdBasic; break;
        case CInstr::Kind::BwdBasic: v.kind = C0Instr::Kind::BwdBasic; break;
        case CInstr::Kind::FwdPos: v.kind = C0Instr::Kind::FwdPos; break;
        case CInstr::Kind::BwdPos: v.kind = C0Instr::Kind::BwdPos; break;
        case CInstr::Kind::FwdNeg: v.kind = C0Instr::Kind::FwdNeg; break;
        case CInstr::Kind::BwdNeg: v.kind = C0Instr::Kind::BwdNeg; break;
        case CInstr::Kind::FwdJump: v.kind = C0Instr::Kind::FwdJump; break;
        case CInstr::Kind::BwdJump: v.kind = C0Instr::Kind::BwdJump; break;
        case CInstr::Kind::Abort: v.kind = C0Instr::Kind::Jump0; break;
        case CInstr::Kind::Halt: v.kind = C0Instr::Kind::Halt; break;
        }
        v.action = u.action;
        v.counter = u.counter;
        out.instrs.push_back(std::move(v));
    }
    return out;
}

ThreadSpec c0_behavior_at(const C0InSeq& x, long long i) {
    return c_behavior_at(c0_to_c(x), i);
}

ThreadSpec cp_behavior_at(const CpInSeq& x, long long i) {
    check_cp(x);
    std::vector<detail::Step> steps;
    steps.reserve(x.instrs.size());
    for (long long p = 1; p <= x.len(); ++p) {
        const CpInstr& u = x.instrs[static_cast<std::size_t>(p - 1)];
        switch (u.kind) {
        case CpInstr::Kind::FwdBasic:
            steps.push_back(detail::Step::act(u.action, p + 1, p + 1));
            break;
        case CpInstr::Kind::BwdBasic:
            steps.push_back(detail::Step::act(u.action, p - 1, p - 1));
            break;
        case CpInstr::Kind::PosTest:
            steps.push_back(detail::Step::act(u.action, p - 1, p + 1));
            break;
        case CpInstr::Kind::NegTest:
            steps.push_back(detail::Step::act(u.action, p + 1, p - 1));
            break;
        case CpInstr::Kind::FwdJump:
            steps.push_back(detail::Step::transfer(p + u.counter));
            break;
        case CpInstr::Kind::BwdJump:
            steps.push_back(detail::Step::transfer(p - u.counter));
            break;
        case CpInstr::Kind::Abort:
            steps.push_back(detail::Step::dead());
            break;
        case CpInstr::Kind::Halt:
            steps.push_back(detail::Step::halt());
            break;
        }
    }
    return detail::assemble(steps, i);
}

ThreadSpec cp_left(const CpInSeq& x) { return cp_behavior_at(x, 1); }
ThreadSpec cp_right(const CpInSeq& x) { return cp_behavior_at(x, x.len()); }

CpInSeq c_to_cp(const CInSeq& x) {
    check_c(x);
    CpInSeq out;
    out.instrs.reserve(x.instrs.size() * 5);
    auto emit = [&](std::vector<CpInstr> block) {
        for (CpInstr& v : block) out.instrs.push_back(std::move(v));
    };
    for (const CInstr& u : x.instrs) {
        const Action& a = u.action;
        const long long k = u.counter;
        switch (u.kind) {
        case CInstr::Kind::FwdBasic:
            emit({CpInstr::fwd_basic(a), CpInstr::fwd_jump(4), CpInstr::abort(),
                  CpInstr::abort(), CpInstr::bwd_jump(4)});
            break;
        case CInstr::Kind::BwdBasic:
            emit({CpInstr::fwd_jump(4), CpInstr::abort(), CpInstr::abort(),
                  CpInstr::bwd_jump(4), CpInstr::bwd_basic(a)});
            break;
        case CInstr::Kind::FwdPos:
            emit({CpInstr::fwd_jump(2), CpInstr::fwd_jump(4), CpInstr::pos_test(a),
                  CpInstr::fwd_jump(7), CpInstr::bwd_jump(2)});
            break;
        case CInstr::Kind::FwdNeg:
            emit({CpInstr::fwd_jump(2), CpInstr::fwd_jump(4), CpInstr::neg_test(a),
                  CpInstr::fwd_jump(7), CpInstr::bwd_jump(2)});
            break;
        case CInstr::Kind::BwdPos:
            emit({CpInstr::fwd_jump(2), CpInstr::bwd_jump(2), CpInstr::pos_test(a),
                  CpInstr::bwd_jump(9), CpInstr::bwd_jump(2)});
            break;
        case CInstr::Kind::BwdNeg:
            emit({CpInstr::fwd_jump(2), CpInstr::bwd_jump(2), CpInstr::neg_test(a),
                  CpInstr::bwd_jump(9), CpInstr::bwd_jump(2)});
            break;
        case CInstr::Kind::FwdJump:
            emit({CpInstr::fwd_jump(5 * k), CpInstr::abort(), CpInstr::abort(),
                  CpInstr::abort(), CpInstr::bwd_jump(4)});
            break;
        case CInstr::Kind::BwdJump:
            emit({CpInstr::fwd_jump(4), CpInstr::abort(), CpInstr::abort(),
                  CpInstr::abort(), CpInstr::bwd_jump(5 * k)});
            break;
        case CInstr::Kind::Abort:
            emit({CpInstr::abort(), CpInstr::abort(), CpInstr::abort(), CpInstr::abort(),
                  CpInstr::abort()});
            break;
        case CInstr::Kind::Halt:
            emit({CpInstr::halt(), CpInstr::abort(), CpInstr::abort(), CpInstr::abort(),
                  CpInstr::halt()});
            break;
        }
    }
    return out;
}

CInSeq cp_to_c(const CpInSeq& x) {
    check_cp(x);
    CInSeq out;
    out.instrs.reserve(x.instrs.size() * 4);
    auto emit = [&](std::vector<CInstr> block) {
        for (CInstr& v : block) out.instrs.push_back(std::move(v));
    };
    for (const CpInstr& u : x.instrs) {
        const Action& a = u.action;
        const long long k = u.counter;
        switch (u.kind) {
        case CpInstr::Kind::FwdBasic:
            emit({CInstr::fwd_basic(a), CInstr::fwd_jump(3), CInstr::abort(),
                  CInstr::bwd_jump(3)});
            break;
        case CpInstr::Kind::BwdBasic:
            emit({CInstr::fwd_jump(3), CInstr::abort(), CInstr::bwd_jump(3),
                  CInstr::bwd_basic(a)});
            break;
        case CpInstr::Kind::PosTest:
            emit({CInstr::fwd_pos(a), CInstr::bwd_jump(2), CInstr::fwd_jump(2),
                  CInstr::bwd_jump(3)});
            break;
        case CpInstr::Kind::NegTest:
            emit({CInstr::fwd_neg(a), CInstr::bwd_jump(2), CInstr::fwd_jump(2),
                  CInstr::bwd_jump(3)});
            break;
        case CpInstr::Kind::FwdJump:
            emit({CInstr::fwd_jump(4 * k), CInstr::abort(), CInstr::abort(),
                  CInstr::bwd_jump(3)});
            break;
        case CpInstr::Kind::BwdJump:
            emit({CInstr::fwd_jump(3), CInstr::abort(), CInstr::abort(),
                  CInstr::bwd_jump(4 * k)});
            break;
        case CpInstr::Kind::Abort:
            emit({CInstr::abort(), CInstr::abort(), CInstr::abort(), CInstr::abort()});
            break;
        case CpInstr::Kind::Halt:
            emit({CInstr::halt(), CInstr::abort(), CInstr::abort(), CInstr::halt()});
            break;
        }
    }
    return out;
}

namespace {

using detail::TextCursor;
using detail::parse_action;
using detail::parse_nat;

long long parse_counter(TextCursor& cur) {
    const long long k = parse_nat(cur);
    if (k < 1) throw ParseError("jump counter must be at least 1", cur.at);
    return k;
}

// One C instruction; accepts both sign-first (+/a) and direction-first
// (/+a) spellings of test instructions.
CInstr parse_c_instr(TextCursor& cur) {
    if (cur.done()) throw ParseError("expected instruction", cur.at);
    const char c = cur.peek();
    if (c == '!') {
        ++cur.at;
        return CInstr::halt();
    }
    if (c == '#') {
        ++cur.at;
        return CInstr::abort();
    }
    if (c == '+' || c == '-') {
        ++cur.at;
        const bool positive = c == '+';
        if (cur.eat('/'))
            return positive ? CInstr::fwd_pos(parse_action(cur))
                            : CInstr::fwd_neg(parse_action(cur));
        if (cur.eat('\\'))
            return positive ? CInstr::bwd_pos(parse_action(cur))
                            : CInstr::bwd_neg(parse_action(cur));
        throw ParseError("expected '/' or '\\' after test sign", cur.at);
    }
    if (c == '/') {
        ++cur.at;
        if (cur.eat('#')) return CInstr::fwd_jump(parse_counter(cur));
        if (cur.eat('+')) return CInstr::fwd_pos(parse_action(cur));
        if (cur.eat('-')) return CInstr::fwd_neg(parse_action(cur));
        return CInstr::fwd_basic(parse_action(cur));
    }
    if (c == '\\') {
        ++cur.at;
        if (cur.eat('#')) return CInstr::bwd_jump(parse_counter(cur));
        if (cur.eat('+')) return CInstr::bwd_pos(parse_action(cur));
        if (cur.eat('-')) return CInstr::bwd_neg(parse_action(cur));
        return CInstr::bwd_basic(parse_action(cur));
    }
    throw ParseError("expected instruction", cur.at);
}

} // namespace

CInSeq parse_c(const std::string& text) {
    TextCursor cur{text, 0};
    CInSeq out;
    out.instrs.push_back(parse_c_instr(cur));
    while (!cur.done() && cur.peek() == ';') {
        ++cur.at;
        out.instrs.push_back(parse_c_instr(cur));
    }
    if (!cur.done()) throw ParseError("trailing input", cur.at);
    return out;
}

std::string print_c_instr(const CInstr& u) {
    switch (u.kind) {
    case CInstr::Kind::FwdBasic: return "/" + u.action;
    case CInstr::Kind::BwdBasic: return "\\" + u.action;
    case CInstr::Kind::FwdPos: return "+/" + u.action;
    case CInstr::Kind::BwdPos: return "+\\" + u.action;
    case CInstr::Kind::FwdNeg: return "-/" + u.action;
    case CInstr::Kind::BwdNeg: return "-\\" + u.action;
    case CInstr::Kind::FwdJump: return "/#" + std::to_string(u.counter);
    case CInstr::Kind::BwdJump: return "\\#" + std::to_string(u.counter);
    case CInstr::Kind::Abort: return "#";
    case CInstr::Kind::Halt: return "!";
    }
    return {};
}

std::string print_c(const CInSeq& x) {
    check_c(x);
    std::ostringstream out;
    for (std::size_t i = 0; i < x.instrs.size(); ++i) {
        if (i) out << ";";
        out << print_c_instr(x.instrs[i]);
    }
    return out.str();
}

namespace {

CpInstr parse_cp_instr(TextCursor& cur) {
    if (cur.done()) throw ParseError("expected instruction", cur.at);
    const char c = cur.peek();
    if (c == '!') {
        ++cur.at;
        return CpInstr::halt();
    }
    if (c == '#') {
        ++cur.at;
        return CpInstr::abort();
    }
    if (c == '+' || c == '-') {
        ++cur.at;
        cur.expect('?', "'?' after test sign");
        return c == '+' ? CpInstr::pos_test(parse_action(cur))
                        : CpInstr::neg_test(parse_action(cur));
    }
    if (c == '/') {
        ++cur.at;
        if (cur.eat('#')) return CpInstr::fwd_jump(parse_counter(cur));
        return CpInstr::fwd_basic(parse_action(cur));
    }
    if (c == '\\') {
        ++cur.at;
        if (cur.eat('#')) return CpInstr::bwd_jump(parse_counter(cur));
        return CpInstr::bwd_basic(parse_action(cur));
    }
    throw ParseError("expected instruction", cur.at);
}

} // namespace

CpInSeq parse_cp(const std::string& text) {
    TextCursor cur{text, 0};
    CpInSeq out;
    out.instrs.push_back(parse_cp_instr(cur));
    while (!cur.done() && cur.peek() == ';') {
        ++cur.at;
        out.instrs.push_back(parse_cp_instr(cur));
    }
    if (!cur.done()) throw ParseError("trailing input", cur.at);
    return out;
}

std::string print_cp_instr(const CpInstr& u) {
    switch (u.kind) {
    case CpInstr::Kind::FwdBasic: return "/" + u.action;
    case CpInstr::Kind::BwdBasic: return "\\" + u.action;
    case CpInstr::Kind::PosTest: return "+?" + u.action;
    case CpInstr::Kind::NegTest: return "-?" + u.action;
    case CpInstr::Kind::FwdJump: return "/#" + std::to_string(u.counter);
    case CpInstr::Kind::BwdJump: return "\\#" + std::to_string(u.counter);
    case CpInstr::Kind::Abort: return "#";
    case CpInstr::Kind::Halt: return "!";
    }
    return {};
}

std::string print_cp(const CpInSeq& x) {
    check_cp(x);
    std::ostringstream out;
    for (std::size_t i = 0; i < x.instrs.size(); ++i) {
        if (i) out << ";";
        out << print_cp_instr(x.instrs[i]);
    }
    return out.str();
}

} // namespace iseq
