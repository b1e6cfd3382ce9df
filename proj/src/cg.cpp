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
#include <iseq/cg.hpp>

#include <iseq/error.hpp>

#include "extraction.hpp"
#include "text_cursor.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace iseq {

namespace {

bool is_label(const CgInstr& u) {
    return u.kind == CgInstr::Kind::FwdLabel || u.kind == CgInstr::Kind::BwdLabel;
}

bool is_goto(const CgInstr& u) {
    return u.kind == CgInstr::Kind::FwdGoto || u.kind == CgInstr::Kind::BwdGoto;
}

bool is_backward(const CgInstr& u) {
    switch (u.kind) {
    case CgInstr::Kind::BwdBasic:
    case CgInstr::Kind::BwdPos:
    case CgInstr::Kind::BwdNeg:
    case CgInstr::Kind::BwdLabel:
    case CgInstr::Kind::BwdGoto: return true;
    default: return false;
    }
}

void check_cg(const CgInSeq& x) {
    if (x.instrs.empty())
        throw PreconditionError(Precondition::BadBound, "empty instruction sequence");
    for (const CgInstr& u : x.instrs)
        if ((is_label(u) || is_goto(u)) && u.label < 0)
            throw PreconditionError(Precondition::BadBound, "label number must be nonnegative");
}

// Search target of the goto at position i under the standard
// (direction-respecting) semantics; may be a sentinel 0 or len+1.
long long goto_target(const CgInSeq& x, long long i) {
    const CgInstr& u = x.instrs[static_cast<std::size_t>(i - 1)];
    if (u.kind == CgInstr::Kind::FwdGoto)
        return fsearch(x, i, {CgInstr::fwd_label(u.label)});
    return bsearch(x, i, {CgInstr::bwd_label(u.label)});
}

std::vector<detail::Step> cg_steps(const CgInSeq& x) {
    check_cg(x);
    std::vector<detail::Step> steps;
    steps.reserve(x.instrs.size());
    for (long long i = 1; i <= x.len(); ++i) {
        const CgInstr& u = x.instrs[static_cast<std::size_t>(i - 1)];
        switch (u.kind) {
        case CgInstr::Kind::FwdBasic:
            steps.push_back(detail::Step::act(u.action, i + 1, i + 1));
            break;
        case CgInstr::Kind::BwdBasic:
            steps.push_back(detail::Step::act(u.action, i - 1, i - 1));
            break;
        case CgInstr::Kind::FwdPos:
            steps.push_back(detail::Step::act(u.action, i + 1, i + 2));
            break;
        case CgInstr::Kind::FwdNeg:
            steps.push_back(detail::Step::act(u.action, i + 2, i + 1));
            break;
        case CgInstr::Kind::BwdPos:
            steps.push_back(detail::Step::act(u.action, i - 1, i - 2));
            break;
        case CgInstr::Kind::BwdNeg:
            steps.push_back(detail::Step::act(u.action, i - 2, i - 1));
            break;
        case CgInstr::Kind::FwdLabel:
            steps.push_back(detail::Step::transfer(i + 1));
            break;
        case CgInstr::Kind::BwdLabel:
            steps.push_back(detail::Step::transfer(i - 1));
            break;
        case CgInstr::Kind::FwdGoto:
        case CgInstr::Kind::BwdGoto:
            steps.push_back(detail::Step::transfer(goto_target(x, i)));
            break;
        case CgInstr::Kind::Abort:
            steps.push_back(detail::Step::dead());
            break;
        case CgInstr::Kind::Halt:
            steps.push_back(detail::Step::halt());
            break;
        }
    }
    return steps;
}

} // namespace

long long fsearch(const CgInSeq& x, long long i, const std::vector<CgInstr>& targets) {
    for (long long j = std::max<long long>(i, 1); j <= x.len(); ++j)
        if (std::find(targets.begin(), targets.end(),
                      x.instrs[static_cast<std::size_t>(j - 1)]) != targets.end())
            return j;
    return x.len() + 1;
}

long long bsearch(const CgInSeq& x, long long i, const std::vector<CgInstr>& targets) {
    for (long long j = std::min(i, x.len()); j >= 1; --j)
        if (std::find(targets.begin(), targets.end(),
                      x.instrs[static_cast<std::size_t>(j - 1)]) != targets.end())
            return j;
    return 0;
}

ThreadSpec cg_behavior_at(const CgInSeq& x, long long i) {
    return detail::assemble(cg_steps(x), i);
}

ThreadSpec cg_left(const CgInSeq& x) { return cg_behavior_at(x, 1); }
ThreadSpec cg_right(const CgInSeq& x) { return cg_behavior_at(x, x.len()); }

std::set<long long> orphaned(const CgInSeq& x) {
    check_cg(x);
    std::set<long long> out;
    for (long long i = 1; i <= x.len(); ++i) {
        if (!is_goto(x.instrs[static_cast<std::size_t>(i - 1)])) continue;
        const long long t = goto_target(x, i);
        if (t < 1 || t > x.len()) out.insert(i);
    }
    return out;
}

LabelRelations label_relations(const CgInSeq& x) {
    check_cg(x);
    LabelRelations rel;
    std::vector<long long> lg;
    for (long long i = 1; i <= x.len(); ++i)
        if (const CgInstr& u = x.instrs[static_cast<std::size_t>(i - 1)];
            is_label(u) || is_goto(u))
            lg.push_back(i);

    auto forward = [&](long long i) {
        const CgInstr& u = x.instrs[static_cast<std::size_t>(i - 1)];
        return u.kind == CgInstr::Kind::FwdLabel || u.kind == CgInstr::Kind::FwdGoto;
    };
    auto number = [&](long long i) { return x.instrs[static_cast<std::size_t>(i - 1)].label; };

    std::map<long long, long long> target;
    for (long long i : lg)
        if (is_goto(x.instrs[static_cast<std::size_t>(i - 1)])) target[i] = goto_target(x, i);

    for (long long i : lg)
        for (long long j : lg) {
            if (i == j) continue;
            if (forward(i) == forward(j) && number(i) == number(j)) rel.corr.emplace(i, j);
            if (target.count(i) && target.count(j) &&
                x.instrs[static_cast<std::size_t>(i - 1)] ==
                    x.instrs[static_cast<std::size_t>(j - 1)] &&
                target[i] == target[j])
                rel.te.emplace(i, j);
        }
    for (const auto& [i, t] : target)
        if (t >= 1 && t <= x.len()) rel.gacc.emplace(i, t);

    std::map<long long, long long> parent;
    for (long long p : lg) parent[p] = p;
    std::function<long long(long long)> find = [&](long long p) {
        return parent[p] == p ? p : parent[p] = find(parent[p]);
    };
    auto unite = [&](long long a, long long b) { parent[find(a)] = find(b); };
    for (const auto& [i, j] : rel.te) unite(i, j);
    for (const auto& [i, j] : rel.gacc) unite(i, j);

    std::map<long long, std::size_t> index;
    for (long long p : lg) {
        const long long root = find(p);
        auto [it, fresh] = index.emplace(root, rel.classes.size());
        if (fresh) rel.classes.emplace_back();
        rel.classes[it->second].push_back(p);
    }
    return rel;
}

bool is_lnf(const CgInSeq& x) {
    const LabelRelations rel = label_relations(x);
    std::map<long long, std::size_t> class_of;
    for (std::size_t c = 0; c < rel.classes.size(); ++c)
        for (long long p : rel.classes[c]) class_of[p] = c;
    for (const auto& [i, j] : rel.corr)
        if (class_of[i] != class_of[j]) return false;
    return true;
}

CgInSeq to_lnf(const CgInSeq& x) {
    const LabelRelations rel = label_relations(x);
    CgInSeq out = x;
    for (std::size_t c = 0; c < rel.classes.size(); ++c)
        for (long long p : rel.classes[c])
            out.instrs[static_cast<std::size_t>(p - 1)].label = static_cast<long long>(c) + 1;
    return out;
}

CgInSeq free_one(const CgInSeq& x, long long l) {
    check_cg(x);
    CgInSeq out = x;
    for (CgInstr& u : out.instrs)
        if ((is_label(u) || is_goto(u)) && u.label >= l) ++u.label;
    return out;
}

CgInSeq free_seq(const CgInSeq& x, const std::vector<long long>& numbers) {
    CgInSeq out = x;
    for (long long l : numbers) out = free_one(out, l);
    return out;
}

ThreadSpec cg_rel_behavior_at(const CgInSeq& x, long long i, long long k) {
    check_cg(x);
    if (k < 2)
        throw PreconditionError(Precondition::BadK, "relative-goto bound must be at least 2");
    std::vector<detail::Step> steps = cg_steps(x);
    for (long long p = 1; p <= x.len(); ++p) {
        const CgInstr& u = x.instrs[static_cast<std::size_t>(p - 1)];
        if (!is_goto(u) || u.label > k) continue;
        if (u.label == 0)
            steps[static_cast<std::size_t>(p - 1)] = detail::Step::dead();
        else if (u.kind == CgInstr::Kind::FwdGoto)
            steps[static_cast<std::size_t>(p - 1)] = detail::Step::transfer(p + u.label);
        else
            steps[static_cast<std::size_t>(p - 1)] = detail::Step::transfer(p - u.label);
    }
    return detail::assemble(steps, i);
}

namespace {

using Body = std::function<std::vector<CgInstr>(const CgInstr&)>;

// Wraps each instruction's image in the hop gadgets: a descending
// chain of label/goto pairs on each side lets gotos with numbers
// 1..k travel that many blocks, while 0 finds no block to enter.
CgInSeq rel_gadgets(const CgInSeq& x, long long k, const Body& body) {
    check_cg(x);
    if (k < 2)
        throw PreconditionError(Precondition::BadK, "relative-goto bound must be at least 2");
    CgInSeq out;
    for (const CgInstr& u : x.instrs) {
        out.instrs.push_back(CgInstr::fwd_label(1));
        out.instrs.push_back(CgInstr::fwd_goto(0));
        out.instrs.push_back(CgInstr::bwd_label(0));
        for (long long l = 2; l <= k; ++l) {
            out.instrs.push_back(CgInstr::fwd_label(l));
            out.instrs.push_back(CgInstr::fwd_goto(l - 1));
        }
        std::vector<CgInstr> mid = body(u);
        if (is_backward(u)) {
            out.instrs.push_back(CgInstr::bwd_goto(2));
            out.instrs.push_back(CgInstr::bwd_goto(1));
            for (CgInstr& v : mid) out.instrs.push_back(std::move(v));
            out.instrs.push_back(CgInstr::bwd_label(0));
        } else {
            out.instrs.push_back(CgInstr::fwd_label(0));
            for (CgInstr& v : mid) out.instrs.push_back(std::move(v));
            out.instrs.push_back(CgInstr::fwd_goto(1));
            out.instrs.push_back(CgInstr::fwd_goto(2));
        }
        for (long long l = k; l >= 2; --l) {
            out.instrs.push_back(CgInstr::bwd_goto(l - 1));
            out.instrs.push_back(CgInstr::bwd_label(l));
        }
        out.instrs.push_back(CgInstr::fwd_label(0));
        out.instrs.push_back(CgInstr::bwd_goto(0));
        out.instrs.push_back(CgInstr::bwd_label(1));
    }
    return out;
}

} // namespace

CgInSeq rel_k(const CgInSeq& x, long long k) {
    return rel_gadgets(x, k, [k](const CgInstr& u) -> std::vector<CgInstr> {
        // Body labels with numbers the gadgets use would capture their
        // searches; they act as one-position hops instead.
        if (u.kind == CgInstr::Kind::FwdLabel && u.label <= k) return {CgInstr::fwd_goto(1)};
        if (u.kind == CgInstr::Kind::BwdLabel && u.label <= k) return {CgInstr::bwd_goto(1)};
        return {u};
    });
}

ThreadSpec cgp_behavior_at(const CgInSeq& x, long long i) {
    check_cg(x);
    std::vector<detail::Step> steps = cg_steps(x);
    for (long long p = 1; p <= x.len(); ++p) {
        const CgInstr& u = x.instrs[static_cast<std::size_t>(p - 1)];
        if (!is_goto(u)) continue;
        const std::vector<CgInstr> labels{CgInstr::fwd_label(u.label),
                                          CgInstr::bwd_label(u.label)};
        const long long t = u.kind == CgInstr::Kind::FwdGoto ? fsearch(x, p, labels)
                                                             : bsearch(x, p, labels);
        steps[static_cast<std::size_t>(p - 1)] = detail::Step::transfer(t);
    }
    return detail::assemble(steps, i);
}

CgInSeq to_directional(const CgInSeq& x) {
    check_cg(x);
    CgInSeq out = x;
    for (CgInstr& u : out.instrs) {
        if (u.kind == CgInstr::Kind::FwdLabel || u.kind == CgInstr::Kind::FwdGoto)
            u.label = 2 * u.label;
        else if (u.kind == CgInstr::Kind::BwdLabel || u.kind == CgInstr::Kind::BwdGoto)
            u.label = 2 * u.label + 1;
    }
    return out;
}

namespace {

// Shared by both general-target translations: each label's image holds
// a label of either direction so gotos from both sides find it, and
// the landing order makes the exit follow the label's own direction.
std::vector<CgInstr> label_triple(const CgInstr& u) {
    if (u.kind == CgInstr::Kind::FwdLabel)
        return {CgInstr::fwd_goto(u.label), CgInstr::bwd_label(u.label),
                CgInstr::fwd_label(u.label)};
    return {CgInstr::bwd_label(u.label), CgInstr::fwd_label(u.label),
            CgInstr::bwd_goto(u.label)};
}

FromGeneralResult from_general_with(const CgInSeq& x, const Body& body) {
    check_cg(x);
    // Gadget numbers 0..2 must stay distinct from every body number.
    const CgInSeq shifted = free_seq(x, {0, 1, 2});
    FromGeneralResult res;
    res.output = rel_gadgets(shifted, 2, body);
    long long start = 1;
    for (const CgInstr& u : shifted.instrs) {
        res.witness.push_back(start);
        start += 13 + static_cast<long long>(body(u).size());
    }
    return res;
}

} // namespace

FromGeneralResult from_general(const CgInSeq& x) {
    return from_general_with(x, [](const CgInstr& u) -> std::vector<CgInstr> {
        if (is_label(u)) return label_triple(u);
        return {u};
    });
}

FromGeneralResult from_general_uniform(const CgInSeq& x) {
    return from_general_with(x, [](const CgInstr& u) -> std::vector<CgInstr> {
        if (is_label(u)) return label_triple(u);
        // Every body pads to three instructions; terminal instructions
        // never reach their pads, and all others exit through them in
        // the block's travel direction.
        if (is_backward(u)) return {CgInstr::bwd_goto(2), CgInstr::bwd_goto(1), u};
        return {u, CgInstr::fwd_goto(1), CgInstr::fwd_goto(2)};
    });
}

PositionGraph cg_accessibility(const CgInSeq& x) {
    check_cg(x);
    PositionGraph g;
    g.len = x.len();
    auto clamp = [&](long long t) -> long long {
        if (t < 1) return 0;
        if (t > g.len) return g.len + 1;
        return t;
    };
    auto edge = [&](long long i, long long t) { g.edges.emplace(i, clamp(t)); };
    for (long long i = 1; i <= g.len; ++i) {
        const CgInstr& u = x.instrs[static_cast<std::size_t>(i - 1)];
        switch (u.kind) {
        case CgInstr::Kind::FwdBasic:
        case CgInstr::Kind::FwdLabel: edge(i, i + 1); break;
        case CgInstr::Kind::BwdBasic:
        case CgInstr::Kind::BwdLabel: edge(i, i - 1); break;
        case CgInstr::Kind::FwdPos:
        case CgInstr::Kind::FwdNeg:
            edge(i, i + 1);
            edge(i, i + 2);
            break;
        case CgInstr::Kind::BwdPos:
        case CgInstr::Kind::BwdNeg:
            edge(i, i - 1);
            edge(i, i - 2);
            break;
        case CgInstr::Kind::FwdGoto:
        case CgInstr::Kind::BwdGoto: edge(i, goto_target(x, i)); break;
        case CgInstr::Kind::Abort:
        case CgInstr::Kind::Halt: break;
        }
    }
    return g;
}

std::set<long long> cg_reachable(const CgInSeq& x, long long i) {
    return detail::graph_reachable(cg_accessibility(x), i);
}

std::set<long long> cg_exits(const CgInSeq& x) {
    const PositionGraph g = cg_accessibility(x);
    std::set<long long> out;
    for (const auto& [src, dst] : g.edges)
        if (dst == 0 || dst == g.len + 1) out.insert(src);
    return out;
}

std::pair<CgInSeq, long long> cg_remove_unreachable(const CgInSeq& x, long long i) {
    check_cg(x);
    if (i < 1 || i > x.len())
        throw PreconditionError(Precondition::BadBound, "start position out of range");
    const std::set<long long> live = cg_reachable(x, i);
    // A removed position is never the search target of a kept goto —
    // the goto's edge would have made it reachable — so deleting
    // changes no resolved target.
    CgInSeq out;
    long long entry = 0;
    for (long long p = 1; p <= x.len(); ++p) {
        if (!live.count(p)) continue;
        out.instrs.push_back(x.instrs[static_cast<std::size_t>(p - 1)]);
        if (p == i) entry = out.len();
    }
    return {out, entry};
}

CgInstr cg_dual(const CgInstr& u) {
    CgInstr d = u;
    switch (u.kind) {
    case CgInstr::Kind::FwdBasic: d.kind = CgInstr::Kind::BwdBasic; break;
    case CgInstr::Kind::BwdBasic: d.kind = CgInstr::Kind::FwdBasic; break;
    case CgInstr::Kind::FwdPos: d.kind = CgInstr::Kind::BwdPos; break;
    case CgInstr::Kind::BwdPos: d.kind = CgInstr::Kind::FwdPos; break;
    case CgInstr::Kind::FwdNeg: d.kind = CgInstr::Kind::BwdNeg; break;
    case CgInstr::Kind::BwdNeg: d.kind = CgInstr::Kind::FwdNeg; break;
    case CgInstr::Kind::FwdLabel: d.kind = CgInstr::Kind::BwdLabel; break;
    case CgInstr::Kind::BwdLabel: d.kind = CgInstr::Kind::FwdLabel; break;
    case CgInstr::Kind::FwdGoto: d.kind = CgInstr::Kind::BwdGoto; break;
    case CgInstr::Kind::BwdGoto: d.kind = CgInstr::Kind::FwdGoto; break;
    case CgInstr::Kind::Abort:
    case CgInstr::Kind::Halt: break;
    }
    return d;
}

CgInSeq cg_rev(const CgInSeq& x) {
    CgInSeq out;
    out.instrs.reserve(x.instrs.size());
    for (auto it = x.instrs.rbegin(); it != x.instrs.rend(); ++it)
        out.instrs.push_back(cg_dual(*it));
    return out;
}

namespace {

using detail::TextCursor;
using detail::parse_action;
using detail::parse_nat;

CgInstr parse_cg_instr(TextCursor& cur) {
    if (cur.done()) throw ParseError("expected instruction", cur.at);
    const char c = cur.peek();
    if (c == '!') {
        ++cur.at;
        return CgInstr::halt();
    }
    if (c == '#') {
        ++cur.at;
        return CgInstr::abort();
    }
    if (c == '+' || c == '-') {
        ++cur.at;
        const bool positive = c == '+';
        if (cur.eat('/'))
            return positive ? CgInstr::fwd_pos(parse_action(cur))
                            : CgInstr::fwd_neg(parse_action(cur));
        if (cur.eat('\\'))
            return positive ? CgInstr::bwd_pos(parse_action(cur))
                            : CgInstr::bwd_neg(parse_action(cur));
        throw ParseError("expected '/' or '\\' after test sign", cur.at);
    }
    if (c == '/') {
        ++cur.at;
        if (cur.eat('L')) return CgInstr::fwd_label(parse_nat(cur));
        if (cur.eat('G')) return CgInstr::fwd_goto(parse_nat(cur));
        if (cur.eat('#')) throw ParseError("no relative jumps in goto form", cur.at);
        if (cur.eat('+')) return CgInstr::fwd_pos(parse_action(cur));
        if (cur.eat('-')) return CgInstr::fwd_neg(parse_action(cur));
        return CgInstr::fwd_basic(parse_action(cur));
    }
    if (c == '\\') {
        ++cur.at;
        if (cur.eat('L')) return CgInstr::bwd_label(parse_nat(cur));
        if (cur.eat('G')) return CgInstr::bwd_goto(parse_nat(cur));
        if (cur.eat('#')) throw ParseError("no relative jumps in goto form", cur.at);
        if (cur.eat('+')) return CgInstr::bwd_pos(parse_action(cur));
        if (cur.eat('-')) return CgInstr::bwd_neg(parse_action(cur));
        return CgInstr::bwd_basic(parse_action(cur));
    }
    throw ParseError("expected instruction", cur.at);
}

} // namespace

CgInSeq parse_cg(const std::string& text) {
    TextCursor cur{text, 0};
    CgInSeq out;
    out.instrs.push_back(parse_cg_instr(cur));
    while (!cur.done() && cur.peek() == ';') {
        ++cur.at;
        out.instrs.push_back(parse_cg_instr(cur));
    }
    if (!cur.done()) throw ParseError("trailing input", cur.at);
    return out;
}

std::string print_cg_instr(const CgInstr& u) {
    switch (u.kind) {
    case CgInstr::Kind::FwdBasic: return "/" + u.action;
    case CgInstr::Kind::BwdBasic: return "\\" + u.action;
    case CgInstr::Kind::FwdPos: return "+/" + u.action;
    case CgInstr::Kind::BwdPos: return "+\\" + u.action;
    case CgInstr::Kind::FwdNeg: return "-/" + u.action;
    case CgInstr::Kind::BwdNeg: return "-\\" + u.action;
    case CgInstr::Kind::FwdLabel: return "/L" + std::to_string(u.label);
    case CgInstr::Kind::BwdLabel: return "\\L" + std::to_string(u.label);
    case CgInstr::Kind::FwdGoto: return "/G" + std::to_string(u.label);
    case CgInstr::Kind::BwdGoto: return "\\G" + std::to_string(u.label);
    case CgInstr::Kind::Abort: return "#";
    case CgInstr::Kind::Halt: return "!";
    }
    return {};
}

std::string print_cg(const CgInSeq& x) {
    check_cg(x);
    std::ostringstream out;
    for (std::size_t i = 0; i < x.instrs.size(); ++i) {
        if (i) out << ";";
        out << print_cg_instr(x.instrs[i]);
    }
    return out.str();
}

} // namespace iseq
