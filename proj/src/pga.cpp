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
#include <iseq/pga.hpp>

#include <iseq/error.hpp>

#include "extraction.hpp"
#include "text_cursor.hpp"

#include <cassert>
#include <set>
#include <sstream>

namespace iseq {

namespace {

void check_term(const PgaTerm& term) {
    if (term.prefix.empty() && term.loop.empty())
        throw PreconditionError(Precondition::BadBound, "empty term");
    for (const auto& part : {term.prefix, term.loop})
        for (const PgaInstr& u : part)
            if (u.kind == PgaInstr::Kind::Jump && u.counter < 0)
                throw PreconditionError(Precondition::BadBound, "negative jump counter");
}

} // namespace

PgaTerm fst(const PgaTree& tree) {
    std::vector<const PgaTree*> atoms;
    auto flatten = [&](auto&& self, const PgaTree& t) -> void {
        if (t.kind == PgaTree::Kind::Seq) {
            for (const PgaTree& child : t.children) self(self, child);
        } else {
            atoms.push_back(&t);
        }
    };
    flatten(flatten, tree);
    if (atoms.empty()) throw ParseError("empty term");

    std::vector<PgaInstr> prefix;
    for (const PgaTree* atom : atoms) {
        if (atom->kind == PgaTree::Kind::Instr) {
            prefix.push_back(atom->instr);
            continue;
        }
        // Repetition: nothing right of it is reachable. A nested
        // repetition inside the body wins over the body's own tail.
        const PgaTerm inner = fst(atom->children.front());
        if (!inner.loop.empty()) {
            prefix.insert(prefix.end(), inner.prefix.begin(), inner.prefix.end());
            return {std::move(prefix), inner.loop};
        }
        return {std::move(prefix), inner.prefix};
    }
    return {std::move(prefix), {}};
}

ThreadSpec pga_behavior(const PgaTerm& term) {
    check_term(term);
    const long long n = static_cast<long long>(term.prefix.size());
    const long long m = static_cast<long long>(term.loop.size());
    auto normalize = [&](long long t) -> long long {
        if (m == 0 || t <= n + m) return t;
        return n + 1 + ((t - n - 1) % m);
    };
    std::vector<detail::Step> steps;
    steps.reserve(static_cast<std::size_t>(n + m));
    for (long long p = 1; p <= n + m; ++p) {
        const PgaInstr& u = p <= n ? term.prefix[static_cast<std::size_t>(p - 1)]
                                   : term.loop[static_cast<std::size_t>(p - 1 - n)];
        switch (u.kind) {
        case PgaInstr::Kind::Basic:
            steps.push_back(detail::Step::act(u.action, normalize(p + 1), normalize(p + 1)));
            break;
        case PgaInstr::Kind::PosTest:
            steps.push_back(detail::Step::act(u.action, normalize(p + 1), normalize(p + 2)));
            break;
        case PgaInstr::Kind::NegTest:
            steps.push_back(detail::Step::act(u.action, normalize(p + 2), normalize(p + 1)));
            break;
        case PgaInstr::Kind::Jump:
            if (u.counter == 0)
                steps.push_back(detail::Step::dead());
            else
                steps.push_back(detail::Step::transfer(normalize(p + u.counter)));
            break;
        case PgaInstr::Kind::Halt:
            steps.push_back(detail::Step::halt());
            break;
        }
    }
    return detail::assemble(steps, 1);
}

namespace {

bool is_jump(const PgaInstr& u, bool positive_only = false) {
    return u.kind == PgaInstr::Kind::Jump && (!positive_only || u.counter >= 1);
}

// (1) Reduce in-loop counters modulo the loop length; a counter that is
// a multiple of the length jumps to its own position and diverges.
PgaTerm step_mod_loop(PgaTerm term) {
    const long long m = static_cast<long long>(term.loop.size());
    if (m == 0) return term;
    for (PgaInstr& u : term.loop) {
        if (!is_jump(u, true)) continue;
        u.counter %= m;
    }
    return term;
}

// (2) Shorten prefix jumps whose target lies beyond the loop's first
// pass to the congruent in-range target.
PgaTerm step_wrap_prefix(PgaTerm term) {
    const long long n = static_cast<long long>(term.prefix.size());
    const long long m = static_cast<long long>(term.loop.size());
    if (m == 0) return term;
    for (long long p = 1; p <= n; ++p) {
        PgaInstr& u = term.prefix[static_cast<std::size_t>(p - 1)];
        if (!is_jump(u, true)) continue;
        const long long t = p + u.counter;
        if (t <= n + m) continue;
        const long long wrapped = n + 1 + ((t - n - 1) % m);
        u.counter = wrapped - p;
    }
    return term;
}

// (3) Collapse chains of jumps into one jump with the composed counter;
// chains that cycle or land on #0 become #0.
PgaTerm step_collapse(PgaTerm term) {
    const long long n = static_cast<long long>(term.prefix.size());
    const long long m = static_cast<long long>(term.loop.size());
    const long long total = n + m;
    auto at = [&](long long p) -> const PgaInstr& {
        return p <= n ? term.prefix[static_cast<std::size_t>(p - 1)]
                      : term.loop[static_cast<std::size_t>(p - 1 - n)];
    };
    auto wrap = [&](long long q) -> long long {
        if (m == 0 || q <= total) return q;
        return n + 1 + ((q - n - 1) % m);
    };
    PgaTerm out = term;
    for (long long p = 1; p <= total; ++p) {
        const PgaInstr& u = at(p);
        if (!is_jump(u, true)) continue;
        long long q = p + u.counter;
        std::set<long long> visited{p};
        bool divergent = false;
        while (true) {
            const long long w = wrap(q);
            if (w < 1 || w > total) break;
            const PgaInstr& v = at(w);
            if (v.kind != PgaInstr::Kind::Jump) break;
            if (v.counter == 0 || !visited.insert(w).second) {
                divergent = true;
                break;
            }
            q += v.counter;
        }
        PgaInstr& slot = p <= n ? out.prefix[static_cast<std::size_t>(p - 1)]
                                : out.loop[static_cast<std::size_t>(p - 1 - n)];
        slot = divergent ? PgaInstr::jump(0) : PgaInstr::jump(q - p);
    }
    return out;
}

// (4) Replace the loop with its primitive period.
PgaTerm step_min_period(PgaTerm term) {
    const long long m = static_cast<long long>(term.loop.size());
    for (long long d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        bool periodic = true;
        for (long long i = d; i < m && periodic; ++i)
            periodic = term.loop[static_cast<std::size_t>(i)] ==
                       term.loop[static_cast<std::size_t>(i % d)];
        if (!periodic) continue;
        term.loop.resize(static_cast<std::size_t>(d));
        return term;
    }
    return term;
}

// (5) Fold the prefix tail into the loop when it repeats the loop's
// last instruction: X;u;(Y;u)^w = X;(u;Y)^w. Counters are renormalized
// by the next pipeline round.
PgaTerm step_fold_prefix(PgaTerm term) {
    if (term.prefix.empty() || term.loop.empty()) return term;
    if (!(term.prefix.back() == term.loop.back())) return term;
    term.prefix.pop_back();
    term.loop.insert(term.loop.begin(), term.loop.back());
    term.loop.pop_back();
    return term;
}

PgaTerm checked(PgaTerm (*step)(PgaTerm), const PgaTerm& term) {
    PgaTerm out = step(term);
#ifndef NDEBUG
    assert(bisimilar(pga_behavior(term), pga_behavior(out)));
#endif
    return out;
}

} // namespace

PgaTerm snd(const PgaTerm& term0) {
    check_term(term0);
    PgaTerm term = term0;
    const long long limit = 4 * static_cast<long long>(term.prefix.size() + term.loop.size()) + 8;
    for (long long round = 0; round < limit; ++round) {
        const PgaTerm before = term;
        term = checked(step_mod_loop, term);
        term = checked(step_wrap_prefix, term);
        term = checked(step_collapse, term);
        term = checked(step_min_period, term);
        term = checked(step_fold_prefix, term);
        if (term == before) return term;
    }
    assert(false && "second canonical form did not stabilize");
    return term;
}

namespace {

using detail::TextCursor;
using detail::parse_action;
using detail::parse_nat;

PgaTree parse_pga_term(TextCursor& cur);

PgaTree parse_pga_factor(TextCursor& cur) {
    if (cur.done()) throw ParseError("expected instruction", cur.at);
    const char c = cur.peek();
    if (c == '(') {
        ++cur.at;
        PgaTree body = parse_pga_term(cur);
        cur.expect(')', "')'");
        cur.expect('^', "'^w'");
        cur.expect('w', "'^w'");
        return PgaTree::rep(std::move(body));
    }
    if (c == '!') {
        ++cur.at;
        return PgaTree::leaf(PgaInstr::halt());
    }
    if (c == '#') {
        ++cur.at;
        return PgaTree::leaf(PgaInstr::jump(parse_nat(cur)));
    }
    if (c == '+') {
        ++cur.at;
        return PgaTree::leaf(PgaInstr::pos_test(parse_action(cur)));
    }
    if (c == '-') {
        ++cur.at;
        return PgaTree::leaf(PgaInstr::neg_test(parse_action(cur)));
    }
    return PgaTree::leaf(PgaInstr::basic(parse_action(cur)));
}

PgaTree parse_pga_term(TextCursor& cur) {
    std::vector<PgaTree> parts;
    parts.push_back(parse_pga_factor(cur));
    while (!cur.done() && cur.peek() == ';') {
        ++cur.at;
        parts.push_back(parse_pga_factor(cur));
    }
    if (parts.size() == 1) return std::move(parts.front());
    return PgaTree::seq(std::move(parts));
}

} // namespace

PgaTree parse_pga_tree(const std::string& text) {
    TextCursor cur{text, 0};
    PgaTree tree = parse_pga_term(cur);
    if (!cur.done()) throw ParseError("trailing input", cur.at);
    return tree;
}

PgaTerm parse_pga(const std::string& text) { return fst(parse_pga_tree(text)); }

std::string print_pga_instr(const PgaInstr& u) {
    switch (u.kind) {
    case PgaInstr::Kind::Basic: return u.action;
    case PgaInstr::Kind::PosTest: return "+" + u.action;
    case PgaInstr::Kind::NegTest: return "-" + u.action;
    case PgaInstr::Kind::Jump: return "#" + std::to_string(u.counter);
    case PgaInstr::Kind::Halt: return "!";
    }
    return {};
}

std::string print_pga(const PgaTerm& term) {
    check_term(term);
    std::ostringstream out;
    for (std::size_t i = 0; i < term.prefix.size(); ++i) {
        if (i) out << ";";
        out << print_pga_instr(term.prefix[i]);
    }
    if (!term.loop.empty()) {
        if (!term.prefix.empty()) out << ";";
        out << "(";
        for (std::size_t i = 0; i < term.loop.size(); ++i) {
            if (i) out << ";";
            out << print_pga_instr(term.loop[i]);
        }
        out << ")^w";
    }
    return out.str();
}

} // namespace iseq
