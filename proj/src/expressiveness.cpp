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
#include <iseq/expressiveness.hpp>

#include <iseq/error.hpp>

#include "text_cursor.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <utility>

namespace iseq {

namespace {

// Hard ceiling on generated sequence/thread sizes; sparse counter sets
// and deep trees would otherwise exhaust memory silently.
constexpr long long kMaxBuild = 1LL << 22;

void require_counter_set(const CounterSet& s) {
    if (s.classes.empty())
        throw PreconditionError(Precondition::BadBound,
                                "counter set needs at least one progression");
    for (const CounterClass& c : s.classes)
        if (c.modulus < 1 || c.residue < 0 || c.residue >= c.modulus || c.lower < 1)
            throw PreconditionError(Precondition::BadBound, "malformed counter progression");
}

} // namespace

bool CounterSet::contains(long long k) const {
    if (extras.count(k) != 0) return true;
    for (const CounterClass& c : classes) {
        if (k < c.lower) continue;
        if (((k % c.modulus) + c.modulus) % c.modulus == c.residue) return true;
    }
    return false;
}

long long min_at_least(const CounterSet& s, long long n) {
    require_counter_set(s);
    long long best = std::numeric_limits<long long>::max();
    const auto extra = s.extras.lower_bound(n);
    if (extra != s.extras.end()) best = *extra;
    for (const CounterClass& c : s.classes) {
        const long long base = std::max(n, c.lower);
        const long long step = (((c.residue - base) % c.modulus) + c.modulus) % c.modulus;
        best = std::min(best, base + step);
    }
    return best;
}

CounterSet parse_counter_set(const std::string& text) {
    detail::TextCursor cur{text};
    CounterSet out;
    auto word = [&cur, &text]() {
        cur.skip_ws();
        std::string w;
        while (cur.at < text.size() && text[cur.at] >= 'a' && text[cur.at] <= 'z')
            w.push_back(text[cur.at++]);
        return w;
    };
    bool first = true;
    while (!cur.done()) {
        if (!first) cur.expect(',', "','");
        first = false;
        const std::string w = word();
        if (w == "every") {
            CounterClass c;
            c.modulus = detail::parse_nat(cur);
            if (word() != "from") throw ParseError("expected 'from'", cur.at);
            c.lower = detail::parse_nat(cur);
            if (word() != "offset") throw ParseError("expected 'offset'", cur.at);
            c.residue = detail::parse_nat(cur);
            if (c.modulus < 1) throw ParseError("modulus must be at least 1", cur.at);
            if (c.residue >= c.modulus) throw ParseError("offset must be below the modulus", cur.at);
            if (c.lower < 1) throw ParseError("lower bound must be at least 1", cur.at);
            out.classes.push_back(c);
        } else if (w == "plus") {
            cur.expect('{', "'{'");
            if (!cur.eat('}')) {
                out.extras.insert(detail::parse_nat(cur));
                while (cur.eat(',')) out.extras.insert(detail::parse_nat(cur));
                cur.expect('}', "'}'");
            }
        } else {
            throw ParseError("expected 'every' or 'plus'", cur.at);
        }
    }
    if (out.classes.empty())
        throw ParseError("counter set needs at least one 'every' term", cur.at);
    return out;
}

std::string print_counter_set(const CounterSet& s) {
    std::ostringstream out;
    bool first = true;
    for (const CounterClass& c : s.classes) {
        if (!first) out << ", ";
        first = false;
        out << "every " << c.modulus << " from " << c.lower << " offset " << c.residue;
    }
    if (!s.extras.empty()) {
        out << ", plus {";
        bool inner = true;
        for (long long e : s.extras) {
            if (!inner) out << ",";
            inner = false;
            out << e;
        }
        out << "}";
    }
    return out.str();
}

CInSeq elim_backward_to_minimal(const CInSeq& x) {
    CInSeq out;
    out.instrs.reserve(x.instrs.size() * 3);
    auto emit = [&out](CInstr a, CInstr b, CInstr c) {
        out.instrs.push_back(std::move(a));
        out.instrs.push_back(std::move(b));
        out.instrs.push_back(std::move(c));
    };
    for (const CInstr& u : x.instrs) {
        switch (u.kind) {
        case CInstr::Kind::FwdBasic:
            emit(CInstr::fwd_pos(u.action), CInstr::fwd_jump(2), CInstr::fwd_jump(1));
            break;
        case CInstr::Kind::BwdBasic:
            emit(CInstr::fwd_pos(u.action), CInstr::bwd_jump(4), CInstr::bwd_jump(5));
            break;
        case CInstr::Kind::FwdPos:
            emit(CInstr::fwd_pos(u.action), CInstr::fwd_jump(2), CInstr::fwd_jump(4));
            break;
        case CInstr::Kind::BwdPos:
            emit(CInstr::fwd_pos(u.action), CInstr::bwd_jump(4), CInstr::bwd_jump(8));
            break;
        case CInstr::Kind::FwdNeg:
            emit(CInstr::fwd_pos(u.action), CInstr::fwd_jump(5), CInstr::fwd_jump(1));
            break;
        case CInstr::Kind::BwdNeg:
            emit(CInstr::fwd_pos(u.action), CInstr::bwd_jump(7), CInstr::bwd_jump(5));
            break;
        case CInstr::Kind::FwdJump:
            emit(CInstr::fwd_jump(3 * u.counter), CInstr::halt(), CInstr::halt());
            break;
        case CInstr::Kind::BwdJump:
            emit(CInstr::bwd_jump(3 * u.counter), CInstr::halt(), CInstr::halt());
            break;
        case CInstr::Kind::Abort:
            emit(CInstr::fwd_jump(1), CInstr::bwd_jump(1), CInstr::halt());
            break;
        case CInstr::Kind::Halt:
            emit(CInstr::halt(), CInstr::halt(), CInstr::halt());
            break;
        }
    }
    return out;
}

namespace {

void require_thread(const ThreadSpec& t) {
    const int n = static_cast<int>(t.states.size());
    if (n == 0 || t.entry < 0 || t.entry >= n)
        throw PreconditionError(Precondition::BadBound, "thread spec entry out of range");
    for (const StateDef& st : t.states)
        if (st.kind == StateKind::Test && (st.yes < 0 || st.yes >= n || st.no < 0 || st.no >= n))
            throw PreconditionError(Precondition::BadBound, "thread spec edge out of range");
}

void require_finite(const ThreadSpec& t) {
    enum { White, Gray, Black };
    std::vector<int> color(t.states.size(), White);
    std::vector<std::pair<int, int>> stack{{t.entry, 0}};
    color[static_cast<std::size_t>(t.entry)] = Gray;
    while (!stack.empty()) {
        auto& [state, child] = stack.back();
        const StateDef& st = t.states[static_cast<std::size_t>(state)];
        if (st.kind != StateKind::Test || child == 2) {
            color[static_cast<std::size_t>(state)] = Black;
            stack.pop_back();
            continue;
        }
        const int next = child == 0 ? st.yes : st.no;
        ++child;
        if (color[static_cast<std::size_t>(next)] == Gray)
            throw PreconditionError(Precondition::InfiniteThread,
                                    "thread has a cycle reachable from the entry");
        if (color[static_cast<std::size_t>(next)] == White) {
            color[static_cast<std::size_t>(next)] = Gray;
            stack.emplace_back(next, 0);
        }
    }
}

CInSeq fwd_build(const ThreadSpec& t, int state, const CounterSet& jset, bool neg) {
    const StateDef& st = t.states[static_cast<std::size_t>(state)];
    if (st.kind == StateKind::Halt) return CInSeq{{CInstr::halt()}};
    if (st.kind == StateKind::Dead) return CInSeq{{CInstr::fwd_jump(min_at_least(jset, 1))}};
    // The test's step-over branch starts right after the escape jump;
    // the jump reaches the tail, so the tail carries the other branch.
    CInSeq mid = fwd_build(t, neg ? st.yes : st.no, jset, neg);
    const CInSeq tail = fwd_build(t, neg ? st.no : st.yes, jset, neg);
    const long long k = min_at_least(jset, mid.len() + 1);
    const long long pad = k - mid.len() - 1;
    const long long total = 2 + mid.len() + pad + tail.len();
    if (total > kMaxBuild)
        throw PreconditionError(Precondition::BadBound, "generated sequence exceeds the size guard");
    // Exit jumps of the embedded branch must still leave the whole
    // sequence: bump them past both the shifted target (old counter
    // plus tail length) and the end as seen from their new position.
    for (long long q = 1; q <= mid.len(); ++q) {
        CInstr& u = mid.instrs[static_cast<std::size_t>(q - 1)];
        if (u.kind != CInstr::Kind::FwdJump || q + u.counter <= mid.len()) continue;
        u.counter = min_at_least(jset, std::max(u.counter + tail.len(), total + 1 - (q + 2)));
    }
    CInSeq out;
    out.instrs.reserve(static_cast<std::size_t>(total));
    out.instrs.push_back(neg ? CInstr::fwd_neg(st.action) : CInstr::fwd_pos(st.action));
    out.instrs.push_back(CInstr::fwd_jump(k));
    out.instrs.insert(out.instrs.end(), mid.instrs.begin(), mid.instrs.end());
    out.instrs.insert(out.instrs.end(), static_cast<std::size_t>(pad), CInstr::halt());
    out.instrs.insert(out.instrs.end(), tail.instrs.begin(), tail.instrs.end());
    return out;
}

} // namespace

CInSeq forward_only_build(const ThreadSpec& p, const CounterSet& j, Polarity polarity) {
    require_counter_set(j);
    require_thread(p);
    require_finite(p);
    return fwd_build(p, p.entry, j, polarity == Polarity::Neg);
}

namespace {

using Select = std::function<long long(const CounterSet&, long long)>;

std::vector<std::pair<long long, CInstr>> connect_with(long long i, long long j, long long z,
                                                       long long s, const CounterSet& fwd,
                                                       const CounterSet& bwd,
                                                       const Select& pick) {
    const long long r = i + pick(fwd, z + 1 - i);
    const long long l = r - pick(bwd, r - j);
    long long p = (j - l) / s;
    p += j - (l + p * s);
    std::vector<std::pair<long long, CInstr>> out;
    out.reserve(static_cast<std::size_t>(p) + 2);
    out.emplace_back(i, CInstr::fwd_jump(r - i));
    for (long long h = 0; h < p; ++h) out.emplace_back(r + h * s, CInstr::fwd_jump(s));
    out.emplace_back(r + p * s, CInstr::bwd_jump(r - l));
    return out;
}

} // namespace

std::vector<std::pair<long long, CInstr>> connect(long long i, long long j, long long z,
                                                  long long s, const CounterSet& fwd,
                                                  const CounterSet& bwd) {
    return connect_with(i, j, z, s, fwd, bwd, min_at_least);
}

CInSeq construct_inseq(const ThreadSpec& p, const CounterSet& fwd, const CounterSet& bwd,
                       std::optional<std::uint64_t> seed) {
    require_counter_set(fwd);
    require_counter_set(bwd);
    require_thread(p);
    // The construction reads the entry as state 0.
    ThreadSpec t = p;
    if (t.entry != 0) {
        std::swap(t.states[0], t.states[static_cast<std::size_t>(t.entry)]);
        for (StateDef& st : t.states) {
            if (st.kind != StateKind::Test) continue;
            for (int* edge : {&st.yes, &st.no}) {
                if (*edge == 0) *edge = t.entry;
                else if (*edge == t.entry) *edge = 0;
            }
        }
        t.entry = 0;
    }

    std::mt19937_64 rng(seed.value_or(0));
    Select pick = min_at_least;
    if (seed) {
        pick = [&rng](const CounterSet& s, long long bound) {
            long long v = min_at_least(s, bound);
            const int hops = static_cast<int>(rng() % 8);
            for (int h = 0; h < hops; ++h) v = min_at_least(s, v + 1);
            return v;
        };
    }

    const long long n = static_cast<long long>(t.states.size());
    const long long s = pick(fwd, 4);
    long long z = n * s * (s - 1);
    if (z > kMaxBuild)
        throw PreconditionError(Precondition::BadBound, "generated sequence exceeds the size guard");

    std::map<long long, CInstr> placed;
    auto put = [&placed](long long pos, const CInstr& u) {
        const bool fresh = placed.emplace(pos, u).second;
        assert(fresh);
        (void)fresh;
    };
    for (long long i = 0; i < n; ++i) {
        const StateDef& st = t.states[static_cast<std::size_t>(i)];
        for (long long rep = 0; rep < s; ++rep) {
            const long long c = (i * s + rep) * (s - 1) + 1;
            if (st.kind == StateKind::Halt) {
                put(c, CInstr::halt());
            } else if (st.kind == StateKind::Dead) {
                put(c, CInstr::bwd_jump(pick(bwd, c)));
            } else {
                put(c, CInstr::fwd_pos(st.action));
                for (const auto& [pos, u] :
                     connect_with(c + 1, st.yes * s * (s - 1) + 1, z, s, fwd, bwd, pick))
                    put(pos, u);
                z = placed.rbegin()->first;
                for (const auto& [pos, u] :
                     connect_with(c + 2, st.no * s * (s - 1) + 1, z, s, fwd, bwd, pick))
                    put(pos, u);
                z = placed.rbegin()->first;
                if (z > kMaxBuild)
                    throw PreconditionError(Precondition::BadBound,
                                            "generated sequence exceeds the size guard");
            }
        }
    }
    const long long last = std::max(z - 1, placed.rbegin()->first);
    CInSeq out;
    out.instrs.assign(static_cast<std::size_t>(last), CInstr::halt());
    for (const auto& [pos, u] : placed) out.instrs[static_cast<std::size_t>(pos - 1)] = u;
    return out;
}

ThreadSpec gen_a_plus_n_thread(const Action& a, long long n) {
    if (n < 1 || n > 16)
        throw PreconditionError(Precondition::BadBound, "depth must be in [1, 16]");
    const long long full = 1LL << n;
    const long long half = full >> 1;
    auto p_at = [](long long l) { return static_cast<int>(l - 1); };
    auto q_at = [full, n](long long m, long long d) {
        return static_cast<int>((full - 1) + m * (n + 1) + d);
    };
    const int dead = static_cast<int>((full - 1) + full * (n + 1));
    ThreadSpec t;
    t.states.resize(static_cast<std::size_t>(dead) + 1);
    for (long long l = 1; l < full; ++l) {
        if (l < half)
            t.states[static_cast<std::size_t>(p_at(l))] =
                StateDef::test(a, p_at(2 * l), p_at(2 * l + 1));
        else
            t.states[static_cast<std::size_t>(p_at(l))] =
                StateDef::test(a, q_at(2 * l - full, n), q_at(2 * l - full + 1, n));
    }
    for (long long m = 0; m < full; ++m) {
        t.states[static_cast<std::size_t>(q_at(m, 0))] = StateDef::test(a, dead, dead);
        for (long long d = 1; d <= n; ++d) {
            const bool bit = ((m >> (d - 1)) & 1) != 0;
            t.states[static_cast<std::size_t>(q_at(m, d))] =
                bit ? StateDef::test(a, dead, q_at(m, d - 1))
                    : StateDef::test(a, q_at(m, d - 1), dead);
        }
    }
    t.states[static_cast<std::size_t>(dead)] = StateDef::dead();
    t.entry = 0;
    return t;
}

ThreadSpec gen_one_dir_thread(const Action& a, long long n) {
    if (n < 1 || n > 8)
        throw PreconditionError(Precondition::BadBound, "depth must be in [1, 8]");
    const long long depth = 2 * n;
    const long long full = 1LL << depth;
    const long long half = full >> 1;
    const long long window = 1LL << n;
    auto p_at = [](long long l) { return static_cast<int>(l - 1); };
    auto q_at = [full, depth](long long m, long long d) {
        return static_cast<int>((full - 1) + m * (depth + 1) + d);
    };
    ThreadSpec t;
    t.states.resize(static_cast<std::size_t>((full - 1) + full * (depth + 1)));
    for (long long l = 1; l < full; ++l) {
        if (l < half)
            t.states[static_cast<std::size_t>(p_at(l))] =
                StateDef::test(a, p_at(2 * l), p_at(2 * l + 1));
        else
            t.states[static_cast<std::size_t>(p_at(l))] =
                StateDef::test(a, q_at(2 * l - full, depth), q_at(2 * l - full + 1, depth));
    }
    for (long long m = 0; m < full; ++m) {
        t.states[static_cast<std::size_t>(q_at(m, 0))] = StateDef::dead();
        const int reentry = p_at(window + m % window);
        for (long long d = 1; d <= depth; ++d) {
            const bool bit = ((m >> (d - 1)) & 1) != 0;
            t.states[static_cast<std::size_t>(q_at(m, d))] =
                bit ? StateDef::test(a, reentry, q_at(m, d - 1))
                    : StateDef::test(a, q_at(m, d - 1), reentry);
        }
    }
    t.entry = 0;
    return t;
}

CInSeq gen_c_tree(long long n) {
    if (n < 1 || n > 20)
        throw PreconditionError(Precondition::BadBound, "depth must be in [1, 20]");
    CInSeq out;
    out.instrs.reserve(static_cast<std::size_t>(3 * ((1LL << n) - 1)));
    for (long long i = 1; i < (1LL << n); ++i) {
        out.instrs.push_back(CInstr::fwd_pos("a"));
        out.instrs.push_back(CInstr::fwd_jump(3 * i - 1));
        out.instrs.push_back(CInstr::fwd_jump(3 * i + 1));
    }
    return out;
}

CgInSeq gen_cg_tree(long long n) {
    if (n < 1 || n > 20)
        throw PreconditionError(Precondition::BadBound, "depth must be in [1, 20]");
    CgInSeq out;
    out.instrs.reserve(static_cast<std::size_t>(4 * ((1LL << n) - 1)));
    for (long long i = 1; i < (1LL << n); ++i) {
        out.instrs.push_back(CgInstr::fwd_label(i));
        out.instrs.push_back(CgInstr::fwd_pos("a"));
        out.instrs.push_back(CgInstr::fwd_goto(2 * i));
        out.instrs.push_back(CgInstr::fwd_goto(2 * i + 1));
    }
    return out;
}

} // namespace iseq
