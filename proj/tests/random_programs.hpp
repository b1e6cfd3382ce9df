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
#include <iseq/cg.hpp>
#include <iseq/pga.hpp>
#include <iseq/thread.hpp>

#include <random>
#include <string>

namespace testgen {

inline long long pick(std::mt19937_64& rng, long long lo, long long hi) {
    return lo + static_cast<long long>(rng() % static_cast<unsigned long long>(hi - lo + 1));
}

inline iseq::Action act(std::mt19937_64& rng, int actions) {
    return std::string(1, static_cast<char>('a' + pick(rng, 0, actions - 1)));
}

inline iseq::CInstr random_c_instr(std::mt19937_64& rng, int actions, long long max_counter) {
    switch (pick(rng, 0, 9)) {
    case 0: return iseq::CInstr::fwd_basic(act(rng, actions));
    case 1: return iseq::CInstr::bwd_basic(act(rng, actions));
    case 2: return iseq::CInstr::fwd_pos(act(rng, actions));
    case 3: return iseq::CInstr::bwd_pos(act(rng, actions));
    case 4: return iseq::CInstr::fwd_neg(act(rng, actions));
    case 5: return iseq::CInstr::bwd_neg(act(rng, actions));
    case 6: return iseq::CInstr::fwd_jump(pick(rng, 1, max_counter));
    case 7: return iseq::CInstr::bwd_jump(pick(rng, 1, max_counter));
    case 8: return iseq::CInstr::abort();
    default: return iseq::CInstr::halt();
    }
}

inline iseq::CInSeq random_c(std::mt19937_64& rng, long long max_len, int actions,
                             long long max_counter) {
    iseq::CInSeq x;
    const long long len = pick(rng, 1, max_len);
    for (long long i = 0; i < len; ++i)
        x.instrs.push_back(random_c_instr(rng, actions, max_counter));
    return x;
}

inline iseq::CgInstr random_cg_instr(std::mt19937_64& rng, int actions, long long max_label) {
    switch (pick(rng, 0, 11)) {
    case 0: return iseq::CgInstr::fwd_basic(act(rng, actions));
    case 1: return iseq::CgInstr::bwd_basic(act(rng, actions));
    case 2: return iseq::CgInstr::fwd_pos(act(rng, actions));
    case 3: return iseq::CgInstr::bwd_pos(act(rng, actions));
    case 4: return iseq::CgInstr::fwd_neg(act(rng, actions));
    case 5: return iseq::CgInstr::bwd_neg(act(rng, actions));
    case 6: return iseq::CgInstr::fwd_label(pick(rng, 0, max_label));
    case 7: return iseq::CgInstr::bwd_label(pick(rng, 0, max_label));
    case 8: return iseq::CgInstr::fwd_goto(pick(rng, 0, max_label));
    case 9: return iseq::CgInstr::bwd_goto(pick(rng, 0, max_label));
    case 10: return iseq::CgInstr::abort();
    default: return iseq::CgInstr::halt();
    }
}

inline iseq::CgInSeq random_cg(std::mt19937_64& rng, long long max_len, int actions,
                               long long max_label) {
    iseq::CgInSeq x;
    const long long len = pick(rng, 1, max_len);
    for (long long i = 0; i < len; ++i)
        x.instrs.push_back(random_cg_instr(rng, actions, max_label));
    return x;
}

inline iseq::PgaInstr random_pga_instr(std::mt19937_64& rng, int actions) {
    switch (pick(rng, 0, 4)) {
    case 0: return iseq::PgaInstr::basic(act(rng, actions));
    case 1: return iseq::PgaInstr::pos_test(act(rng, actions));
    case 2: return iseq::PgaInstr::neg_test(act(rng, actions));
    case 3: return iseq::PgaInstr::jump(pick(rng, 0, 5));
    default: return iseq::PgaInstr::halt();
    }
}

inline iseq::PgaTree random_pga_tree(std::mt19937_64& rng, int depth) {
    if (depth <= 0 || pick(rng, 0, 2) == 0)
        return iseq::PgaTree::leaf(random_pga_instr(rng, 3));
    if (pick(rng, 0, 2) == 0) return iseq::PgaTree::rep(random_pga_tree(rng, depth - 1));
    std::vector<iseq::PgaTree> parts;
    const long long width = pick(rng, 2, 3);
    for (long long i = 0; i < width; ++i) parts.push_back(random_pga_tree(rng, depth - 1));
    return iseq::PgaTree::seq(std::move(parts));
}

inline iseq::PgaTerm random_pga_term(std::mt19937_64& rng) {
    iseq::PgaTerm t;
    const long long prefix = pick(rng, 0, 5);
    long long loop = pick(rng, 0, 5);
    if (prefix == 0 && loop == 0) loop = 1;
    for (long long i = 0; i < prefix; ++i) t.prefix.push_back(random_pga_instr(rng, 3));
    for (long long i = 0; i < loop; ++i) t.loop.push_back(random_pga_instr(rng, 3));
    return t;
}

// An arbitrary (possibly looping) linear spec with entry 0.
inline iseq::ThreadSpec random_thread(std::mt19937_64& rng, int max_states) {
    iseq::ThreadSpec t;
    const int n = static_cast<int>(pick(rng, 1, max_states));
    for (int i = 0; i < n; ++i) {
        const long long roll = pick(rng, 0, 9);
        if (roll == 0) {
            t.states.push_back(iseq::StateDef::halt());
        } else if (roll == 1) {
            t.states.push_back(iseq::StateDef::dead());
        } else {
            t.states.push_back(iseq::StateDef::test(act(rng, 3),
                                                    static_cast<int>(pick(rng, 0, n - 1)),
                                                    static_cast<int>(pick(rng, 0, n - 1))));
        }
    }
    return t;
}

// A loop-free spec: test edges only point at higher indices.
inline iseq::ThreadSpec random_finite_thread(std::mt19937_64& rng, int max_states) {
    iseq::ThreadSpec t;
    const int n = static_cast<int>(pick(rng, 1, max_states));
    for (int i = 0; i < n; ++i) {
        if (i == n - 1 || pick(rng, 0, 3) == 0) {
            t.states.push_back(pick(rng, 0, 1) == 0 ? iseq::StateDef::halt()
                                                    : iseq::StateDef::dead());
        } else {
            t.states.push_back(iseq::StateDef::test(act(rng, 3),
                                                    static_cast<int>(pick(rng, i + 1, n - 1)),
                                                    static_cast<int>(pick(rng, i + 1, n - 1))));
        }
    }
    return t;
}

} // namespace testgen
