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
#include <iseq/thread.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace iseq {

// One arithmetic progression of counters: k >= lower, k = residue
// (mod modulus).
struct CounterClass {
    long long modulus = 1;
    long long residue = 0;
    long long lower = 1;

    bool operator==(const CounterClass&) const = default;
};

// An infinite set of jump counters: at least one progression, plus a
// finite set of extra members.
struct CounterSet {
    std::vector<CounterClass> classes;
    std::set<long long> extras;

    bool contains(long long k) const;

    bool operator==(const CounterSet&) const = default;
};

// Least member >= n; total because the set is infinite.
long long min_at_least(const CounterSet& s, long long n);

// Text syntax: comma-separated terms `every <m> from <lo> offset <r>`
// and `plus {k1,k2}`; e.g. `every 2 from 4 offset 0`.
CounterSet parse_counter_set(const std::string& text);
std::string print_counter_set(const CounterSet& s);

// 1-to-3 expansion onto the instruction set {+/a, /#k, \#k, !} with
// |i,X| = |3(i-1)+1, result|; abort becomes a two-jump cycle.
CInSeq elim_backward_to_minimal(const CInSeq& x);

enum class Polarity { Pos, Neg };

// Builds, for a finite thread, a sequence over {+/a, /#k, !} (or -/a
// under Polarity::Neg) with every counter in `j` and left behavior
// bisimilar to `p`. Exit jumps of embedded sub-builds are re-pointed
// past the enclosing sequence. InfiniteThread if a cycle is reachable
// from the entry.
CInSeq forward_only_build(const ThreadSpec& p, const CounterSet& j, Polarity polarity);

// Jump instructions transferring control from position i to position
// j (> z: current rightmost position) and back onto a replica of the
// target state: an escape jump, a lane of /#s hops, and one final
// backward jump. All forward counters come from `fwd`, backward ones
// from `bwd`.
std::vector<std::pair<long long, CInstr>> connect(long long i, long long j, long long z,
                                                  long long s, const CounterSet& fwd,
                                                  const CounterSet& bwd);

// Builds a sequence whose left behavior is the entry state of `p`,
// using forward counters from `fwd` and backward ones from `bwd`
// only: every state is replicated s times at stride s-1, tests reach
// their targets through connect lanes, and gaps are padded with halt.
// Counter choices are least-eligible; with a seed they are drawn
// randomly from the eligible members instead.
CInSeq construct_inseq(const ThreadSpec& p, const CounterSet& fwd, const CounterSet& bwd,
                       std::optional<std::uint64_t> seed = std::nullopt);

// The depth-n test tree whose 2^n level-n residuals are pairwise
// distinct: entry P1, inner nodes P_l, leaf rows Q_m^d keyed by the
// little-endian bits of m. Satisfies has_a_plus_n_property(.., a, n).
ThreadSpec gen_a_plus_n_thread(const Action& a, long long n);

// The depth-2n variant whose leaf rows re-enter the tree at
// P_{2^n + (m mod 2^n)}; its 2^{2n} 2n-residuals are pairwise
// distinct and every n-residual is a residual of every leaf row.
ThreadSpec gen_one_dir_thread(const Action& a, long long n);

// The complete binary jump tree over one action: node i (1 <= i <
// 2^n) is +/a;/#(3i-1);/#(3i+1); all 2^n leaf jumps are exits.
CInSeq gen_c_tree(long long n);

// The goto variant: node i is /Li;+/a;/G(2i);/G(2i+1); the 2^n gotos
// with numbers 2^n..2^{n+1}-1 are orphaned.
CgInSeq gen_cg_tree(long long n);

} // namespace iseq
