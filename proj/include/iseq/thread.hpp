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

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace iseq {

// A basic action: non-empty, matches [a-z][a-z0-9_]*.
using Action = std::string;

bool valid_action(const std::string& name);

enum class StateKind { Halt, Dead, Test };

// One state of a finite linear recursive specification: S, D, or a
// postconditional test continuing in `yes` on reply true and `no` on
// reply false. Action prefix a.P is Test with yes == no.
struct StateDef {
    StateKind kind = StateKind::Dead;
    Action action{};
    int yes = -1;
    int no = -1;

    static StateDef halt() { return {StateKind::Halt, {}, -1, -1}; }
    static StateDef dead() { return {StateKind::Dead, {}, -1, -1}; }
    static StateDef test(Action a, int yes, int no) {
        return {StateKind::Test, std::move(a), yes, no};
    }

    bool operator==(const StateDef&) const = default;
};

// A regular thread as a finite linear recursive specification.
struct ThreadSpec {
    std::vector<StateDef> states;
    int entry = 0;

    bool operator==(const ThreadSpec&) const = default;
};

// Drops states unreachable from the entry; applied by all constructors.
ThreadSpec trim(const ThreadSpec& spec);

ThreadSpec halt_thread();
ThreadSpec dead_thread();
ThreadSpec postconditional(const Action& a, const ThreadSpec& yes, const ThreadSpec& no);
ThreadSpec action_prefix(const Action& a, const ThreadSpec& next);

// n-fold action prefix: n a-actions, then `tail`. Requires n >= 1.
ThreadSpec action_power(const Action& a, long long n, const ThreadSpec& tail);

// Projection: all behavior beyond depth n replaced by D; the result is
// loop-free.
ThreadSpec approximate(const ThreadSpec& spec, long long n);

// Bisimulation classes of a ThreadSpec's states by partition refinement.
std::vector<int> bisim_classes(const ThreadSpec& spec);

bool bisimilar(const ThreadSpec& a, const ThreadSpec& b);

// Canonical quotient: minimum state count, states in breadth-first order
// from the entry (yes before no), so equal behaviors print identically.
ThreadSpec minimize(const ThreadSpec& spec);

// States reachable from the entry via yes/no edges, entry included.
std::set<int> residuals(const ThreadSpec& spec);

// The multiset of threads reachable by exactly n yes/no steps from the
// entry; Halt/Dead states end their path, so the list has at most 2^n
// entries.
std::vector<ThreadSpec> n_residuals(const ThreadSpec& spec, long long n);

// True iff approximate(spec, n) equals a^n.D, the 2^n n-residuals are
// pairwise non-bisimilar, and no n-residual is bisimilar to an m-residual
// for any m < n. Holds trivially for n = 0.
bool has_a_plus_n_property(const ThreadSpec& spec, const Action& a, long long n);

// Shortest reply sequence after which the two threads differ (by state
// kind or test action); nullopt iff bisimilar. Ties broken yes-first.
std::optional<std::vector<bool>> distinguishing_replies(const ThreadSpec& a,
                                                        const ThreadSpec& b);

// Text format: states `P<i> = S`, `P<i> = D`, `P<i> = a ? P<j> : P<k>`,
// sugar `P<i> = a . P<j>`; separated by `;` or newlines; entry is P0.
ThreadSpec parse_thread_spec(const std::string& text);
std::string print_thread_spec(const ThreadSpec& spec);

} // namespace iseq
