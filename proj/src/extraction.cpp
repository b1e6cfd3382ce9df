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
#include "extraction.hpp"

#include <deque>

namespace iseq::detail {

namespace {

constexpr long long kDead = 0; // canonical out-of-range sentinel

// Follows Transfer chains from `from` until hitting a Halt/Dead/Act
// position, the outside, or a cycle (both yield the Dead sentinel).
long long resolve(const std::vector<Step>& steps, std::vector<long long>& memo, long long from) {
    const long long n = static_cast<long long>(steps.size());
    std::vector<long long> trail;
    long long at = from;
    long long result = kDead;
    while (true) {
        if (at < 1 || at > n) break;
        long long& cached = memo[static_cast<std::size_t>(at)];
        if (cached == -2) break; // on the current trail: cycle
        if (cached != -1) {
            result = cached;
            break;
        }
        const Step& step = steps[static_cast<std::size_t>(at - 1)];
        if (step.kind != Step::Kind::Transfer) {
            result = at;
            break;
        }
        cached = -2;
        trail.push_back(at);
        at = step.next;
    }
    for (long long seen : trail) memo[static_cast<std::size_t>(seen)] = result;
    return result;
}

} // namespace

ThreadSpec assemble(const std::vector<Step>& steps, long long entry) {
    const long long n = static_cast<long long>(steps.size());
    std::vector<long long> memo(static_cast<std::size_t>(n) + 1, -1);
    auto target = [&](long long at) { return resolve(steps, memo, at); };

    // State layout: 0 = Dead, 1 = Halt, 2 + k = k-th Act position.
    std::vector<int> slot(static_cast<std::size_t>(n) + 1, -1);
    std::vector<long long> acts;
    for (long long p = 1; p <= n; ++p) {
        if (steps[static_cast<std::size_t>(p - 1)].kind == Step::Kind::Act) {
            slot[static_cast<std::size_t>(p)] = static_cast<int>(2 + acts.size());
            acts.push_back(p);
        }
    }
    auto state_of = [&](long long p) -> int {
        if (p < 1 || p > n) return 0;
        const Step& step = steps[static_cast<std::size_t>(p - 1)];
        if (step.kind == Step::Kind::Halt) return 1;
        if (step.kind == Step::Kind::Act) return slot[static_cast<std::size_t>(p)];
        return 0;
    };

    ThreadSpec out;
    out.states.push_back(StateDef::dead());
    out.states.push_back(StateDef::halt());
    for (long long p : acts) {
        const Step& step = steps[static_cast<std::size_t>(p - 1)];
        out.states.push_back(StateDef::test(step.action, state_of(target(step.yes)),
                                            state_of(target(step.no))));
    }
    out.entry = state_of(target(entry));
    return trim(out);
}

std::set<long long> graph_reachable(const PositionGraph& graph, long long start) {
    const long long at = start < 1 ? 0 : (start > graph.len ? graph.len + 1 : start);
    std::set<long long> seen{at};
    std::deque<long long> queue{at};
    while (!queue.empty()) {
        const long long p = queue.front();
        queue.pop_front();
        for (auto it = graph.edges.lower_bound({p, 0});
             it != graph.edges.end() && it->first == p; ++it) {
            if (seen.insert(it->second).second) queue.push_back(it->second);
        }
    }
    return seen;
}

} // namespace iseq::detail
