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
#include <vector>

namespace iseq::detail {

// One execution step of an instruction sequence position. Targets are
// raw 1-based positions; anything outside [1, size] behaves as Dead.
struct Step {
    enum class Kind { Halt, Dead, Act, Transfer };

    Kind kind = Kind::Dead;
    Action action{};
    long long yes = 0;
    long long no = 0;
    long long next = 0;

    static Step halt() { return {Kind::Halt, {}, 0, 0, 0}; }
    static Step dead() { return {Kind::Dead, {}, 0, 0, 0}; }
    static Step act(Action a, long long yes, long long no) {
        return {Kind::Act, std::move(a), yes, no, 0};
    }
    static Step transfer(long long next) { return {Kind::Transfer, {}, 0, 0, next}; }
};

// Assembles the thread reached from `entry` over per-position steps for
// positions 1..steps.size(). Transfer chains are resolved with cycle
// detection; cycles and out-of-range positions yield Dead.
ThreadSpec assemble(const std::vector<Step>& steps, long long entry);

// Closure of `start` (clamped to the graph's sentinels) over the edges,
// including start itself.
std::set<long long> graph_reachable(const PositionGraph& graph, long long start);

} // namespace iseq::detail
