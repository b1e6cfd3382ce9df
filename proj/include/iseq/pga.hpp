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

#include <iseq/thread.hpp>

#include <string>
#include <vector>

namespace iseq {

// Single-pass instructions: a, +a, -a, #k (k >= 0; #0 diverges), !.
struct PgaInstr {
    enum class Kind { Basic, PosTest, NegTest, Jump, Halt };

    Kind kind = Kind::Halt;
    Action action{};
    long long counter = 0;

    static PgaInstr basic(Action a) { return {Kind::Basic, std::move(a), 0}; }
    static PgaInstr pos_test(Action a) { return {Kind::PosTest, std::move(a), 0}; }
    static PgaInstr neg_test(Action a) { return {Kind::NegTest, std::move(a), 0}; }
    static PgaInstr jump(long long k) { return {Kind::Jump, {}, k}; }
    static PgaInstr halt() { return {Kind::Halt, {}, 0}; }

    bool operator==(const PgaInstr&) const = default;
};

// Parse tree over `;` and `^w`, with nesting and repetition anywhere.
struct PgaTree {
    enum class Kind { Instr, Seq, Rep };

    Kind kind = Kind::Instr;
    PgaInstr instr{};
    std::vector<PgaTree> children;

    static PgaTree leaf(PgaInstr u) { return {Kind::Instr, std::move(u), {}}; }
    static PgaTree seq(std::vector<PgaTree> parts) { return {Kind::Seq, {}, std::move(parts)}; }
    static PgaTree rep(PgaTree body) { return {Kind::Rep, {}, {std::move(body)}}; }
};

// First canonical form: X or X;Y^w with X, Y repetition-free. `loop`
// empty means no repetition; prefix and loop are never both empty.
struct PgaTerm {
    std::vector<PgaInstr> prefix;
    std::vector<PgaInstr> loop;

    bool operator==(const PgaTerm&) const = default;
};

// Converts a parse tree to first canonical form: everything right of a
// repetition is dropped and nested repetition is flattened.
PgaTerm fst(const PgaTree& tree);

// Second canonical form: no chained jumps, in-loop counters reduced
// modulo the loop length, prefix-into-loop counters minimal, the loop
// replaced by its primitive period, and the prefix of minimal length.
PgaTerm snd(const PgaTerm& term);

// Thread extraction |X|. Out-of-range jumps in a repetition-free term,
// #0, and loops of pure jumps all yield D.
ThreadSpec pga_behavior(const PgaTerm& term);

// Text grammar: `a`, `+a`, `-a`, `#k`, `!`, concatenation `;`,
// repetition `(X)^w`. Parsing canonicalizes through fst.
PgaTree parse_pga_tree(const std::string& text);
PgaTerm parse_pga(const std::string& text);
std::string print_pga_instr(const PgaInstr& instr);
std::string print_pga(const PgaTerm& term);

} // namespace iseq
