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

#include <optional>
#include <string>

namespace iseq {

// Rewrites every instruction to three forward-only ones; homomorphic
// and left-uniform: |i, X| ≈ |3(i-1)+1, result| for every i.
CInSeq eliminate_backward(const CInSeq& x);

// /#(m+1);(#)^m;X;(#)^m;\#(m+1) — the result has no exit positions
// while left and right behavior are preserved. Requires m >= 2 and
// m >= every jump counter in X (BadBound otherwise).
CInSeq to_program(const CInSeq& x, long long m);

// eliminate_backward, then to_program with the least legal bound, then
// the instruction-wise mapping into a pure-loop term; backward jumps
// over k become forward jumps over n-k in the loop of length n.
// pga_behavior(result) ≈ c_left(x).
PgaTerm c2pga(const CInSeq& x);

// snd followed by the instruction-wise mapping into C; a loop of
// length m is closed by max(2, m-1) trailing \#m instructions.
// c_left(result) ≈ pga_behavior(t).
CInSeq pga2c(const PgaTerm& t);

// Largest jump counter / goto label number; 0 when none present.
long long max_jump(const CInSeq& x);
long long max_goto_label(const CgInSeq& x);

// Positional translation with label period max(max_jump(x), 2) + 1;
// left and right behavior preserved.
CgInSeq c2cg(const CInSeq& x);

// Each instruction becomes its goto-form body guarded by
// /Gr;\Lr;/Lr;...;\Gr with r = i mod (k+1); jumps become gotos to the
// target position's label number. Requires k >= 2 (BadK) and every
// counter <= k (KTooSmall). Left and right behavior preserved.
CgInSeq c2cg_positional(const CInSeq& x, long long k);

// Homomorphic variant: jumps become gotos with the same number, then
// the relative-jump emulation wraps every instruction in 4k+6; both
// uniform identities hold: |i, x| ≈ |(4k+6)(i-1)+1, result| and
// ≈ |(4k+6)i, result|. Requires k >= 2 (BadK), counters <= k
// (KTooSmall).
CgInSeq c2cg_hom(const CInSeq& x, long long k);

// Labels become jumps over one position, gotos become jumps to their
// search target (orphans jump outside the sequence); uniformly
// behavior preserving with factor 1 at every position.
CInSeq cg2c(const CgInSeq& x);

// The highway homomorphism: each instruction maps to 2k+5
// instructions — its forward-only image, two onward jumps, and k+1
// chained-jump lanes per direction that carry gotos to their label's
// block. Goto numbers must be <= k (GotoExceedsK); labels may exceed
// k. Left-uniform: |i, x| ≈ |(i-1)(2k+5)+1, result| for all i.
CInSeq cg2c_hom(const CgInSeq& x, long long k);

// Accounting for one translation run; factor is set only for routes
// with a uniform per-instruction expansion, and then
// output_len == factor * input_len.
struct RouteReport {
    std::string route;
    long long input_len = 0;
    long long output_len = 0;
    std::optional<long long> factor;
    std::optional<long long> k;
    std::string correspondence;
};

RouteReport make_route_report(const std::string& route, long long input_len,
                              long long output_len, std::optional<long long> k);

} // namespace iseq
