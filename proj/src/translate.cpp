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
#include <iseq/translate.hpp>

#include <iseq/error.hpp>

#include <algorithm>
#include <cassert>

namespace iseq {

namespace {

void require_c(const CInSeq& x) {
    if (x.instrs.empty())
        throw PreconditionError(Precondition::BadBound, "empty instruction sequence");
    for (const CInstr& u : x.instrs)
        if ((u.kind == CInstr::Kind::FwdJump || u.kind == CInstr::Kind::BwdJump) &&
            u.counter < 1)
            throw PreconditionError(Precondition::BadBound, "jump counter must be at least 1");
}

void require_cg(const CgInSeq& x) {
    if (x.instrs.empty())
        throw PreconditionError(Precondition::BadBound, "empty instruction sequence");
    for (const CgInstr& u : x.instrs)
        if (u.label < 0)
            throw PreconditionError(Precondition::BadBound, "label number must be nonnegative");
}

bool cg_backward(const CgInstr& u) {
    switch (u.kind) {
    case CgInstr::Kind::BwdBasic:
    case CgInstr::Kind::BwdPos:
    case CgInstr::Kind::BwdNeg:
    case CgInstr::Kind::BwdLabel:
    case CgInstr::Kind::BwdGoto: return true;
    default: return false;
    }
}

void emit(CInSeq& out, std::vector<CInstr> block) {
    for (CInstr& v : block) out.instrs.push_back(std::move(v));
}

void emit(CgInSeq& out, std::vector<CgInstr> block) {
    for (CgInstr& v : block) out.instrs.push_back(std::move(v));
}

} // namespace

CInSeq eliminate_backward(const CInSeq& x) {
    require_c(x);
    CInSeq out;
    out.instrs.reserve(x.instrs.size() * 3);
    for (const CInstr& u : x.instrs) {
        const Action& a = u.action;
        const long long k = u.counter;
        switch (u.kind) {
        case CInstr::Kind::FwdBasic:
            emit(out, {CInstr::fwd_basic(a), CInstr::fwd_jump(2), CInstr::abort()});
            break;
        case CInstr::Kind::BwdBasic:
            emit(out, {CInstr::fwd_basic(a), CInstr::bwd_jump(4), CInstr::abort()});
            break;
        case CInstr::Kind::FwdPos:
            emit(out, {CInstr::fwd_pos(a), CInstr::fwd_jump(2), CInstr::fwd_jump(4)});
            break;
        case CInstr::Kind::BwdPos:
            emit(out, {CInstr::fwd_pos(a), CInstr::bwd_jump(4), CInstr::bwd_jump(8)});
            break;
        case CInstr::Kind::FwdNeg:
            emit(out, {CInstr::fwd_neg(a), CInstr::fwd_jump(2), CInstr::fwd_jump(4)});
            break;
        case CInstr::Kind::BwdNeg:
            emit(out, {CInstr::fwd_neg(a), CInstr::bwd_jump(4), CInstr::bwd_jump(8)});
            break;
        case CInstr::Kind::FwdJump:
            emit(out, {CInstr::fwd_jump(3 * k), CInstr::abort(), CInstr::abort()});
            break;
        case CInstr::Kind::BwdJump:
            emit(out, {CInstr::bwd_jump(3 * k), CInstr::abort(), CInstr::abort()});
            break;
        case CInstr::Kind::Abort:
            emit(out, {CInstr::abort(), CInstr::abort(), CInstr::abort()});
            break;
        case CInstr::Kind::Halt:
            emit(out, {CInstr::halt(), CInstr::abort(), CInstr::abort()});
            break;
        }
    }
    return out;
}

CInSeq to_program(const CInSeq& x, long long m) {
    require_c(x);
    if (m < 2 || m < max_jump(x))
        throw PreconditionError(Precondition::BadBound,
                                "pad bound must be at least 2 and cover every jump counter");
    CInSeq out;
    out.instrs.reserve(x.instrs.size() + 2 * static_cast<std::size_t>(m) + 2);
    out.instrs.push_back(CInstr::fwd_jump(m + 1));
    for (long long i = 0; i < m; ++i) out.instrs.push_back(CInstr::abort());
    out.instrs.insert(out.instrs.end(), x.instrs.begin(), x.instrs.end());
    for (long long i = 0; i < m; ++i) out.instrs.push_back(CInstr::abort());
    out.instrs.push_back(CInstr::bwd_jump(m + 1));
    return out;
}

PgaTerm c2pga(const CInSeq& x) {
    const CInSeq forward = eliminate_backward(x);
    const CInSeq program = to_program(forward, std::max<long long>(2, max_jump(forward)));
    const long long n = program.len();
    PgaTerm out;
    out.loop.reserve(program.instrs.size());
    for (const CInstr& u : program.instrs) {
        switch (u.kind) {
        case CInstr::Kind::FwdBasic: out.loop.push_back(PgaInstr::basic(u.action)); break;
        case CInstr::Kind::FwdPos: out.loop.push_back(PgaInstr::pos_test(u.action)); break;
        case CInstr::Kind::FwdNeg: out.loop.push_back(PgaInstr::neg_test(u.action)); break;
        case CInstr::Kind::FwdJump: out.loop.push_back(PgaInstr::jump(u.counter)); break;
        case CInstr::Kind::BwdJump: out.loop.push_back(PgaInstr::jump(n - u.counter)); break;
        case CInstr::Kind::Abort: out.loop.push_back(PgaInstr::jump(0)); break;
        case CInstr::Kind::Halt: out.loop.push_back(PgaInstr::halt()); break;
        case CInstr::Kind::BwdBasic:
        case CInstr::Kind::BwdPos:
        case CInstr::Kind::BwdNeg: assert(false); break;
        }
    }
    return out;
}

CInSeq pga2c(const PgaTerm& t) {
    const PgaTerm canon = snd(t);
    auto psi = [](const PgaInstr& u) -> CInstr {
        switch (u.kind) {
        case PgaInstr::Kind::Basic: return CInstr::fwd_basic(u.action);
        case PgaInstr::Kind::PosTest: return CInstr::fwd_pos(u.action);
        case PgaInstr::Kind::NegTest: return CInstr::fwd_neg(u.action);
        case PgaInstr::Kind::Halt: return CInstr::halt();
        case PgaInstr::Kind::Jump:
            return u.counter == 0 ? CInstr::abort() : CInstr::fwd_jump(u.counter);
        }
        return CInstr::abort();
    };
    CInSeq out;
    for (const PgaInstr& u : canon.prefix) out.instrs.push_back(psi(u));
    for (const PgaInstr& u : canon.loop) out.instrs.push_back(psi(u));
    if (!canon.loop.empty()) {
        const long long m = static_cast<long long>(canon.loop.size());
        for (long long i = std::max<long long>(2, m - 1); i > 0; --i)
            out.instrs.push_back(CInstr::bwd_jump(m));
    }
    return out;
}

long long max_jump(const CInSeq& x) {
    long long best = 0;
    for (const CInstr& u : x.instrs)
        if (u.kind == CInstr::Kind::FwdJump || u.kind == CInstr::Kind::BwdJump)
            best = std::max(best, u.counter);
    return best;
}

long long max_goto_label(const CgInSeq& x) {
    long long best = 0;
    for (const CgInstr& u : x.instrs)
        if (u.kind == CgInstr::Kind::FwdGoto || u.kind == CgInstr::Kind::BwdGoto)
            best = std::max(best, u.label);
    return best;
}

CgInSeq c2cg(const CInSeq& x) { return c2cg_positional(x, std::max(max_jump(x), 2LL)); }

CgInSeq c2cg_positional(const CInSeq& x, long long k) {
    require_c(x);
    if (k < 2)
        throw PreconditionError(Precondition::BadK, "label period bound must be at least 2");
    if (max_jump(x) > k)
        throw PreconditionError(Precondition::KTooSmall,
                                "a jump counter exceeds the label period bound");
    const long long period = k + 1;
    auto rem = [&](long long n) { return ((n % period) + period) % period; };
    CgInSeq out;
    for (long long i = 1; i <= x.len(); ++i) {
        const CInstr& u = x.instrs[static_cast<std::size_t>(i - 1)];
        const Action& a = u.action;
        std::vector<CgInstr> body;
        switch (u.kind) {
        case CInstr::Kind::FwdBasic:
            body = {CgInstr::fwd_basic(a), CgInstr::fwd_goto(rem(i + 1))};
            break;
        case CInstr::Kind::FwdPos:
            body = {CgInstr::fwd_pos(a), CgInstr::fwd_goto(rem(i + 1)),
                    CgInstr::fwd_goto(rem(i + 2))};
            break;
        case CInstr::Kind::FwdNeg:
            body = {CgInstr::fwd_neg(a), CgInstr::fwd_goto(rem(i + 1)),
                    CgInstr::fwd_goto(rem(i + 2))};
            break;
        case CInstr::Kind::BwdBasic:
            body = {CgInstr::fwd_basic(a), CgInstr::bwd_goto(rem(i - 1))};
            break;
        case CInstr::Kind::BwdPos:
            body = {CgInstr::fwd_pos(a), CgInstr::bwd_goto(rem(i - 1)),
                    CgInstr::bwd_goto(rem(i - 2))};
            break;
        case CInstr::Kind::BwdNeg:
            body = {CgInstr::fwd_neg(a), CgInstr::bwd_goto(rem(i - 1)),
                    CgInstr::bwd_goto(rem(i - 2))};
            break;
        case CInstr::Kind::FwdJump: body = {CgInstr::fwd_goto(rem(i + u.counter))}; break;
        case CInstr::Kind::BwdJump: body = {CgInstr::bwd_goto(rem(i - u.counter))}; break;
        case CInstr::Kind::Abort: body = {CgInstr::abort()}; break;
        case CInstr::Kind::Halt: body = {CgInstr::halt()}; break;
        }
        const long long r = rem(i);
        emit(out, {CgInstr::fwd_goto(r), CgInstr::bwd_label(r), CgInstr::fwd_label(r)});
        emit(out, std::move(body));
        emit(out, {CgInstr::bwd_goto(r)});
    }
    return out;
}

CgInSeq c2cg_hom(const CInSeq& x, long long k) {
    require_c(x);
    if (k < 2)
        throw PreconditionError(Precondition::BadK, "label period bound must be at least 2");
    if (max_jump(x) > k)
        throw PreconditionError(Precondition::KTooSmall,
                                "a jump counter exceeds the label period bound");
    CgInSeq mapped;
    mapped.instrs.reserve(x.instrs.size());
    for (const CInstr& u : x.instrs) {
        switch (u.kind) {
        case CInstr::Kind::FwdBasic: mapped.instrs.push_back(CgInstr::fwd_basic(u.action)); break;
        case CInstr::Kind::BwdBasic: mapped.instrs.push_back(CgInstr::bwd_basic(u.action)); break;
        case CInstr::Kind::FwdPos: mapped.instrs.push_back(CgInstr::fwd_pos(u.action)); break;
        case CInstr::Kind::BwdPos: mapped.instrs.push_back(CgInstr::bwd_pos(u.action)); break;
        case CInstr::Kind::FwdNeg: mapped.instrs.push_back(CgInstr::fwd_neg(u.action)); break;
        case CInstr::Kind::BwdNeg: mapped.instrs.push_back(CgInstr::bwd_neg(u.action)); break;
        case CInstr::Kind::FwdJump: mapped.instrs.push_back(CgInstr::fwd_goto(u.counter)); break;
        case CInstr::Kind::BwdJump: mapped.instrs.push_back(CgInstr::bwd_goto(u.counter)); break;
        case CInstr::Kind::Abort: mapped.instrs.push_back(CgInstr::abort()); break;
        case CInstr::Kind::Halt: mapped.instrs.push_back(CgInstr::halt()); break;
        }
    }
    return rel_k(mapped, k);
}

CInSeq cg2c(const CgInSeq& x) {
    require_cg(x);
    CInSeq out;
    out.instrs.reserve(x.instrs.size());
    for (long long i = 1; i <= x.len(); ++i) {
        const CgInstr& u = x.instrs[static_cast<std::size_t>(i - 1)];
        switch (u.kind) {
        case CgInstr::Kind::FwdBasic: out.instrs.push_back(CInstr::fwd_basic(u.action)); break;
        case CgInstr::Kind::BwdBasic: out.instrs.push_back(CInstr::bwd_basic(u.action)); break;
        case CgInstr::Kind::FwdPos: out.instrs.push_back(CInstr::fwd_pos(u.action)); break;
        case CgInstr::Kind::BwdPos: out.instrs.push_back(CInstr::bwd_pos(u.action)); break;
        case CgInstr::Kind::FwdNeg: out.instrs.push_back(CInstr::fwd_neg(u.action)); break;
        case CgInstr::Kind::BwdNeg: out.instrs.push_back(CInstr::bwd_neg(u.action)); break;
        case CgInstr::Kind::FwdLabel: out.instrs.push_back(CInstr::fwd_jump(1)); break;
        case CgInstr::Kind::BwdLabel: out.instrs.push_back(CInstr::bwd_jump(1)); break;
        case CgInstr::Kind::FwdGoto: {
            // Orphans get j = len+1, a jump outside the sequence.
            const long long j = fsearch(x, i, {CgInstr::fwd_label(u.label)});
            out.instrs.push_back(CInstr::fwd_jump(j - i));
            break;
        }
        case CgInstr::Kind::BwdGoto: {
            const long long j = bsearch(x, i, {CgInstr::bwd_label(u.label)});
            out.instrs.push_back(CInstr::bwd_jump(i - j));
            break;
        }
        case CgInstr::Kind::Abort: out.instrs.push_back(CInstr::abort()); break;
        case CgInstr::Kind::Halt: out.instrs.push_back(CInstr::halt()); break;
        }
    }
    return out;
}

CInSeq cg2c_hom(const CgInSeq& x, long long k) {
    require_cg(x);
    if (k < 0)
        throw PreconditionError(Precondition::BadK, "lane bound must be nonnegative");
    for (const CgInstr& u : x.instrs)
        if ((u.kind == CgInstr::Kind::FwdGoto || u.kind == CgInstr::Kind::BwdGoto) &&
            u.label > k)
            throw PreconditionError(Precondition::GotoExceedsK,
                                    "a goto label number exceeds the lane bound");

    auto phi = [&](const CgInstr& u) -> CInstr {
        switch (u.kind) {
        case CgInstr::Kind::FwdBasic:
        case CgInstr::Kind::BwdBasic: return CInstr::fwd_basic(u.action);
        case CgInstr::Kind::FwdPos:
        case CgInstr::Kind::BwdPos: return CInstr::fwd_pos(u.action);
        case CgInstr::Kind::FwdNeg:
        case CgInstr::Kind::BwdNeg: return CInstr::fwd_neg(u.action);
        case CgInstr::Kind::FwdLabel:
        case CgInstr::Kind::BwdLabel: return CInstr::fwd_jump(1);
        case CgInstr::Kind::FwdGoto: return CInstr::fwd_jump(k + u.label + 4);
        case CgInstr::Kind::BwdGoto: return CInstr::fwd_jump(u.label + 3);
        case CgInstr::Kind::Abort: return CInstr::abort();
        case CgInstr::Kind::Halt: return CInstr::halt();
        }
        return CInstr::abort();
    };

    CInSeq out;
    out.instrs.reserve(x.instrs.size() * static_cast<std::size_t>(2 * k + 5));
    for (const CgInstr& u : x.instrs) {
        out.instrs.push_back(phi(u));
        if (cg_backward(u)) {
            out.instrs.push_back(CInstr::bwd_jump(2 * k + 6));
            out.instrs.push_back(CInstr::bwd_jump(4 * k + 12));
        } else {
            out.instrs.push_back(CInstr::fwd_jump(2 * k + 4));
            out.instrs.push_back(CInstr::fwd_jump(4 * k + 8));
        }
        for (long long lane = 0; lane <= k; ++lane) {
            if (u.kind == CgInstr::Kind::BwdLabel && u.label == lane)
                out.instrs.push_back(CInstr::bwd_jump(lane + 3));
            else
                out.instrs.push_back(CInstr::bwd_jump(2 * k + 5));
        }
        for (long long lane = 0; lane <= k; ++lane) {
            if (u.kind == CgInstr::Kind::FwdLabel && u.label == lane)
                out.instrs.push_back(CInstr::bwd_jump(k + lane + 4));
            else
                out.instrs.push_back(CInstr::fwd_jump(2 * k + 5));
        }
    }
    return out;
}

RouteReport make_route_report(const std::string& route, long long input_len,
                              long long output_len, std::optional<long long> k) {
    RouteReport report;
    report.route = route;
    report.input_len = input_len;
    report.output_len = output_len;
    report.k = k;
    if (route == "eliminate-backward") {
        report.factor = 3;
        report.correspondence = "position i maps to position 3(i-1)+1";
    } else if (route == "to-program") {
        report.correspondence = "left entry maps to position 1, right entry to the last";
    } else if (route == "c2pga") {
        report.correspondence = "left entry maps to the first loop position";
    } else if (route == "pga2c") {
        report.correspondence = "left entry maps to position 1";
    } else if (route == "c2cg" || route == "c2cg-positional") {
        report.correspondence = "left entry maps to position 1, right entry to the last";
    } else if (route == "c2cg-hom") {
        const long long b = 4 * k.value() + 6;
        report.factor = b;
        report.correspondence = "position i maps to positions " + std::to_string(b) +
                                "(i-1)+1 and " + std::to_string(b) + "i";
    } else if (route == "cg2c") {
        report.factor = 1;
        report.correspondence = "position i maps to position i";
    } else if (route == "cg2c-hom") {
        const long long b = 2 * k.value() + 5;
        report.factor = b;
        report.correspondence = "position i maps to position (i-1)" + std::to_string(b) + "+1";
    }
    return report;
}

} // namespace iseq
