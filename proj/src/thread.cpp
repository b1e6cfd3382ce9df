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
#include <iseq/thread.hpp>

#include <iseq/error.hpp>

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>

namespace iseq {

bool valid_action(const std::string& name) {
    if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
    for (char c : name) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return true;
}

namespace {

void check_spec(const ThreadSpec& spec) {
    const int n = static_cast<int>(spec.states.size());
    if (n == 0 || spec.entry < 0 || spec.entry >= n)
        throw PreconditionError(Precondition::BadBound, "malformed thread spec");
    for (const StateDef& s : spec.states) {
        if (s.kind != StateKind::Test) continue;
        if (s.yes < 0 || s.yes >= n || s.no < 0 || s.no >= n)
            throw PreconditionError(Precondition::BadBound, "state index out of range");
    }
}

} // namespace

ThreadSpec trim(const ThreadSpec& spec) {
    check_spec(spec);
    const int n = static_cast<int>(spec.states.size());
    std::vector<int> remap(n, -1);
    std::vector<int> order;
    order.push_back(spec.entry);
    remap[spec.entry] = 0;
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
        const StateDef& s = spec.states[order[qi]];
        if (s.kind != StateKind::Test) continue;
        for (int next : {s.yes, s.no}) {
            if (remap[next] >= 0) continue;
            remap[next] = static_cast<int>(order.size());
            order.push_back(next);
        }
    }
    ThreadSpec out;
    out.states.reserve(order.size());
    for (int idx : order) {
        StateDef s = spec.states[idx];
        if (s.kind == StateKind::Test) {
            s.yes = remap[s.yes];
            s.no = remap[s.no];
        }
        out.states.push_back(std::move(s));
    }
    out.entry = 0;
    return out;
}

ThreadSpec halt_thread() { return {{StateDef::halt()}, 0}; }

ThreadSpec dead_thread() { return {{StateDef::dead()}, 0}; }

ThreadSpec postconditional(const Action& a, const ThreadSpec& yes, const ThreadSpec& no) {
    check_spec(yes);
    check_spec(no);
    const int ny = static_cast<int>(yes.states.size());
    ThreadSpec out;
    out.states.push_back(StateDef::test(a, 1 + yes.entry, 1 + ny + no.entry));
    for (StateDef s : yes.states) {
        if (s.kind == StateKind::Test) {
            s.yes += 1;
            s.no += 1;
        }
        out.states.push_back(std::move(s));
    }
    for (StateDef s : no.states) {
        if (s.kind == StateKind::Test) {
            s.yes += 1 + ny;
            s.no += 1 + ny;
        }
        out.states.push_back(std::move(s));
    }
    out.entry = 0;
    return trim(out);
}

ThreadSpec action_prefix(const Action& a, const ThreadSpec& next) {
    return postconditional(a, next, next);
}

ThreadSpec action_power(const Action& a, long long n, const ThreadSpec& tail) {
    if (n < 1) throw PreconditionError(Precondition::BadBound, "action_power requires n >= 1");
    ThreadSpec out = tail;
    for (long long i = 0; i < n; ++i) out = action_prefix(a, out);
    return out;
}

ThreadSpec approximate(const ThreadSpec& spec, long long n) {
    check_spec(spec);
    if (n < 0) throw PreconditionError(Precondition::BadBound, "depth must be a natural number");
    std::vector<StateDef> out;
    out.push_back(StateDef::dead());
    int halt_at = -1;
    std::map<std::pair<int, long long>, int> index;
    std::deque<std::pair<int, long long>> work;
    auto resolve = [&](int state, long long depth) -> int {
        if (depth == 0) return 0;
        const StateDef& s = spec.states[state];
        if (s.kind == StateKind::Dead) return 0;
        if (s.kind == StateKind::Halt) {
            if (halt_at < 0) {
                halt_at = static_cast<int>(out.size());
                out.push_back(StateDef::halt());
            }
            return halt_at;
        }
        auto [it, inserted] = index.try_emplace({state, depth}, static_cast<int>(out.size()));
        if (inserted) {
            out.push_back(StateDef::dead());
            work.push_back({state, depth});
        }
        return it->second;
    };
    const int entry = resolve(spec.entry, n);
    while (!work.empty()) {
        auto [state, depth] = work.front();
        work.pop_front();
        const StateDef& s = spec.states[state];
        const int at = index.at({state, depth});
        out[at] = StateDef::test(s.action, resolve(s.yes, depth - 1), resolve(s.no, depth - 1));
    }
    return trim({std::move(out), entry});
}

std::vector<int> bisim_classes(const ThreadSpec& spec) {
    check_spec(spec);
    const auto& st = spec.states;
    const int n = static_cast<int>(st.size());
    std::vector<int> cls(n, 0);
    int count = 0;
    {
        std::map<std::pair<int, Action>, int> ids;
        for (int i = 0; i < n; ++i) {
            std::pair<int, Action> key{static_cast<int>(st[i].kind),
                                       st[i].kind == StateKind::Test ? st[i].action : Action{}};
            auto [it, inserted] = ids.try_emplace(key, count);
            if (inserted) ++count;
            cls[i] = it->second;
        }
    }
    for (;;) {
        std::map<std::tuple<int, int, int>, int> ids;
        std::vector<int> next(n);
        int next_count = 0;
        for (int i = 0; i < n; ++i) {
            std::tuple<int, int, int> key{cls[i],
                                          st[i].kind == StateKind::Test ? cls[st[i].yes] : -1,
                                          st[i].kind == StateKind::Test ? cls[st[i].no] : -1};
            auto [it, inserted] = ids.try_emplace(key, next_count);
            if (inserted) ++next_count;
            next[i] = it->second;
        }
        const bool stable = next_count == count;
        cls = std::move(next);
        count = next_count;
        if (stable) break;
    }
    return cls;
}

bool bisimilar(const ThreadSpec& a, const ThreadSpec& b) {
    check_spec(a);
    check_spec(b);
    ThreadSpec both;
    both.states = a.states;
    const int shift = static_cast<int>(a.states.size());
    for (StateDef s : b.states) {
        if (s.kind == StateKind::Test) {
            s.yes += shift;
            s.no += shift;
        }
        both.states.push_back(std::move(s));
    }
    both.entry = a.entry;
    auto cls = bisim_classes(both);
    return cls[a.entry] == cls[shift + b.entry];
}

ThreadSpec minimize(const ThreadSpec& spec0) {
    ThreadSpec spec = trim(spec0);
    const auto cls = bisim_classes(spec);
    int count = 0;
    for (int c : cls) count = std::max(count, c + 1);
    std::vector<int> rep(count, -1);
    for (int i = 0; i < static_cast<int>(cls.size()); ++i)
        if (rep[cls[i]] < 0) rep[cls[i]] = i;
    std::vector<int> pos(count, -1);
    std::vector<int> order;
    order.push_back(cls[spec.entry]);
    pos[cls[spec.entry]] = 0;
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
        const StateDef& s = spec.states[rep[order[qi]]];
        if (s.kind != StateKind::Test) continue;
        for (int next : {cls[s.yes], cls[s.no]}) {
            if (pos[next] >= 0) continue;
            pos[next] = static_cast<int>(order.size());
            order.push_back(next);
        }
    }
    ThreadSpec out;
    out.states.reserve(order.size());
    for (int c : order) {
        const StateDef& s = spec.states[rep[c]];
        if (s.kind == StateKind::Test)
            out.states.push_back(StateDef::test(s.action, pos[cls[s.yes]], pos[cls[s.no]]));
        else
            out.states.push_back(s);
    }
    out.entry = 0;
    return out;
}

std::set<int> residuals(const ThreadSpec& spec) {
    check_spec(spec);
    std::set<int> seen{spec.entry};
    std::deque<int> work{spec.entry};
    while (!work.empty()) {
        const StateDef& s = spec.states[work.front()];
        work.pop_front();
        if (s.kind != StateKind::Test) continue;
        for (int next : {s.yes, s.no})
            if (seen.insert(next).second) work.push_back(next);
    }
    return seen;
}

namespace {

// Multiset of states at exactly `n` yes/no steps from the entry, as
// state -> path count. Halt/Dead end their paths.
std::map<int, unsigned long long> residual_level(const ThreadSpec& spec, long long n) {
    std::map<int, unsigned long long> level{{spec.entry, 1}};
    for (long long d = 0; d < n && !level.empty(); ++d) {
        std::map<int, unsigned long long> next;
        for (const auto& [state, count] : level) {
            const StateDef& s = spec.states[state];
            if (s.kind != StateKind::Test) continue;
            next[s.yes] += count;
            next[s.no] += count;
        }
        level = std::move(next);
    }
    return level;
}

} // namespace

std::vector<ThreadSpec> n_residuals(const ThreadSpec& spec, long long n) {
    check_spec(spec);
    if (n < 0 || n > 62)
        throw PreconditionError(Precondition::BadBound, "residual depth must be in [0, 62]");
    const auto level = residual_level(spec, n);
    unsigned long long total = 0;
    for (const auto& [state, count] : level) total += count;
    if (total > (1ull << 20))
        throw PreconditionError(Precondition::BadBound, "residual multiset too large to list");
    std::vector<ThreadSpec> out;
    out.reserve(static_cast<std::size_t>(total));
    for (const auto& [state, count] : level) {
        ThreadSpec at = trim({spec.states, state});
        for (unsigned long long i = 0; i < count; ++i) out.push_back(at);
    }
    return out;
}

bool has_a_plus_n_property(const ThreadSpec& spec, const Action& a, long long n) {
    check_spec(spec);
    if (n < 0 || n > 62)
        throw PreconditionError(Precondition::BadBound, "property depth must be in [0, 62]");
    if (n == 0) return true;
    if (!bisimilar(approximate(spec, n), action_power(a, n, dead_thread()))) return false;

    const auto cls = bisim_classes(spec);
    std::vector<std::map<int, unsigned long long>> levels;
    levels.push_back({{spec.entry, 1}});
    for (long long d = 0; d < n; ++d) {
        std::map<int, unsigned long long> next;
        for (const auto& [state, count] : levels.back()) {
            const StateDef& s = spec.states[state];
            if (s.kind != StateKind::Test) continue;
            next[s.yes] += count;
            next[s.no] += count;
        }
        levels.push_back(std::move(next));
    }

    unsigned long long total = 0;
    std::set<int> deep;
    for (const auto& [state, count] : levels.back()) {
        total += count;
        if (count != 1) return false;
        if (!deep.insert(cls[state]).second) return false;
    }
    if (total != (1ull << n)) return false;
    for (long long m = 0; m < n; ++m)
        for (const auto& [state, count] : levels[m])
            if (deep.count(cls[state])) return false;
    return true;
}

std::optional<std::vector<bool>> distinguishing_replies(const ThreadSpec& a, const ThreadSpec& b) {
    check_spec(a);
    check_spec(b);
    struct Node {
        int sa, sb;
        int parent;
        bool reply;
    };
    std::vector<Node> nodes{{a.entry, b.entry, -1, false}};
    std::set<std::pair<int, int>> seen{{a.entry, b.entry}};
    for (std::size_t qi = 0; qi < nodes.size(); ++qi) {
        const Node node = nodes[qi];
        const StateDef& sa = a.states[node.sa];
        const StateDef& sb = b.states[node.sb];
        const bool differ = sa.kind != sb.kind ||
                            (sa.kind == StateKind::Test && sa.action != sb.action);
        if (differ) {
            std::vector<bool> replies;
            for (int at = static_cast<int>(qi); nodes[at].parent >= 0; at = nodes[at].parent)
                replies.push_back(nodes[at].reply);
            std::reverse(replies.begin(), replies.end());
            return replies;
        }
        if (sa.kind != StateKind::Test) continue;
        for (bool reply : {true, false}) {
            std::pair<int, int> next{reply ? sa.yes : sa.no, reply ? sb.yes : sb.no};
            if (seen.insert(next).second)
                nodes.push_back({next.first, next.second, static_cast<int>(qi), reply});
        }
    }
    return std::nullopt;
}

namespace {

struct SpecCursor {
    const std::string& text;
    std::size_t at = 0;

    void skip_ws() {
        while (at < text.size() && (text[at] == ' ' || text[at] == '\t' || text[at] == '\r'))
            ++at;
    }
    bool done() const { return at >= text.size(); }
    char peek() const { return text[at]; }
};

long long parse_state_id(SpecCursor& cur) {
    cur.skip_ws();
    if (cur.done() || cur.peek() != 'P')
        throw ParseError("expected state name 'P<number>'", cur.at);
    ++cur.at;
    if (cur.done() || !std::isdigit(static_cast<unsigned char>(cur.peek())))
        throw ParseError("expected digits after 'P'", cur.at);
    long long id = 0;
    while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
        id = id * 10 + (cur.peek() - '0');
        if (id > 1000000) throw ParseError("state number too large", cur.at);
        ++cur.at;
    }
    return id;
}

} // namespace

ThreadSpec parse_thread_spec(const std::string& text) {
    struct RawDef {
        StateKind kind;
        Action action;
        long long yes = -1, no = -1;
    };
    std::map<long long, RawDef> defs;
    std::vector<long long> def_order;

    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find_first_of(";\n", start);
        if (end == std::string::npos) end = text.size();
        std::string stmt = text.substr(start, end - start);
        std::size_t base = start;
        start = end + 1;

        bool blank = true;
        for (char c : stmt)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) {
            if (end == text.size()) break;
            continue;
        }

        SpecCursor cur{stmt, 0};
        const long long id = parse_state_id(cur);
        cur.skip_ws();
        if (cur.done() || cur.peek() != '=')
            throw ParseError("expected '=' in state definition", base + cur.at);
        ++cur.at;
        cur.skip_ws();
        if (cur.done()) throw ParseError("missing state body", base + cur.at);

        RawDef def{StateKind::Dead, {}, -1, -1};
        if (cur.peek() == 'S' || cur.peek() == 'D') {
            def.kind = cur.peek() == 'S' ? StateKind::Halt : StateKind::Dead;
            ++cur.at;
        } else {
            std::string action;
            while (!cur.done()) {
                char c = cur.peek();
                bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
                if (!ok) break;
                action.push_back(c);
                ++cur.at;
            }
            if (!valid_action(action))
                throw ParseError("expected action name", base + cur.at);
            cur.skip_ws();
            if (cur.done() || (cur.peek() != '.' && cur.peek() != '?'))
                throw ParseError("expected '.' or '?' after action", base + cur.at);
            def.kind = StateKind::Test;
            def.action = action;
            if (cur.peek() == '.') {
                ++cur.at;
                def.yes = def.no = parse_state_id(cur);
            } else {
                ++cur.at;
                def.yes = parse_state_id(cur);
                cur.skip_ws();
                if (cur.done() || cur.peek() != ':')
                    throw ParseError("expected ':' in test", base + cur.at);
                ++cur.at;
                def.no = parse_state_id(cur);
            }
        }
        cur.skip_ws();
        if (!cur.done()) throw ParseError("trailing input after state definition", base + cur.at);
        if (defs.count(id)) throw ParseError("state defined twice", base);
        defs.emplace(id, std::move(def));
        def_order.push_back(id);
        if (end == text.size()) break;
    }

    if (defs.empty()) throw ParseError("no state definitions", 0);
    if (!defs.count(0)) throw ParseError("entry state P0 is missing", 0);

    std::map<long long, int> slot;
    for (std::size_t i = 0; i < def_order.size(); ++i)
        slot[def_order[i]] = static_cast<int>(i);
    ThreadSpec out;
    for (long long id : def_order) {
        const RawDef& def = defs.at(id);
        if (def.kind != StateKind::Test) {
            out.states.push_back(def.kind == StateKind::Halt ? StateDef::halt()
                                                             : StateDef::dead());
            continue;
        }
        auto yes = slot.find(def.yes);
        auto no = slot.find(def.no);
        if (yes == slot.end() || no == slot.end())
            throw ParseError("reference to undefined state", 0);
        out.states.push_back(StateDef::test(def.action, yes->second, no->second));
    }
    out.entry = slot.at(0);
    return trim(out);
}

std::string print_thread_spec(const ThreadSpec& spec) {
    const ThreadSpec t = trim(spec);
    std::ostringstream out;
    for (std::size_t i = 0; i < t.states.size(); ++i) {
        if (i) out << " ; ";
        const StateDef& s = t.states[i];
        out << "P" << i << " = ";
        switch (s.kind) {
        case StateKind::Halt: out << "S"; break;
        case StateKind::Dead: out << "D"; break;
        case StateKind::Test:
            if (s.yes == s.no)
                out << s.action << " . P" << s.yes;
            else
                out << s.action << " ? P" << s.yes << " : P" << s.no;
            break;
        }
    }
    return out.str();
}

} // namespace iseq
