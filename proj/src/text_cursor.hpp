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

#include <iseq/error.hpp>
#include <iseq/thread.hpp>

#include <cctype>
#include <string>

namespace iseq::detail {

struct TextCursor {
    const std::string& text;
    std::size_t at = 0;

    void skip_ws() {
        while (at < text.size() && std::isspace(static_cast<unsigned char>(text[at]))) ++at;
    }
    bool done() {
        skip_ws();
        return at >= text.size();
    }
    char peek() {
        skip_ws();
        return text[at];
    }
    bool eat(char c) {
        if (done() || text[at] != c) return false;
        ++at;
        return true;
    }
    void expect(char c, const char* what) {
        if (done() || text[at] != c) throw ParseError(std::string("expected ") + what, at);
        ++at;
    }
};

inline Action parse_action(TextCursor& cur) {
    cur.skip_ws();
    Action name;
    while (cur.at < cur.text.size()) {
        const char c = cur.text[cur.at];
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
        if (!ok) break;
        name.push_back(c);
        ++cur.at;
    }
    if (!valid_action(name)) throw ParseError("expected action name", cur.at);
    return name;
}

inline long long parse_nat(TextCursor& cur) {
    cur.skip_ws();
    if (cur.at >= cur.text.size() || !std::isdigit(static_cast<unsigned char>(cur.text[cur.at])))
        throw ParseError("expected number", cur.at);
    long long value = 0;
    while (cur.at < cur.text.size() &&
           std::isdigit(static_cast<unsigned char>(cur.text[cur.at]))) {
        value = value * 10 + (cur.text[cur.at] - '0');
        if (value > 1000000000000LL) throw ParseError("number too large", cur.at);
        ++cur.at;
    }
    return value;
}

} // namespace iseq::detail
