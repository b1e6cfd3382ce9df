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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iseq {

// Raised by the text-format parsers; position is a 0-based byte offset
// into the source text.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& message, std::size_t position = 0)
        : std::runtime_error(message), position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_ = 0;
};

enum class Precondition {
    BadBound,       // numeric bound out of the documented range
    BadK,           // rel-semantics parameter k < 2
    KTooSmall,      // a jump counter exceeds the translation's k
    GotoExceedsK,   // a goto label number exceeds the translation's k
    InfiniteThread, // a finite-thread construction received a looping thread
};

inline const char* precondition_name(Precondition code) {
    switch (code) {
    case Precondition::BadBound: return "BadBound";
    case Precondition::BadK: return "BadK";
    case Precondition::KTooSmall: return "KTooSmall";
    case Precondition::GotoExceedsK: return "GotoExceedsK";
    case Precondition::InfiniteThread: return "InfiniteThread";
    }
    return "Unknown";
}

class PreconditionError : public std::runtime_error {
public:
    PreconditionError(Precondition code, const std::string& message)
        : std::runtime_error(std::string(precondition_name(code)) + ": " + message),
          code_(code) {}

    Precondition code() const { return code_; }

private:
    Precondition code_;
};

} // namespace iseq
