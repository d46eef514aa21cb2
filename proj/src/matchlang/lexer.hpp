// Copyright 2026 The glidesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace glidesim::matchlang::detail {

enum class TokenKind { Integer, Real, String, Identifier, Punct, End };

struct Token {
    TokenKind kind;
    std::string text;  // source spelling; decoded contents for strings
    std::int64_t integer = 0;
    double real = 0;
    int line = 1;
    int column = 1;
};

/// Throws SyntaxError on unterminated strings, stray characters, or
/// out-of-range integers.
std::vector<Token> tokenize(std::string_view text);

}  // namespace glidesim::matchlang::detail
