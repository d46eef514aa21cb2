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

#include <stdexcept>
#include <string>
#include <string_view>

#include "glidesim/matchlang/expr.hpp"

namespace glidesim::matchlang {

/// Raised for malformed expression text. Line and column are 1-based; for
/// errors at end of input the column points one past the last character.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::string message, int line, int column, std::string token);

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& token() const { return token_; }
    const std::string& detail() const { return detail_; }

private:
    int line_;
    int column_;
    std::string token_;
    std::string detail_;
};

/// Parses the expression grammar documented in docs/grammar.md.
Expr parse(std::string_view text);

}  // namespace glidesim::matchlang
