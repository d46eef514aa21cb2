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

#include "lexer.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "glidesim/matchlang/parser.hpp"

namespace glidesim::matchlang::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = column_;
            if (pos_ >= text_.size()) {
                t.kind = TokenKind::End;
                out.push_back(std::move(t));
                return out;
            }
            const char c = text_[pos_];
            if (digit(c) || (c == '.' && pos_ + 1 < text_.size() && digit(text_[pos_ + 1]))) {
                number(t);
            } else if (ident_start(c)) {
                t.kind = TokenKind::Identifier;
                while (pos_ < text_.size() && ident_char(text_[pos_])) t.text += advance();
            } else if (c == '"') {
                string(t);
            } else {
                punct(t);
            }
            out.push_back(std::move(t));
        }
    }

private:
    char advance() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    }

    [[noreturn]] void fail(const std::string& msg, int line, int column, std::string token) const {
        throw SyntaxError(msg, line, column, std::move(token));
    }

    void number(Token& t) {
        bool is_real = false;
        while (pos_ < text_.size() && digit(text_[pos_])) t.text += advance();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            is_real = true;
            t.text += advance();
            while (pos_ < text_.size() && digit(text_[pos_])) t.text += advance();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && digit(text_[look])) {
                is_real = true;
                while (pos_ < look) t.text += advance();
                while (pos_ < text_.size() && digit(text_[pos_])) t.text += advance();
            }
        }
        if (pos_ < text_.size() && ident_char(text_[pos_])) {
            fail("malformed number", t.line, t.column, t.text + text_[pos_]);
        }
        if (is_real) {
            t.kind = TokenKind::Real;
            // strtod saturates to +/-inf on overflow, which is what "1e999" relies on.
            t.real = std::strtod(t.text.c_str(), nullptr);
        } else {
            t.kind = TokenKind::Integer;
            auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.integer);
            if (ec != std::errc{}) fail("integer literal out of range", t.line, t.column, t.text);
        }
    }

    void string(Token& t) {
        t.kind = TokenKind::String;
        advance();  // opening quote
        std::string raw = "\"";
        for (;;) {
            if (pos_ >= text_.size()) fail("unterminated string literal", t.line, t.column, raw);
            const char c = advance();
            raw += c;
            if (c == '"') break;
            if (c == '\\') {
                if (pos_ >= text_.size()) fail("unterminated string literal", t.line, t.column, raw);
                const char e = advance();
                raw += e;
                switch (e) {
                    case 'n': t.text += '\n'; break;
                    case 't': t.text += '\t'; break;
                    case '"': t.text += '"'; break;
                    case '\\': t.text += '\\'; break;
                    default: fail("unknown escape sequence", line_, column_ - 2, std::string("\\") + e);
                }
            } else {
                t.text += c;
            }
        }
    }

    void punct(Token& t) {
        static constexpr std::string_view two[] = {"<=", ">=", "==", "!=", "&&", "||"};
        t.kind = TokenKind::Punct;
        const std::string_view rest = text_.substr(pos_);
        for (auto op : two) {
            if (rest.substr(0, 2) == op) {
                t.text = std::string(op);
                advance();
                advance();
                return;
            }
        }
        static constexpr std::string_view one = "+-*/%<>!().,";
        if (one.find(rest[0]) == std::string_view::npos) {
            fail("unexpected character", t.line, t.column, std::string(1, rest[0]));
        }
        t.text = std::string(1, advance());
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace glidesim::matchlang::detail
