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

#include <algorithm>
#include <cctype>

#include "glidesim/matchlang/ad.hpp"
#include "glidesim/matchlang/parser.hpp"

namespace glidesim::matchlang {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad_line(int line, const std::string& why) {
    throw InvalidAd("ad text line " + std::to_string(line) + ": " + why);
}

}  // namespace

std::string write_ad(const Ad& ad) {
    std::string out = "[";
    out += kind_name(ad.kind());
    out += "]\n";
    for (const auto& [name, expr] : ad.attributes()) {
        out += name;
        out += " = ";
        out += unparse(expr);
        out += '\n';
    }
    return out;
}

std::string write_ads(const std::vector<Ad>& ads) {
    std::string out;
    for (std::size_t i = 0; i < ads.size(); ++i) {
        if (i) out += '\n';
        out += write_ad(ads[i]);
    }
    return out;
}

std::vector<Ad> read_ads(std::string_view text) {
    std::vector<Ad> ads;
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']') bad_line(line_no, "unterminated kind header");
            auto kind = parse_kind(trim(line.substr(1, line.size() - 2)));
            if (!kind) bad_line(line_no, "unknown ad kind '" + std::string(line) + "'");
            if (!ads.empty()) {
                if (auto why = check_required_attributes(ads.back())) bad_line(line_no, *why);
            }
            ads.emplace_back(*kind);
            continue;
        }
        if (ads.empty()) bad_line(line_no, "attribute before any [kind] header");
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) bad_line(line_no, "expected 'name = expression'");
        const std::string_view name = trim(line.substr(0, eq));
        if (!valid_attribute_name(name)) bad_line(line_no, "invalid attribute name '" + std::string(name) + "'");
        if (ads.back().attributes().end() !=
            std::find_if(ads.back().attributes().begin(), ads.back().attributes().end(),
                         [&](const Ad::Attribute& a) { return a.first == fold_case(name); })) {
            bad_line(line_no, "duplicate attribute '" + std::string(name) + "'");
        }
        try {
            ads.back().set(name, parse(line.substr(eq + 1)));
        } catch (const SyntaxError& e) {
            bad_line(line_no, e.what());
        }
    }
    if (!ads.empty()) {
        if (auto why = check_required_attributes(ads.back())) bad_line(line_no, *why);
    }
    return ads;
}

}  // namespace glidesim::matchlang
