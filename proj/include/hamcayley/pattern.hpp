/*
   Copyright 2026 The hamcayley Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"

namespace hamcayley {

/// Compressed walk over two symbols a and b, e.g. "((a,b^2)^3#, a)^3".
/// Terms are comma separated; "^k" repeats a term (negative k walks it
/// backwards with inverted labels) and "#" deletes the term's last label.
class Pattern {
   public:
    static Pattern parse(std::string_view text) {
        Pattern p;
        p.text_ = std::string(text);
        std::size_t pos = 0;
        p.root_ = parse_seq(text, pos);
        skip_ws(text, pos);
        if (pos != text.size()) fail("trailing input", pos);
        return p;
    }

    const std::string& text() const noexcept { return text_; }

    std::vector<Label> expand(Label a, Label b) const {
        std::vector<Label> out;
        for (const Term& t : root_) append(t, a, b, out);
        return out;
    }

   private:
    struct Op {
        bool drop_last = false;
        int power = 1;
    };
    struct Term {
        char symbol = 0;  // 'a', 'b', or 0 for a parenthesised sequence
        std::vector<Term> children;
        std::vector<Op> ops;
    };

    [[noreturn]] static void fail(const std::string& what, std::size_t pos) {
        throw Error(ErrorCode::MalformedPattern, what + " at offset " + std::to_string(pos));
    }
    static void skip_ws(std::string_view s, std::size_t& pos) {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    static std::vector<Term> parse_seq(std::string_view s, std::size_t& pos) {
        std::vector<Term> terms;
        terms.push_back(parse_term(s, pos));
        skip_ws(s, pos);
        while (pos < s.size() && s[pos] == ',') {
            ++pos;
            terms.push_back(parse_term(s, pos));
            skip_ws(s, pos);
        }
        return terms;
    }

    static Term parse_term(std::string_view s, std::size_t& pos) {
        skip_ws(s, pos);
        if (pos >= s.size()) fail("expected a term", pos);
        Term t;
        if (s[pos] == 'a' || s[pos] == 'b') {
            t.symbol = s[pos++];
        } else if (s[pos] == '(') {
            ++pos;
            t.children = parse_seq(s, pos);
            skip_ws(s, pos);
            if (pos >= s.size() || s[pos] != ')') fail("expected ')'", pos);
            ++pos;
        } else {
            fail(std::string("unexpected '") + s[pos] + "'", pos);
        }
        for (;;) {
            skip_ws(s, pos);
            if (pos < s.size() && s[pos] == '#') {
                ++pos;
                t.ops.push_back(Op{true, 1});
            } else if (pos < s.size() && s[pos] == '^') {
                ++pos;
                skip_ws(s, pos);
                bool neg = false;
                if (pos < s.size() && (s[pos] == '-' || s[pos] == '{')) {
                    // accept ^-2 and ^{-2}
                    const bool brace = s[pos] == '{';
                    if (brace) ++pos;
                    if (pos < s.size() && s[pos] == '-') neg = true, ++pos;
                    Op op{false, read_int(s, pos)};
                    if (brace) {
                        if (pos >= s.size() || s[pos] != '}') fail("expected '}'", pos);
                        ++pos;
                    }
                    if (neg) op.power = -op.power;
                    t.ops.push_back(op);
                } else {
                    t.ops.push_back(Op{false, read_int(s, pos)});
                }
            } else {
                break;
            }
        }
        return t;
    }

    static int read_int(std::string_view s, std::size_t& pos) {
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) fail("expected an exponent", pos);
        int v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos++] - '0');
            if (v > 100000) fail("exponent too large", pos);
        }
        return v;
    }

    static void append(const Term& t, Label a, Label b, std::vector<Label>& out) {
        std::vector<Label> body;
        if (t.symbol)
            body.push_back(t.symbol == 'a' ? a : b);
        else
            for (const Term& c : t.children) append(c, a, b, body);
        for (const Op& op : t.ops) {
            if (op.drop_last) {
                if (body.empty()) throw Error(ErrorCode::MalformedPattern, "'#' applied to an empty term");
                body.pop_back();
                continue;
            }
            std::vector<Label> unit = body;
            if (op.power < 0) {
                std::reverse(unit.begin(), unit.end());
                for (Label& l : unit) l = l.inverse();
            }
            body.clear();
            for (int k = 0; k < std::abs(op.power); ++k) body.insert(body.end(), unit.begin(), unit.end());
        }
        out.insert(out.end(), body.begin(), body.end());
    }

    std::string text_;
    std::vector<Term> root_;
};

inline std::vector<Label> expand_pattern(const Pattern& pat, Label a, Label b) { return pat.expand(a, b); }

inline std::vector<Label> expand_pattern(std::string_view text, Label a, Label b) {
    return Pattern::parse(text).expand(a, b);
}

}  // namespace hamcayley
