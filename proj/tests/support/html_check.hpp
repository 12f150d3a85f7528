// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <vector>

namespace aimp::test {

/// Small HTML5 well-formedness checker: doctype present, tags balanced
/// (void elements excepted), attributes quoted, raw '<'/'&' not leaked into
/// text. Returns a list of problems; empty means well-formed.
inline std::vector<std::string> check_html5(const std::string& html) {
    std::vector<std::string> errors;
    static const std::set<std::string> kVoid = {"area", "base", "br",    "col",  "embed",
                                                "hr",   "img",  "input", "link", "meta",
                                                "source", "track", "wbr"};

    std::size_t i = 0;
    auto fail = [&](const std::string& msg) { errors.push_back(msg + " at offset " +
                                                               std::to_string(i)); };

    if (html.rfind("<!DOCTYPE html>", 0) != 0) {
        errors.push_back("missing <!DOCTYPE html> preamble");
        return errors;
    }
    i = 15;

    std::vector<std::string> stack;
    while (i < html.size()) {
        char c = html[i];
        if (c == '<') {
            if (html.compare(i, 4, "<!--") == 0) {
                auto end = html.find("-->", i);
                if (end == std::string::npos) {
                    fail("unterminated comment");
                    return errors;
                }
                i = end + 3;
                continue;
            }
            bool closing = i + 1 < html.size() && html[i + 1] == '/';
            std::size_t p = i + (closing ? 2 : 1);
            std::string name;
            while (p < html.size() && (std::isalnum(static_cast<unsigned char>(html[p])))) {
                name += static_cast<char>(std::tolower(html[p]));
                ++p;
            }
            if (name.empty()) {
                fail("stray '<'");
                return errors;
            }
            // Scan to '>' respecting quoted attribute values.
            bool self_closing = false;
            while (p < html.size() && html[p] != '>') {
                if (html[p] == '"') {
                    auto end = html.find('"', p + 1);
                    if (end == std::string::npos) {
                        fail("unterminated attribute value in <" + name + ">");
                        return errors;
                    }
                    p = end + 1;
                    continue;
                }
                if (html[p] == '\'') {
                    auto end = html.find('\'', p + 1);
                    if (end == std::string::npos) {
                        fail("unterminated attribute value in <" + name + ">");
                        return errors;
                    }
                    p = end + 1;
                    continue;
                }
                if (html[p] == '=' && p + 1 < html.size() && html[p + 1] != '"' &&
                    html[p + 1] != '\'' && !std::isalnum(static_cast<unsigned char>(html[p + 1]))) {
                    fail("unquoted attribute value in <" + name + ">");
                }
                if (html[p] == '/' && p + 1 < html.size() && html[p + 1] == '>') {
                    self_closing = true;
                }
                if (html[p] == '<') {
                    fail("'<' inside tag <" + name + ">");
                    return errors;
                }
                ++p;
            }
            if (p >= html.size()) {
                fail("unterminated tag <" + name + ">");
                return errors;
            }
            i = p + 1;

            if (closing) {
                if (stack.empty() || stack.back() != name) {
                    fail("mismatched </" + name + "> (open: " +
                         (stack.empty() ? "none" : stack.back()) + ")");
                    return errors;
                }
                stack.pop_back();
            } else if (!self_closing && !kVoid.count(name)) {
                stack.push_back(name);
                // Raw-text elements: skip to the matching close tag.
                if (name == "style" || name == "script") {
                    auto end = html.find("</" + name, i);
                    if (end == std::string::npos) {
                        fail("unterminated <" + name + ">");
                        return errors;
                    }
                    i = end;
                }
            }
            continue;
        }
        if (c == '&') {
            auto semi = html.find(';', i);
            if (semi == std::string::npos || semi - i > 10) {
                fail("raw '&' not part of an entity");
            }
            i = (semi == std::string::npos) ? i + 1 : semi + 1;
            continue;
        }
        if (c == '>') {
            // Literal '>' in text is tolerated by HTML5 parsers.
        }
        ++i;
    }
    if (!stack.empty()) {
        errors.push_back("unclosed element <" + stack.back() + "> at end of document");
    }
    return errors;
}

} // namespace aimp::test
