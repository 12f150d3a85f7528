// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aimp/error.hpp"

#include <string>

namespace aimp::internal {

struct ParsedUrl {
    std::string origin; // scheme://host[:port], what httplib::Client takes
    std::string path;   // leading '/', possibly just "/"
};

inline ParsedUrl parse_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw Error(ErrorKind::BadValue, "not an http(s) URL: '" + url + "'");
    }
    auto scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") {
        throw Error(ErrorKind::BadValue, "unsupported URL scheme '" + scheme + "'");
    }
    auto path_start = url.find('/', scheme_end + 3);
    ParsedUrl out;
    if (path_start == std::string::npos) {
        out.origin = url;
        out.path = "/";
    } else {
        out.origin = url.substr(0, path_start);
        out.path = url.substr(path_start);
    }
    return out;
}

/// Joins a base path and a sub path with exactly one '/' between them.
inline std::string join_path(const std::string& base, const std::string& sub) {
    if (base.empty() || base == "/") return sub;
    if (base.back() == '/') return base.substr(0, base.size() - 1) + sub;
    return base + sub;
}

} // namespace aimp::internal
