// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/dcat.hpp"

#include "aimp/error.hpp"
#include "internal/http_util.hpp"
#include "internal/time_util.hpp"

#include <httplib.h>

#include <thread>

namespace aimp::dcat {

namespace {

constexpr int kMaxRedirects = 5;

struct FetchResult {
    int status = 0;
    std::string body;
};

FetchResult fetch_once(const std::string& url, int timeout_seconds) {
    auto current = url;
    for (int hop = 0; hop <= kMaxRedirects; ++hop) {
        auto parsed = internal::parse_url(current);
        httplib::Client client(parsed.origin);
        client.set_connection_timeout(timeout_seconds, 0);
        client.set_read_timeout(timeout_seconds, 0);
        client.set_follow_location(false);

        auto res = client.Get(parsed.path, {{"Accept", "text/turtle"}});
        if (!res) {
            throw Error(ErrorKind::NetworkError,
                        "GET " + current + " failed: " + httplib::to_string(res.error()));
        }
        if (res->status >= 300 && res->status < 400) {
            auto location = res->get_header_value("Location");
            if (location.empty()) {
                throw Error(ErrorKind::HttpStatus,
                            "redirect from " + current + " without Location header",
                            {std::to_string(res->status)});
            }
            if (location.find("://") == std::string::npos) {
                location = parsed.origin + (location.front() == '/' ? location : "/" + location);
            }
            current = location;
            continue;
        }
        return {res->status, res->body};
    }
    throw Error(ErrorKind::HttpStatus, "more than " + std::to_string(kMaxRedirects) +
                                           " redirects from " + url,
                {"310"});
}

} // namespace

HarvestResult harvest(const std::string& fdp_url, const HarvestOptions& options) {
    FetchResult fetched;
    int attempts = options.retries + 1;
    for (int attempt = 1;; ++attempt) {
        try {
            fetched = fetch_once(fdp_url, options.timeout_seconds);
            break;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::NetworkError && attempt < attempts) {
                std::this_thread::sleep_for(std::chrono::milliseconds(100));
                continue;
            }
            throw;
        }
    }

    if (fetched.status < 200 || fetched.status >= 300) {
        throw Error(ErrorKind::HttpStatus,
                    "GET " + fdp_url + " returned HTTP " + std::to_string(fetched.status),
                    {std::to_string(fetched.status)});
    }

    auto doc = turtle::parse(fetched.body);
    auto extracted = descriptors_from_triples(doc);

    HarvestResult result;
    result.descriptors = std::move(extracted.descriptors);
    result.warnings = std::move(extracted.warnings);
    result.source_url = fdp_url;
    result.retrieved_at = internal::iso_utc_now();
    return result;
}

} // namespace aimp::dcat
