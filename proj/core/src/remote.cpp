// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/store.hpp"

#include "aimp/error.hpp"
#include "internal/http_util.hpp"

#include <httplib.h>

#include <memory>

namespace aimp::cas {

namespace {

std::unique_ptr<httplib::Client> make_client(const internal::ParsedUrl& url,
                                             const std::string& token) {
    if (token.empty()) {
        throw Error(ErrorKind::BadValue, "remote token must not be empty");
    }
    auto client = std::make_unique<httplib::Client>(url.origin);
    client->set_bearer_token_auth(token);
    client->set_connection_timeout(30, 0);
    client->set_read_timeout(30, 0);
    client->set_write_timeout(30, 0);
    return client;
}

void check_auth(int status) {
    if (status == 401 || status == 403) {
        throw Error(ErrorKind::Unauthorized, "remote rejected token (HTTP " +
                                                 std::to_string(status) + ")");
    }
}

} // namespace

TransferSummary push(const Store& store, const std::string& remote_url, const std::string& token) {
    auto url = internal::parse_url(remote_url);
    auto client = make_client(url, token);

    TransferSummary summary;
    for (const auto& digest : store.list()) {
        auto object_path = internal::join_path(url.path, "/objects/" + digest);
        auto head = client->Head(object_path);
        if (!head) {
            throw Error(ErrorKind::NetworkError,
                        "HEAD " + remote_url + " failed: " + httplib::to_string(head.error()));
        }
        check_auth(head->status);
        if (head->status == 200) {
            ++summary.skipped;
            continue;
        }
        if (head->status != 404) {
            throw Error(ErrorKind::NetworkError,
                        "unexpected HTTP " + std::to_string(head->status) + " from HEAD");
        }
        auto data = store.get(digest);
        auto res = client->Put(object_path, data, "application/octet-stream");
        if (!res) {
            throw Error(ErrorKind::NetworkError,
                        "PUT " + remote_url + " failed: " + httplib::to_string(res.error()));
        }
        check_auth(res->status);
        if (res->status / 100 != 2) {
            throw Error(ErrorKind::NetworkError,
                        "remote refused object " + digest + " (HTTP " +
                            std::to_string(res->status) + ")");
        }
        ++summary.transferred;
    }
    return summary;
}

TransferSummary pull(Store& store, const std::string& remote_url, const std::string& token,
                     const std::vector<std::string>& digests) {
    auto url = internal::parse_url(remote_url);
    auto client = make_client(url, token);

    TransferSummary summary;
    for (const auto& digest : digests) {
        if (store.contains(digest)) {
            ++summary.skipped;
            continue;
        }
        auto res = client->Get(internal::join_path(url.path, "/objects/" + digest));
        if (!res) {
            throw Error(ErrorKind::NetworkError,
                        "GET " + remote_url + " failed: " + httplib::to_string(res.error()));
        }
        check_auth(res->status);
        if (res->status == 404) {
            throw Error(ErrorKind::NotFound, "remote has no object " + digest);
        }
        if (res->status / 100 != 2) {
            throw Error(ErrorKind::NetworkError,
                        "unexpected HTTP " + std::to_string(res->status) + " from GET");
        }
        auto ref = hash_bytes(res->body);
        if (ref.sha256.digest != digest) {
            throw Error(ErrorKind::DigestMismatch, "remote object " + digest +
                                                       " hashes to " + ref.sha256.digest +
                                                       "; not admitted");
        }
        store.put_bytes(res->body);
        ++summary.transferred;
    }
    return summary;
}

} // namespace aimp::cas
