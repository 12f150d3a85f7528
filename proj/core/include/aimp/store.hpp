// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aimp/hash.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace aimp::cas {

struct CorruptFinding {
    std::string sha256;
    std::string message;
};

/// Content-addressable store rooted at a directory. Objects live at
/// root/objects/sha256/<first 2 hex>/<remaining 62 hex>. Writes go through a
/// temp file plus rename in the object directory, which makes concurrent
/// puts of identical content from multiple workers or processes safe.
class Store {
public:
    /// Opens the store, creating root/objects on first use.
    explicit Store(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }

    std::filesystem::path object_path(std::string_view sha256_hex) const;
    bool contains(std::string_view sha256_hex) const;

    /// Stores a blob; idempotent for identical content.
    ObjectRef put_bytes(std::string_view data);
    ObjectRef put_file(const std::filesystem::path& path);

    /// Stores a file or directory tree. Directories store every contained
    /// file plus the manifest object; the returned ref addresses the
    /// manifest and equals hash_path() on the same tree.
    ObjectRef put_path(const std::filesystem::path& path);

    /// Throws NotFound for unknown digests and CorruptObject when the stored
    /// bytes no longer re-hash to their address.
    std::string get(std::string_view sha256_hex) const;

    /// All stored object digests, sorted.
    std::vector<std::string> list() const;

    /// Re-hashes every object; pure read.
    std::vector<CorruptFinding> verify() const;

private:
    std::filesystem::path root_;
};

struct TransferSummary {
    std::size_t transferred = 0;
    std::size_t skipped = 0;
};

/// Uploads every local object the remote is missing via
/// PUT /objects/<sha256> with a bearer token. Objects already present
/// remotely are skipped. Partial failure leaves transferred objects valid.
TransferSummary push(const Store& store, const std::string& remote_url, const std::string& token);

/// Downloads the given digests via GET /objects/<sha256>; each payload is
/// re-hashed before admission and a mismatch raises DigestMismatch.
TransferSummary pull(Store& store, const std::string& remote_url, const std::string& token,
                     const std::vector<std::string>& digests);

} // namespace aimp::cas
