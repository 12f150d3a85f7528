// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace aimp::cas {

/// Media type tagged onto directory manifests so tree refs are recognizable.
inline constexpr const char* kTreeMediaType = "application/vnd.aimp.tree+json";

struct Checksum {
    enum class Algo { Md5, Sha256 };

    Algo algorithm = Algo::Sha256;
    std::string digest; // lowercase hex

    static Checksum md5(std::string hex);
    static Checksum sha256(std::string hex);

    /// Throws BadValue when the digest length or alphabet is wrong for the
    /// algorithm (32 hex chars for md5, 64 for sha256).
    void check_well_formed() const;

    auto operator<=>(const Checksum&) const = default;
};

const char* to_string(Checksum::Algo algo);

/// Content address of a stored object: both digests plus size. md5 is kept
/// for interoperability with spdx-style checksum metadata; sha256 is the
/// addressing and identity hash.
struct ObjectRef {
    Checksum md5{Checksum::Algo::Md5, {}};
    Checksum sha256{Checksum::Algo::Sha256, {}};
    std::uint64_t size = 0;
    std::optional<std::string> media_type;

    bool is_tree() const { return media_type && *media_type == kTreeMediaType; }

    auto operator<=>(const ObjectRef&) const = default;
};

/// Incremental md5+sha256 hasher; feeds both digests in one pass.
class Hasher {
public:
    Hasher();
    ~Hasher();
    Hasher(const Hasher&) = delete;
    Hasher& operator=(const Hasher&) = delete;

    void update(std::string_view data);
    /// Finalizes both digests. The hasher must not be reused afterwards.
    ObjectRef finish();

private:
    struct Impl;
    Impl* impl_;
};

ObjectRef hash_bytes(std::string_view data);

/// Streaming file hash; constant memory regardless of file size.
/// Throws IoError when the path is missing or not a regular file.
ObjectRef hash_file(const std::filesystem::path& path);

/// Hashes a directory as a manifest of (relative path, sha256, size) entries
/// sorted by path; the returned ref addresses the manifest bytes and carries
/// kTreeMediaType. Regular files delegate to hash_file.
ObjectRef hash_path(const std::filesystem::path& path);

/// The canonical manifest bytes for a directory tree (used by both hashing
/// and storing so the two agree byte-for-byte).
std::string tree_manifest(const std::filesystem::path& dir);

} // namespace aimp::cas
