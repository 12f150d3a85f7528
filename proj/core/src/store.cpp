// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/store.hpp"

#include "aimp/error.hpp"

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>

namespace aimp::cas {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open " + path.string());
    }
    std::ostringstream out;
    out << in.rdbuf();
    if (in.bad()) {
        throw Error(ErrorKind::IoError, "read error on " + path.string());
    }
    return std::move(out).str();
}

std::string temp_suffix() {
    static std::atomic<unsigned> counter{0};
    thread_local std::mt19937_64 rng(std::random_device{}());
    std::ostringstream s;
    s << std::hex << rng() << "." << counter.fetch_add(1);
    return s.str();
}

bool valid_sha_hex(std::string_view hex) {
    if (hex.size() != 64) return false;
    for (char c : hex) {
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    }
    return true;
}

} // namespace

Store::Store(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(root_ / "objects", ec);
    if (ec) {
        throw Error(ErrorKind::IoError, "cannot create store at " + root_.string() + ": " + ec.message());
    }
}

fs::path Store::object_path(std::string_view sha256_hex) const {
    if (!valid_sha_hex(sha256_hex)) {
        throw Error(ErrorKind::BadValue, "not a sha256 digest: '" + std::string(sha256_hex) + "'");
    }
    return root_ / "objects" / "sha256" / std::string(sha256_hex.substr(0, 2)) /
           std::string(sha256_hex.substr(2));
}

bool Store::contains(std::string_view sha256_hex) const {
    std::error_code ec;
    return fs::is_regular_file(object_path(sha256_hex), ec);
}

ObjectRef Store::put_bytes(std::string_view data) {
    auto ref = hash_bytes(data);
    auto dest = object_path(ref.sha256.digest);
    std::error_code ec;
    if (fs::is_regular_file(dest, ec)) {
        return ref;
    }
    fs::create_directories(dest.parent_path(), ec);
    if (ec) {
        throw Error(ErrorKind::IoError, "cannot create " + dest.parent_path().string());
    }
    // Write next to the destination so the rename stays within one filesystem.
    auto tmp = dest.parent_path() / (".tmp." + temp_suffix());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorKind::IoError, "cannot write " + tmp.string());
        }
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        if (!out) {
            fs::remove(tmp, ec);
            throw Error(ErrorKind::IoError, "write error on " + tmp.string());
        }
    }
    fs::rename(tmp, dest, ec);
    if (ec) {
        fs::remove(tmp, ec);
        // A concurrent writer may have won the rename; the content is
        // identical by address, so losing is fine.
        if (!fs::is_regular_file(dest)) {
            throw Error(ErrorKind::IoError, "cannot store object " + ref.sha256.digest);
        }
    }
    return ref;
}

ObjectRef Store::put_file(const fs::path& path) {
    return put_bytes(read_file(path));
}

ObjectRef Store::put_path(const fs::path& path) {
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
        for (const auto& entry : fs::recursive_directory_iterator(path)) {
            if (entry.is_regular_file()) {
                put_file(entry.path());
            }
        }
        auto manifest = tree_manifest(path);
        auto ref = put_bytes(manifest);
        ref.media_type = kTreeMediaType;
        return ref;
    }
    return put_file(path);
}

std::string Store::get(std::string_view sha256_hex) const {
    auto path = object_path(sha256_hex);
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) {
        throw Error(ErrorKind::NotFound, "object not in store: " + std::string(sha256_hex));
    }
    auto data = read_file(path);
    auto ref = hash_bytes(data);
    if (ref.sha256.digest != sha256_hex) {
        throw Error(ErrorKind::CorruptObject, "stored object " + std::string(sha256_hex) +
                                                  " re-hashes to " + ref.sha256.digest);
    }
    return data;
}

std::vector<std::string> Store::list() const {
    std::vector<std::string> digests;
    auto base = root_ / "objects" / "sha256";
    std::error_code ec;
    if (!fs::is_directory(base, ec)) {
        return digests;
    }
    for (const auto& entry : fs::recursive_directory_iterator(base)) {
        if (!entry.is_regular_file()) continue;
        auto name = entry.path().filename().string();
        auto prefix = entry.path().parent_path().filename().string();
        if (prefix.size() == 2 && name.size() == 62) {
            digests.push_back(prefix + name);
        }
    }
    std::sort(digests.begin(), digests.end());
    return digests;
}

std::vector<CorruptFinding> Store::verify() const {
    std::vector<CorruptFinding> findings;
    for (const auto& digest : list()) {
        auto ref = hash_file(object_path(digest));
        if (ref.sha256.digest != digest) {
            findings.push_back({digest, "re-hashes to " + ref.sha256.digest});
        }
    }
    return findings;
}

} // namespace aimp::cas
