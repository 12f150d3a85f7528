// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/hash.hpp"

#include "aimp/error.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <vector>

namespace aimp::cas {

namespace {

constexpr std::size_t kChunkSize = 64 * 1024;

std::string hex_encode(const unsigned char* data, std::size_t len) {
    static const char* digits = "0123456789abcdef";
    std::string out(len * 2, '\0');
    for (std::size_t i = 0; i < len; ++i) {
        out[2 * i] = digits[data[i] >> 4];
        out[2 * i + 1] = digits[data[i] & 0x0f];
    }
    return out;
}

bool is_lower_hex(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    });
}

} // namespace

Checksum Checksum::md5(std::string hex) {
    Checksum c{Algo::Md5, std::move(hex)};
    c.check_well_formed();
    return c;
}

Checksum Checksum::sha256(std::string hex) {
    Checksum c{Algo::Sha256, std::move(hex)};
    c.check_well_formed();
    return c;
}

void Checksum::check_well_formed() const {
    const std::size_t expected = algorithm == Algo::Md5 ? 32 : 64;
    if (digest.size() != expected || !is_lower_hex(digest)) {
        throw Error(ErrorKind::BadValue,
                    std::string(to_string(algorithm)) + " digest must be " +
                        std::to_string(expected) + " lowercase hex chars, got '" + digest + "'");
    }
}

const char* to_string(Checksum::Algo algo) {
    return algo == Checksum::Algo::Md5 ? "md5" : "sha256";
}

struct Hasher::Impl {
    EVP_MD_CTX* md5_ctx = nullptr;
    EVP_MD_CTX* sha_ctx = nullptr;
    std::uint64_t size = 0;
};

Hasher::Hasher() : impl_(new Impl) {
    impl_->md5_ctx = EVP_MD_CTX_new();
    impl_->sha_ctx = EVP_MD_CTX_new();
    if (!impl_->md5_ctx || !impl_->sha_ctx ||
        EVP_DigestInit_ex(impl_->md5_ctx, EVP_md5(), nullptr) != 1 ||
        EVP_DigestInit_ex(impl_->sha_ctx, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorKind::Internal, "failed to initialize digest contexts");
    }
}

Hasher::~Hasher() {
    EVP_MD_CTX_free(impl_->md5_ctx);
    EVP_MD_CTX_free(impl_->sha_ctx);
    delete impl_;
}

void Hasher::update(std::string_view data) {
    if (EVP_DigestUpdate(impl_->md5_ctx, data.data(), data.size()) != 1 ||
        EVP_DigestUpdate(impl_->sha_ctx, data.data(), data.size()) != 1) {
        throw Error(ErrorKind::Internal, "digest update failed");
    }
    impl_->size += data.size();
}

ObjectRef Hasher::finish() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> buf{};
    unsigned int len = 0;

    ObjectRef ref;
    if (EVP_DigestFinal_ex(impl_->md5_ctx, buf.data(), &len) != 1) {
        throw Error(ErrorKind::Internal, "md5 finalization failed");
    }
    ref.md5 = Checksum{Checksum::Algo::Md5, hex_encode(buf.data(), len)};
    if (EVP_DigestFinal_ex(impl_->sha_ctx, buf.data(), &len) != 1) {
        throw Error(ErrorKind::Internal, "sha256 finalization failed");
    }
    ref.sha256 = Checksum{Checksum::Algo::Sha256, hex_encode(buf.data(), len)};
    ref.size = impl_->size;
    return ref;
}

ObjectRef hash_bytes(std::string_view data) {
    Hasher h;
    h.update(data);
    return h.finish();
}

ObjectRef hash_file(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw Error(ErrorKind::IoError, "not a regular file: " + path.string());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open " + path.string());
    }
    Hasher h;
    std::vector<char> buf(kChunkSize);
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        auto got = in.gcount();
        if (got > 0) {
            h.update(std::string_view(buf.data(), static_cast<std::size_t>(got)));
        }
    }
    if (in.bad()) {
        throw Error(ErrorKind::IoError, "read error on " + path.string());
    }
    return h.finish();
}

std::string tree_manifest(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file()) {
            files.push_back(entry.path());
        }
    }
    std::vector<std::string> rels;
    rels.reserve(files.size());
    for (const auto& f : files) {
        rels.push_back(f.lexically_relative(dir).generic_string());
    }
    std::sort(rels.begin(), rels.end());

    nlohmann::json entries = nlohmann::json::array();
    for (const auto& rel : rels) {
        auto ref = hash_file(dir / rel);
        entries.push_back({{"path", rel}, {"sha256", ref.sha256.digest}, {"size", ref.size}});
    }
    return entries.dump();
}

ObjectRef hash_path(const std::filesystem::path& path) {
    std::error_code ec;
    if (std::filesystem::is_directory(path, ec)) {
        auto manifest = tree_manifest(path);
        auto ref = hash_bytes(manifest);
        ref.media_type = kTreeMediaType;
        return ref;
    }
    return hash_file(path);
}

} // namespace aimp::cas
