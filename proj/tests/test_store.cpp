// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aimp/error.hpp"
#include "aimp/store.hpp"
#include "support/testutil.hpp"

#include <atomic>
#include <thread>

using namespace aimp;

TEST_CASE("put/get round-trips bytes") {
    test::TempDir dir;
    cas::Store store(dir / "store");

    auto ref = store.put_bytes("abc");
    CHECK(store.get(ref.sha256.digest) == "abc");
    CHECK(store.contains(ref.sha256.digest));
}

TEST_CASE("put is idempotent") {
    test::TempDir dir;
    cas::Store store(dir / "store");

    auto first = store.put_bytes("same content");
    auto second = store.put_bytes("same content");
    CHECK(first == second);
    CHECK(store.list().size() == 1);
}

TEST_CASE("layout places objects under objects/sha256/<2>/<62>") {
    test::TempDir dir;
    cas::Store store(dir / "store");
    auto ref = store.put_bytes("abc");

    auto expected = dir / "store" / "objects" / "sha256" / ref.sha256.digest.substr(0, 2) /
                    ref.sha256.digest.substr(2);
    CHECK(std::filesystem::is_regular_file(expected));
    CHECK(cas::hash_file(expected).sha256 == ref.sha256);
}

TEST_CASE("get reports unknown digests") {
    test::TempDir dir;
    cas::Store store(dir / "store");
    try {
        store.get("0000000000000000000000000000000000000000000000000000000000000000");
        FAIL("expected NotFound");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotFound);
    }
}

TEST_CASE("a tampered object surfaces as CorruptObject") {
    test::TempDir dir;
    cas::Store store(dir / "store");
    auto ref = store.put_bytes("precious artifact");

    test::flip_byte(store.object_path(ref.sha256.digest));

    try {
        store.get(ref.sha256.digest);
        FAIL("expected CorruptObject");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CorruptObject);
    }

    auto findings = store.verify();
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].sha256 == ref.sha256.digest);
}

TEST_CASE("verify is empty for fresh and empty stores") {
    test::TempDir dir;
    cas::Store store(dir / "store");
    CHECK(store.verify().empty());
    store.put_bytes("a");
    store.put_bytes("b");
    CHECK(store.verify().empty());
}

TEST_CASE("concurrent puts of identical content leave a consistent store") {
    test::TempDir dir;
    cas::Store store(dir / "store");

    std::string payload(64 * 1024, 'x');
    std::atomic<int> failures{0};
    std::vector<std::thread> workers;
    for (int i = 0; i < 8; ++i) {
        workers.emplace_back([&] {
            for (int j = 0; j < 25; ++j) {
                try {
                    store.put_bytes(payload);
                    store.put_bytes(payload + std::to_string(j));
                } catch (...) {
                    ++failures;
                }
            }
        });
    }
    for (auto& t : workers) t.join();

    CHECK(failures == 0);
    CHECK(store.verify().empty());
    CHECK(store.list().size() == 26); // payload + 25 distinct suffixed variants
}

TEST_CASE("put_path stores directory trees with their manifest") {
    test::TempDir dir;
    cas::Store store(dir / "store");
    test::write_file(dir / "data/a.txt", "one");
    test::write_file(dir / "data/b/c.txt", "two");

    auto ref = store.put_path(dir / "data");
    CHECK(ref.is_tree());
    CHECK(ref == cas::hash_path(dir / "data"));
    // manifest + 2 files
    CHECK(store.list().size() == 3);
    CHECK(store.get(ref.sha256.digest).find("a.txt") != std::string::npos);
}
