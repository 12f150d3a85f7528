// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aimp/error.hpp"
#include "aimp/store.hpp"
#include "support/http_fixtures.hpp"
#include "support/testutil.hpp"

using namespace aimp;

TEST_CASE("push then pull into a fresh store round-trips") {
    test::TempDir dir;
    test::ObjectRemote remote("s3cret");

    cas::Store source(dir / "src");
    auto a = source.put_bytes("artifact A");
    auto b = source.put_bytes("artifact B");

    auto pushed = cas::push(source, remote.url(), "s3cret");
    CHECK(pushed.transferred == 2);
    CHECK(pushed.skipped == 0);
    CHECK(remote.object_count() == 2);

    // A second push skips everything.
    auto again = cas::push(source, remote.url(), "s3cret");
    CHECK(again.transferred == 0);
    CHECK(again.skipped == 2);

    cas::Store dest(dir / "dst");
    auto pulled = cas::pull(dest, remote.url(), "s3cret",
                            {a.sha256.digest, b.sha256.digest});
    CHECK(pulled.transferred == 2);
    CHECK(dest.get(a.sha256.digest) == "artifact A");
    CHECK(dest.get(b.sha256.digest) == "artifact B");
}

TEST_CASE("a wrong token is Unauthorized") {
    test::TempDir dir;
    test::ObjectRemote remote("correct");
    cas::Store store(dir / "src");
    store.put_bytes("x");

    try {
        cas::push(store, remote.url(), "wrong");
        FAIL("expected Unauthorized");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Unauthorized);
    }
}

TEST_CASE("an empty token is rejected before any network use") {
    test::TempDir dir;
    cas::Store store(dir / "src");
    CHECK_THROWS_AS(cas::push(store, "http://127.0.0.1:1", ""), Error);
}

TEST_CASE("tampered remote payloads are not admitted") {
    test::TempDir dir;
    test::ObjectRemote remote("s3cret");
    cas::Store source(dir / "src");
    auto ref = source.put_bytes("pristine bytes");
    cas::push(source, remote.url(), "s3cret");

    remote.tamper = true;
    cas::Store dest(dir / "dst");
    try {
        cas::pull(dest, remote.url(), "s3cret", {ref.sha256.digest});
        FAIL("expected DigestMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DigestMismatch);
    }
    CHECK_FALSE(dest.contains(ref.sha256.digest));
    CHECK(dest.verify().empty());
}

TEST_CASE("partial failure leaves already-transferred objects valid") {
    test::TempDir dir;
    test::ObjectRemote remote("s3cret");
    cas::Store source(dir / "src");
    auto good = source.put_bytes("good");
    cas::push(source, remote.url(), "s3cret");

    cas::Store dest(dir / "dst");
    auto missing = std::string(64, '0');
    try {
        cas::pull(dest, remote.url(), "s3cret", {good.sha256.digest, missing});
        FAIL("expected NotFound");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotFound);
    }
    CHECK(dest.contains(good.sha256.digest));
    CHECK(dest.verify().empty());
}

TEST_CASE("unreachable remotes raise NetworkError") {
    test::TempDir dir;
    cas::Store store(dir / "src");
    store.put_bytes("x");
    try {
        cas::push(store, "http://127.0.0.1:9", "token");
        FAIL("expected NetworkError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NetworkError);
    }
}
