#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "rancca/manifest.hpp"
#include "rancca/version.hpp"
#include "test_support.hpp"

using namespace rancca;
using test_support::TempDir;

TEST_CASE("sha256 matches the FIPS test vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    // Spans several 64-byte blocks.
    CHECK(sha256_hex(std::string(200, 'a')) == sha256_hex(std::string(200, 'a')));
    CHECK(sha256_hex(std::string(200, 'a')) != sha256_hex(std::string(201, 'a')));
}

TEST_CASE("sha256_file hashes exact bytes") {
    TempDir dir("hash");
    const auto path = dir.path() / "f.bin";
    std::ofstream(path, std::ios::binary) << "abc";
    CHECK(sha256_file(path) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK_THROWS_AS(sha256_file(dir.path() / "missing"), IoError);
}

TEST_CASE("manifest JSON carries the run record") {
    RunManifest manifest;
    manifest.command = "analyze";
    manifest.argv = {"rancca", "analyze", "--ridge", "0"};
    manifest.parameters = {{"ridge", "0"}, {"x_cols", "a,b"}};
    manifest.inputs = {{"x.csv", "00ff"}};
    manifest.outputs = {"out/report.json"};
    manifest.library_version = kVersion;
    manifest.created_utc = "2026-01-01T00:00:00Z";

    const auto doc = nlohmann::json::parse(render_manifest_json(manifest));
    CHECK(doc.at("command") == "analyze");
    CHECK(doc.at("argv").size() == 4);
    CHECK(doc.at("parameters").at("x_cols") == "a,b");
    CHECK(doc.at("inputs").at(0).at("sha256") == "00ff");
    CHECK(doc.at("outputs").at(0) == "out/report.json");
    CHECK(doc.at("library_version") == kVersion);

    TempDir dir("manifest");
    write_manifest(manifest, dir.path() / "manifest.json");
    std::ifstream in(dir.path() / "manifest.json");
    CHECK(in.good());
}

TEST_CASE("utc timestamps are ISO 8601") {
    const auto stamp = utc_timestamp();
    CHECK(stamp.size() == 20);
    CHECK(stamp[4] == '-');
    CHECK(stamp[10] == 'T');
    CHECK(stamp.back() == 'Z');
}
