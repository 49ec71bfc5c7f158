#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "psc/search.hpp"

using psc::Nat;
using namespace psc::search;
namespace fs = std::filesystem;

namespace {

std::vector<Nat> nats(std::initializer_list<unsigned long> xs) {
    std::vector<Nat> out;
    for (auto x : xs) out.emplace_back(x);
    return out;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("psc_search_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

Options opts(unsigned long lo, unsigned long hi, unsigned long m) {
    Options o;
    o.lo = lo;
    o.hi = hi;
    o.m = m;
    return o;
}

}  // namespace

TEST_CASE("search finds M_1 and M_2") {
    CHECK(run(opts(1, 2000, 1)).found == nats({1, 2, 6, 42, 1806}));
    CHECK(run(opts(1, 4000, 2)).found == nats({1, 4, 12, 84, 3612}));
}

TEST_CASE("search result does not depend on jobs or block size") {
    const auto base = run(opts(1, 50000, 19));
    CHECK(base.found == nats({1, 2, 6, 19, 38, 114, 798, 34314}));
    for (unsigned jobs : {2u, 4u})
        for (std::uint64_t bs : {1ull, 7ull, 1024ull, 100000ull}) {
            auto o = opts(1, 50000, 19);
            if (bs == 1) o.hi = 3000;
            o.jobs = jobs;
            o.block_size = bs;
            const auto r = run(o);
            if (bs == 1) CHECK(r.found == nats({1, 2, 6, 19, 38, 114, 798}));
            else CHECK(r.found == base.found);
            CHECK(r.complete());
        }
}

TEST_CASE("M_0 on [1, 100] is the odd numbers") {
    const auto r = run(opts(1, 100, 0));
    REQUIRE(r.found.size() == 50);
    for (std::size_t i = 0; i < 50; ++i) CHECK(r.found[i] == 2 * i + 1);
}

TEST_CASE("interrupted scans resume to the same state") {
    TempDir dir;
    const auto full = run(opts(1, 50000, 19));

    for (std::uint64_t stop : {1ull, 5ull, 33ull}) {
        const fs::path cp = dir.path / ("cp" + std::to_string(stop) + ".json");
        auto o = opts(1, 50000, 19);
        o.checkpoint = cp;
        o.max_blocks = stop;
        o.jobs = 3;
        const auto partial = run(o);
        CHECK_FALSE(partial.complete());
        CHECK(partial.next_unscanned == Nat(1 + 1024 * stop));
        const auto saved = load_checkpoint(cp);
        CHECK(saved.next_unscanned == partial.next_unscanned);
        CHECK(saved.found == partial.found);
        CHECK_FALSE(fs::exists(fs::path(cp.string() + ".tmp")));

        o.max_blocks.reset();
        o.jobs = 1;
        const auto resumed = run(o);
        CHECK(resumed.complete());
        CHECK(resumed.found == full.found);
        CHECK(checkpoint_to_string(load_checkpoint(cp)) == checkpoint_to_string(resumed));
    }
}

TEST_CASE("checkpoint mismatches abort") {
    TempDir dir;
    const fs::path cp = dir.path / "cp.json";
    auto o = opts(1, 5000, 19);
    o.checkpoint = cp;
    o.max_blocks = 1;
    run(o);

    auto other = o;
    other.m = 7;
    CHECK_THROWS_AS(run(other), CheckpointMismatch);
    other = o;
    other.block_size = 512;
    CHECK_THROWS_AS(run(other), CheckpointMismatch);

    std::string text = checkpoint_to_string(load_checkpoint(cp));
    const auto pos = text.find("\"schema_version\": 1");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 19, "\"schema_version\": 9");
    { std::ofstream(cp) << text; }
    CHECK_THROWS_AS(run(o), CheckpointMismatch);
    { std::ofstream(cp) << "{not json"; }
    CHECK_THROWS_AS(run(o), CheckpointMismatch);
}

TEST_CASE("checkpoint round trip") {
    Checkpoint cp;
    cp.modulus_m = 19;
    cp.lo = 1;
    cp.hi = Nat("100000000000000000000");
    cp.next_unscanned = 2049;
    cp.found = nats({1, 2, 6, 19, 38});
    cp.failures.push_back({Nat(77), "example"});
    const auto back = checkpoint_from_string(checkpoint_to_string(cp));
    CHECK(checkpoint_to_string(back) == checkpoint_to_string(cp));

    cp.found.push_back(Nat(5000));
    CHECK_THROWS_AS(checkpoint_from_string(checkpoint_to_string(cp)), CheckpointMismatch);
}

TEST_CASE("factorization failures are recorded, not fatal") {
    // two ~40-bit prime factors with a tiny budget
    const Nat n = Nat("1099511627791") * Nat("1099511628401");
    Options o;
    o.lo = n - 2;
    o.hi = n + 2;
    o.m = 1;
    o.factor_cap = 200;
    const auto r = run(o);
    CHECK(r.complete());
    bool saw = false;
    for (const auto& f : r.failures) saw = saw || f.n == n;
    CHECK(saw);
}

TEST_CASE("invalid ranges") {
    CHECK_THROWS_AS(run(opts(0, 10, 1)), std::invalid_argument);
    CHECK_THROWS_AS(run(opts(10, 9, 1)), std::invalid_argument);
}
