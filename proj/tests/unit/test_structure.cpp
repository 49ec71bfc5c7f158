#include "doctest.h"

#include <vector>

#include "psc/powersum.hpp"
#include "psc/structure.hpp"

using psc::Nat;
using namespace psc::structure;

namespace {

std::vector<Nat> nats(std::initializer_list<unsigned long> xs) {
    std::vector<Nat> out;
    for (auto x : xs) out.emplace_back(x);
    return out;
}

const unsigned kPrimesTo50[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

}  // namespace

TEST_CASE("M_1 constant") {
    for (const auto& e : m1_set()) CHECK(psc::powersum::is_member(e, 1));
}

TEST_CASE("theorem1_check examples") {
    CHECK(theorem1_check(34314, 19));
    CHECK_FALSE(theorem1_check(42, 19));
    CHECK_FALSE(theorem1_check(8, 2));
    CHECK_THROWS_AS(theorem1_check(10, 4), std::invalid_argument);
}

TEST_CASE("theorem1_check matches membership for prime m") {
    for (unsigned p : kPrimesTo50)
        for (unsigned n = 1; n <= 3000; ++n)
            REQUIRE_MESSAGE(theorem1_check(n, p) == psc::powersum::is_member(n, p), "n=" << n << " p=" << p);
}

TEST_CASE("theoremG_check examples") {
    CHECK(theoremG_check(1806, 1));
    CHECK(theoremG_check(12, 2));
    // S_10(10) = 5 (mod 10)
    CHECK_FALSE(theoremG_check(10, 4));
    CHECK_FALSE(psc::powersum::is_member(10, 4));
    // composite m whose unit part is not 1 mod p: 36 in M_6, 18 not in M_15
    CHECK(theoremG_check(36, 6));
    CHECK_FALSE(theoremG_check(18, 15));
    CHECK_THROWS_AS(theoremG_check(5, 0), std::invalid_argument);
}

TEST_CASE("theoremG_check matches the oracle for m up to 30") {
    for (unsigned n = 1; n <= 2000; ++n) {
        const Nat s = psc::powersum::naive_power_sum_mod(n, n, n);
        for (unsigned m = 1; m <= 30; ++m)
            REQUIRE_MESSAGE(theoremG_check(n, m) == (s == m % n), "n=" << n << " m=" << m);
    }
}

TEST_CASE("theorem1_check is theoremG_check at prime m") {
    for (unsigned p : kPrimesTo50)
        for (unsigned n = 1; n <= 2000; ++n) REQUIRE(theorem1_check(n, p) == theoremG_check(n, p));
}

TEST_CASE("mp0") {
    CHECK(mp0(19) == nats({1, 2, 6}));
    CHECK(mp0(43) == nats({1, 2, 6, 42}));
    CHECK(mp0(2) == nats({1}));
    for (unsigned p : kPrimesTo50)
        for (const auto& e : mp0(p)) {
            CHECK(std::find(m1_set().begin(), m1_set().end(), e) != m1_set().end());
            CHECK(psc::powersum::is_member(e, p));
        }
}

TEST_CASE("mp2_candidates") {
    CHECK(mp2_candidates(2) == nats({4, 12, 84, 3612}));
    CHECK(mp2_candidates(19).empty());
    CHECK(mp2_candidates(7) == nats({294, 12642}));
    CHECK(mp2_candidates(3) == nats({18, 126, 5418}));
    CHECK(mp2_candidates(43) == nats({77658}));
    // 12 = 4 * 3 with 3 outside M_1: the p^2 * M_1 pool would miss it
    CHECK(std::find(m1_set().begin(), m1_set().end(), Nat(3)) == m1_set().end());
}

TEST_CASE("classify by p-adic valuation") {
    CHECK(classify(6, 19) == Part::Zero);
    CHECK(classify(38, 19) == Part::One);
    CHECK(classify(294, 7) == Part::Two);
}

TEST_CASE("assemble_mp with hand-made N_p lists") {
    // N_7 with Q_7 = {2, 3}: square-free products not divisible by 6
    const auto m7 = assemble_mp(7, nats({1, 2, 3}), Completeness::proven());
    CHECK(m7.values() == nats({1, 2, 6, 7, 14, 294, 12642}));
    for (const auto& e : m7.elements) {
        CHECK(psc::powersum::is_member(e.value, 7));
        CHECK(e.part == classify(e.value, 7));
    }
    // a bogus entry in N_p is filtered out by theorem1_check
    const auto m19 = assemble_mp(19, nats({1, 2, 5, 6, 42, 1806}), Completeness::proven());
    CHECK(m19.values() == nats({1, 2, 6, 19, 38, 114, 798, 34314}));
}

TEST_CASE("make_report enforces bound and membership") {
    const auto r = make_report(19, nats({38, 1, 5, 34314, 2, 38}), Completeness::up_to(1000));
    CHECK(r.values() == nats({1, 2, 38}));
    CHECK(r.completeness.kind == Completeness::Kind::UpToBound);
}
