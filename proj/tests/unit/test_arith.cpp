#include "doctest.h"

#include <random>

#include "psc/arith.hpp"

using psc::Factorization;
using psc::Nat;
using namespace psc::arith;

namespace {

bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("mod_pow") {
    CHECK(mod_pow(2, 10, 1000) == 24);
    CHECK(mod_pow(7, 0, 13) == 1);
    CHECK(mod_pow(5, 5, 1) == 0);
    CHECK_THROWS_AS(mod_pow(2, 3, 0), std::invalid_argument);
}

TEST_CASE("mod_pow agrees with repeated multiplication") {
    std::mt19937 gen(7);
    std::uniform_int_distribution<unsigned> dist(0, 1000);
    for (int trial = 0; trial < 3000; ++trial) {
        const unsigned a = dist(gen), e = dist(gen), m = dist(gen) + 1;
        unsigned long r = 1 % m;
        for (unsigned i = 0; i < e; ++i) r = r * a % m;
        CHECK(mod_pow(a, e, m) == r);
    }
}

TEST_CASE("gcd and lcm") {
    CHECK(gcd(42, 1806) == 42);
    CHECK(lcm(4, 6) == 12);
    CHECK(gcd(0, 5) == 5);
    CHECK(lcm(1, 97) == 97);
    CHECK_THROWS_AS(lcm(0, 0), std::invalid_argument);
}

TEST_CASE("is_prime on known values") {
    CHECK(is_prime(4903));
    CHECK(is_prime(Nat("5773040306503")));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK(is_prime(2));
    // strong pseudoprimes to several small bases
    CHECK_FALSE(is_prime(Nat("3215031751")));
    CHECK_FALSE(is_prime(Nat("3825123056546413051")));
    CHECK_FALSE(is_prime(Nat("318665857834031151167461")));  // spsp to bases 2..37
    CHECK(is_prime(Nat("18446744073709551557")));            // largest prime < 2^64
    CHECK(is_prime(Nat("170141183460469231731687303715884105727")));  // 2^127 - 1
    CHECK_FALSE(is_prime(Nat("170141183460469231731687303715884105729")));
    CHECK(is_prime(Nat("1729101023519")));
}

TEST_CASE("is_prime agrees with trial division below 10^6") {
    std::size_t count = 0;
    for (std::uint64_t n = 0; n <= 1'000'000; ++n) {
        const bool expect = trial_division_prime(n);
        if (is_prime_u64(n) != expect) {
            FAIL("mismatch at " << n);
        }
        count += expect;
    }
    CHECK(count == 78498);
    for (std::uint64_t n = 0; n < 5000; ++n) CHECK(is_prime(Nat(static_cast<unsigned long>(n))) == trial_division_prime(n));
}

TEST_CASE("factorize examples") {
    CHECK(factorize(1806) == Factorization{{{2, 1}, {3, 1}, {7, 1}, {43, 1}}});
    CHECK(factorize(34314) == Factorization{{{2, 1}, {3, 1}, {7, 1}, {19, 1}, {43, 1}}});
    CHECK(factorize(1).empty());
    CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize reconstructs every n up to 10^5") {
    for (unsigned long n = 1; n <= 100'000; ++n) {
        const auto f = factorize(n);
        REQUIRE(f.value() == n);
        for (std::size_t i = 0; i < f.size(); ++i) {
            REQUIRE(is_prime(f.factors[i].prime));
            REQUIRE(f.factors[i].exponent >= 1);
            if (i) REQUIRE(f.factors[i - 1].prime < f.factors[i].prime);
        }
    }
}

TEST_CASE("factorize large composites") {
    const Nat big("8490421583559688410706771261086");
    const auto f = factorize(big);
    CHECK(f.value() == big);
    CHECK(f.size() == 8);
    CHECK(f.factors.back().prime == Nat("1729101023519"));

    // prime powers and repeated large factors
    const Nat p("1000000007"), q("998244353");
    const Nat n = p * p * p * q * 12;
    const auto g = factorize(n);
    CHECK(g.value() == n);
    CHECK(g.exponent_of(p) == 3);
    CHECK(g.exponent_of(q) == 1);

    // above 2^64 with two ~40-bit factors
    const Nat a("1099511627791"), b("1099511628401");
    REQUIRE(is_prime(a));
    REQUIRE(is_prime(b));
    CHECK(factorize(a * b) == Factorization{{{a, 1}, {b, 1}}});
}

TEST_CASE("factorization cap is an explicit failure") {
    const Nat a("1099511627791"), b("1099511628401");
    CHECK_THROWS_AS(factorize(a * b, 1000), psc::FactorizationIncomplete);
    try {
        factorize(a * b, 1000);
    } catch (const psc::FactorizationIncomplete& e) {
        CHECK(e.value() == a * b);
        CHECK(e.cap() == 1000);
    }
}

TEST_CASE("parse_nat") {
    CHECK(parse_nat("0") == 0);
    CHECK(parse_nat("8490421583559688410706771261086") == Nat("8490421583559688410706771261086"));
    CHECK_THROWS_AS(parse_nat(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_nat("-3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_nat("1e5"), std::invalid_argument);
}
