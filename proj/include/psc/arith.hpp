#pragma once

// Exact integer kernel: modular exponentiation, gcd/lcm, primality and
// factorization. Nat is GMP's mpz_class; every value in the library is
// nonnegative and never rounded.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace psc {

using Nat = mpz_class;

/// Thrown when factorization exceeds its iteration budget. The partial
/// result is discarded: a capped factorization never returns wrong factors.
class FactorizationIncomplete : public std::runtime_error {
public:
    FactorizationIncomplete(const Nat& n, std::uint64_t cap);
    const Nat& value() const noexcept { return value_; }
    std::uint64_t cap() const noexcept { return cap_; }

private:
    Nat value_;
    std::uint64_t cap_;
};

struct PrimePower {
    Nat prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with strictly increasing primes; empty for 1.
struct Factorization {
    std::vector<PrimePower> factors;

    Nat value() const;
    bool square_free() const;
    unsigned exponent_of(const Nat& prime) const;
    bool empty() const { return factors.empty(); }
    std::size_t size() const { return factors.size(); }
    auto begin() const { return factors.begin(); }
    auto end() const { return factors.end(); }

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

namespace arith {

/// Default rho iteration budget per factorize() call. Enough for any
/// cofactor with a prime factor below ~2^44.
inline constexpr std::uint64_t kDefaultFactorCap = 1ull << 24;

/// Random Miller-Rabin rounds used above 2^64; 4^-64 = 2^-128.
inline constexpr int kProbabilisticRounds = 64;

Nat parse_nat(std::string_view text);

Nat mod_pow(const Nat& base, const Nat& exp, const Nat& modulus);
Nat gcd(const Nat& a, const Nat& b);
Nat lcm(const Nat& a, const Nat& b);

bool divides(const Nat& d, const Nat& n);

bool is_prime(const Nat& n);
bool is_prime_u64(std::uint64_t n);

Factorization factorize(const Nat& n, std::uint64_t cap = kDefaultFactorCap);

/// Base^exp for small exponents.
Nat pow(const Nat& base, unsigned exp);

}  // namespace arith
}  // namespace psc
