#pragma once

// Power sums S_k(n) = 1^k + ... + n^k reduced modulo prime powers.
//
// S_n(n) mod n is never summed directly outside the oracle: it is split over
// the prime powers q^t || n, where S_k(n) = (n / q^t) S_k(q^t) (mod q^t) and
// S_k(q^t) has a closed form depending only on whether (q-1) | k (odd q) or
// on the parity of k (q = 2).

#include <vector>

#include "psc/arith.hpp"

namespace psc::powersum {

/// Sum of i^k mod `modulus` for i in [1, n], by direct summation.
Nat naive_power_sum_mod(const Nat& k, const Nat& n, const Nat& modulus);

/// S_k(q^t) mod q^t from the closed forms. Requires q prime, t >= 1, k >= 1.
Nat prime_power_sum_residue(const Nat& k, const Nat& q, unsigned t);

/// S_k(n) mod q^t for q^t | n.
Nat residue_at_prime_power(const Nat& k, const Nat& n, const Nat& q, unsigned t);

struct ResidueEntry {
    Nat prime;
    unsigned exponent = 0;
    Nat residue;  // S_n(n) mod prime^exponent

    Nat modulus() const { return arith::pow(prime, exponent); }
    friend bool operator==(const ResidueEntry&, const ResidueEntry&) = default;
};

struct ResidueBreakdown {
    Nat n;
    std::vector<ResidueEntry> entries;

    /// CRT recombination of the entries: S_n(n) mod n.
    Nat combine() const;
};

ResidueBreakdown s_n_n_breakdown(const Nat& n, std::uint64_t factor_cap = arith::kDefaultFactorCap);
ResidueBreakdown s_n_n_breakdown(const Nat& n, const Factorization& fac);

/// S_n(n) == m (mod n), compared prime power by prime power.
bool is_member(const Nat& n, const Nat& m, std::uint64_t factor_cap = arith::kDefaultFactorCap);
bool is_member(const Nat& n, const Nat& m, const Factorization& fac);

}  // namespace psc::powersum
