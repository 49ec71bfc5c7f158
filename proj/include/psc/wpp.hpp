#pragma once

// Weak primary pseudoperfect numbers (WPP): n with
//   sum_{p | n} n / p + 1 == 0 (mod n).
// For prime p, every n in M_p with p | n has n / p in W, so the known WPP
// catalog bounds M_p up to p * max(catalog).

#include <vector>

#include "psc/arith.hpp"
#include "psc/structure.hpp"

namespace psc::wpp {

struct WppEntry {
    Nat value;
    Factorization factorization;
    Nat n_q;
};

struct WppCatalog {
    std::vector<WppEntry> entries;  // sorted by value

    /// The nine known WPP values, factored and checked on construction.
    static WppCatalog known(std::uint64_t factor_cap = arith::kDefaultFactorCap);
    Nat max() const;
};

/// The nine known values as decimal strings.
const std::vector<const char*>& known_values();

bool is_wpp(const Nat& n, std::uint64_t factor_cap = arith::kDefaultFactorCap);
bool is_wpp(const Nat& n, const Factorization& fac);

/// lcm over p | q of (p - 1) / gcd(p - 1, q); 1 for q = 1.
Nat n_q(const Nat& q, std::uint64_t factor_cap = arith::kDefaultFactorCap);
Nat n_q(const Nat& q, const Factorization& fac);

/// The set { m : S_{qm}(qm) == m (mod qm) } is empty iff some prime
/// r | n_q(q) has (r - 1) | q n_q(q).
bool mq_empty(const Nat& q, std::uint64_t factor_cap = arith::kDefaultFactorCap);

/// Catalog-screened p * Q candidates, each certified with is_member.
std::vector<Nat> mp1_bounded(const Nat& p, const WppCatalog& catalog,
                             std::uint64_t factor_cap = arith::kDefaultFactorCap);

/// mp0(p) U mp1_bounded(p) U mp2_candidates(p), complete up to p * max(catalog).
structure::MpReport mp_bounded(const Nat& p, const WppCatalog& catalog,
                               std::uint64_t factor_cap = arith::kDefaultFactorCap);

}  // namespace psc::wpp
