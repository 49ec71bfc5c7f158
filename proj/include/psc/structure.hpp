#pragma once

// Structural characterization of M_m = { n >= 1 : S_n(n) == m (mod n) }.
//
// For prime p every solution is n = p^s * q_1 ... q_r with s <= 2, which
// splits M_p into three parts by the exact power of p dividing n:
//   part 0: p does not divide n  (always a subset of M_1)
//   part 1: p || n               (n / p lies in N_p)
//   part 2: p^2 || n             (empty unless p is 2, 3, 7 or 43)

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "psc/arith.hpp"

namespace psc::structure {

/// M_1, the complete solution set for m = 1.
inline const std::array<Nat, 5>& m1_set() {
    static const std::array<Nat, 5> set = {Nat(1), Nat(2), Nat(6), Nat(42), Nat(1806)};
    return set;
}

/// The primes {2, 3, 7, 43}: the only p for which part 2 can be nonempty.
inline const std::array<Nat, 4>& exceptional_primes() {
    static const std::array<Nat, 4> set = {Nat(2), Nat(3), Nat(7), Nat(43)};
    return set;
}

bool is_exceptional(const Nat& p);

/// Membership n in M_p for prime p, from the factorization of n.
bool theorem1_check(const Nat& n, const Nat& p, std::uint64_t factor_cap = arith::kDefaultFactorCap);

/// Membership n in M_m for arbitrary m >= 1.
bool theoremG_check(const Nat& n, const Nat& m, std::uint64_t factor_cap = arith::kDefaultFactorCap);

/// Part 0 of M_p: { e in M_1 : p == 1 (mod e) }.
std::vector<Nat> mp0(const Nat& p);

/// Part 2 of M_p. Candidates are p^2 * d for every square-free d over
/// {2, 3, 7, 43} \ {p}, kept when they pass theorem1_check.
std::vector<Nat> mp2_candidates(const Nat& p);

enum class Part { Zero, One, Two };
std::string_view to_string(Part part);

struct Completeness {
    enum class Kind { ProvenComplete, UpToBound };
    Kind kind = Kind::ProvenComplete;
    Nat bound;  // meaningful for UpToBound only

    static Completeness proven() { return {Kind::ProvenComplete, 0}; }
    static Completeness up_to(Nat b) { return {Kind::UpToBound, std::move(b)}; }
};

struct MpElement {
    Nat value;
    Part part = Part::Zero;
};

struct MpReport {
    Nat modulus;
    std::vector<MpElement> elements;  // strictly increasing
    Completeness completeness;

    std::vector<Nat> values() const;
};

/// Tags `n` by the exact power of p dividing it.
Part classify(const Nat& n, const Nat& p);

/// Builds an MpReport from candidate values: sorts, deduplicates, tags and
/// drops anything that fails is_member (or exceeds an UpToBound bound).
MpReport make_report(const Nat& p, std::vector<Nat> candidates, Completeness completeness,
                     std::uint64_t factor_cap = arith::kDefaultFactorCap);

/// mp0(p) U { p n : n in np_list, theorem1_check(p n, p) } U mp2_candidates(p).
MpReport assemble_mp(const Nat& p, const std::vector<Nat>& np_list, Completeness completeness,
                     std::uint64_t factor_cap = arith::kDefaultFactorCap);

}  // namespace psc::structure
