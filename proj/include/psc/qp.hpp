#pragma once

// Iterative construction of the prime set Q_p.
//
// Q_p holds the primes q with q - 1 square-free, (p - 1) not dividing q - 1,
// and every prime factor of q - 1 equal to p or itself in Q_p. Starting from
// X_1 = {2, p}, each round adds every prime of the form 1 + prod(Omega),
// Omega a nonempty subset of X_i, that passes the (p - 1) filter. When a
// round adds nothing the set has stabilized at Q_p U {p}.

#include <optional>
#include <string_view>
#include <vector>

#include "psc/arith.hpp"

namespace psc::qp {

struct Caps {
    unsigned max_iterations = 32;
    unsigned max_subset_size = 24;     // largest set whose power set is enumerated
    unsigned max_candidate_bits = 256; // candidates wider than this are skipped
};

enum class Status { Stabilized, IterationCapped, SubsetCapped, CandidateSizeCapped };
std::string_view to_string(Status status);

struct QpState {
    Nat p;
    unsigned iteration = 1;   // index i of the final X_i
    std::vector<Nat> primes;  // X_i, sorted
    Status status = Status::Stabilized;
    Caps caps;
    std::vector<std::size_t> sizes;  // |X_1|, |X_2|, ..., |X_i|

    bool stabilized() const { return status == Status::Stabilized; }
    /// Q_p itself: primes without p.
    std::vector<Nat> q_set() const;
};

struct ProdParts {
    std::vector<Nat> candidates;   // sorted, deduplicated
    bool subset_capped = false;    // power set not enumerated at all
    bool size_capped = false;      // some candidate exceeded max_candidate_bits
};

/// { 1 + prod(Omega) : Omega nonempty subset of x } minus candidates n with
/// (p - 1) | (n - 1).
ProdParts prod_parts(const std::vector<Nat>& x, const Nat& p, const Caps& caps = {});

QpState compute_qp(const Nat& p, const Caps& caps = {});

enum class Verdict { Confirmed, Refuted, Inconclusive };
std::string_view to_string(Verdict verdict);

/// Certificate that k is the largest element of Q_p, given qp_primes lists
/// every member of Q_p up to k. Every w = 1 + prod(Omega) and
/// w' = 1 + p prod(Omega) over subsets of {q in qp_primes : q != p, q <= k}
/// that passes the (p - 1) filter must be composite or already listed.
Verdict verify_max(const Nat& p, const std::vector<Nat>& qp_primes, const Nat& k,
                   unsigned max_subset_size = Caps{}.max_subset_size);

/// Largest element of Q_p in a state, or 2 when Q_p is empty.
Nat max_q(const QpState& state);

/// True iff none of 1 + c p, c in {2, 6, 14, 42, 86, 258, 602, 1806}, is
/// prime; then Q_p = {2, 3, 7, 43}. Rejects p in {2, 3, 7, 43}.
bool cor_cond_check(const Nat& p);

/// The multipliers c screened by cor_cond_check.
const std::vector<unsigned>& cond_multipliers();

struct NpEnumeration {
    Nat p;
    std::optional<Nat> bound;  // nullopt: unbounded
    std::vector<Nat> values;   // sorted
};

/// Square-free products n of Q_p members with (p - 1) not dividing n,
/// optionally capped at `bound`. Unbounded enumeration needs a stabilized state.
NpEnumeration enumerate_np(const QpState& state, const std::optional<Nat>& bound);

}  // namespace psc::qp
