#include "psc/qp.hpp"

#include <algorithm>
#include <functional>

namespace psc::qp {
namespace {

bool passes_filter(const Nat& product, const Nat& p_minus_1) {
    return !arith::divides(p_minus_1, product);
}

bool contains(const std::vector<Nat>& sorted, const Nat& v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

std::size_t bits(const Nat& n) { return mpz_sizeinbase(n.get_mpz_t(), 2); }

// Visits prod(Omega) for every subset Omega of pool, the empty one included.
void for_each_subset_product(const std::vector<Nat>& pool,
                             const std::function<void(const Nat&)>& visit) {
    std::function<void(std::size_t, const Nat&)> rec = [&](std::size_t i, const Nat& acc) {
        if (i == pool.size()) {
            visit(acc);
            return;
        }
        rec(i + 1, acc);
        rec(i + 1, acc * pool[i]);
    };
    rec(0, Nat(1));
}

}  // namespace

std::string_view to_string(Status status) {
    switch (status) {
        case Status::Stabilized: return "Stabilized";
        case Status::IterationCapped: return "IterationCapped";
        case Status::SubsetCapped: return "SubsetCapped";
        case Status::CandidateSizeCapped: return "CandidateSizeCapped";
    }
    return "?";
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Confirmed: return "Confirmed";
        case Verdict::Refuted: return "Refuted";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::vector<Nat> QpState::q_set() const {
    std::vector<Nat> out;
    for (const auto& q : primes)
        if (q != p) out.push_back(q);
    return out;
}

ProdParts prod_parts(const std::vector<Nat>& x, const Nat& p, const Caps& caps) {
    ProdParts out;
    if (x.size() > caps.max_subset_size) {
        out.subset_capped = true;
        return out;
    }
    const Nat p_minus_1 = p - 1;
    for_each_subset_product(x, [&](const Nat& product) {
        if (product == 1) return;  // empty subset: 2 is already in X
        if (!passes_filter(product, p_minus_1)) return;
        Nat candidate = product + 1;
        if (bits(candidate) > caps.max_candidate_bits) {
            out.size_capped = true;
            return;
        }
        out.candidates.push_back(std::move(candidate));
    });
    std::sort(out.candidates.begin(), out.candidates.end());
    out.candidates.erase(std::unique(out.candidates.begin(), out.candidates.end()),
                         out.candidates.end());
    return out;
}

namespace {

// Primes of the form 1 + prod(Omega) not yet in x, without materializing
// ProdParts. Only subsets containing 2 can give an odd candidate, and a
// subtree is cut once its product is wider than the candidate cap. Yields the
// same primes as filtering prod_parts(x, p, caps).
struct FreshPrimes {
    std::vector<Nat> primes;  // sorted
    bool size_capped = false;
};

FreshPrimes scan_fresh_primes(const std::vector<Nat>& x, const Nat& p, const Caps& caps) {
    FreshPrimes out;
    std::vector<Nat> odd;
    for (const auto& q : x)
        if (q != 2) odd.push_back(q);
    const Nat p_minus_1 = p - 1;
    std::vector<Nat> stack(odd.size() + 1);
    stack[0] = 2;
    Nat candidate;

    auto visit = [&](const Nat& product) {
        if (!passes_filter(product, p_minus_1)) return;
        candidate = product + 1;
        if (!contains(x, candidate) && arith::is_prime(candidate)) out.primes.push_back(candidate);
    };
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t first, std::size_t depth) {
        visit(stack[depth]);
        for (std::size_t j = first; j < odd.size(); ++j) {
            Nat& next = stack[depth + 1];
            next = stack[depth] * odd[j];
            if (bits(next + 1) > caps.max_candidate_bits) {
                // odd is sorted: every later prime is at least as wide
                out.size_capped = true;
                break;
            }
            rec(j + 1, depth + 1);
        }
    };
    if (bits(Nat(3)) > caps.max_candidate_bits) {
        out.size_capped = true;
    } else {
        rec(0, 0);
    }
    std::sort(out.primes.begin(), out.primes.end());
    return out;
}

}  // namespace

QpState compute_qp(const Nat& p, const Caps& caps) {
    if (!arith::is_prime(p)) throw std::invalid_argument("compute_qp: " + p.get_str() + " is not prime");

    QpState state;
    state.p = p;
    state.caps = caps;
    state.primes = {Nat(2)};
    if (p != 2) state.primes.push_back(p);
    std::sort(state.primes.begin(), state.primes.end());
    state.iteration = 1;
    state.sizes = {state.primes.size()};

    for (;;) {
        if (state.primes.size() > caps.max_subset_size) {
            state.status = Status::SubsetCapped;
            return state;
        }
        FreshPrimes fresh = scan_fresh_primes(state.primes, p, caps);

        if (fresh.primes.empty()) {
            state.status = fresh.size_capped ? Status::CandidateSizeCapped : Status::Stabilized;
            return state;
        }
        if (state.iteration >= caps.max_iterations) {
            state.status = Status::IterationCapped;
            return state;
        }

        std::vector<Nat> merged;
        merged.reserve(state.primes.size() + fresh.primes.size());
        std::merge(state.primes.begin(), state.primes.end(), fresh.primes.begin(), fresh.primes.end(),
                   std::back_inserter(merged));
        state.primes = std::move(merged);
        ++state.iteration;
        state.sizes.push_back(state.primes.size());
    }
}

Verdict verify_max(const Nat& p, const std::vector<Nat>& qp_primes, const Nat& k,
                   unsigned max_subset_size) {
    if (!arith::is_prime(p)) throw std::invalid_argument("verify_max: " + p.get_str() + " is not prime");
    std::vector<Nat> listed = qp_primes;
    std::sort(listed.begin(), listed.end());
    if (!contains(listed, k))
        throw std::invalid_argument("verify_max: " + k.get_str() + " is not in the listed set");

    std::vector<Nat> pool;
    for (const auto& q : listed)
        if (q != p && q <= k) pool.push_back(q);
    if (pool.size() > max_subset_size) return Verdict::Inconclusive;

    const Nat p_minus_1 = p - 1;
    auto escapes = [&](const Nat& product) {
        if (!passes_filter(product, p_minus_1)) return false;
        const Nat w = product + 1;
        return w != p && !contains(listed, w) && arith::is_prime(w);
    };

    bool found = false;
    for_each_subset_product(pool, [&](const Nat& product) {
        if (found) return;
        if (product != 1 && escapes(product)) found = true;
        if (!found && escapes(p * product)) found = true;
    });
    return found ? Verdict::Refuted : Verdict::Confirmed;
}

Nat max_q(const QpState& state) {
    const auto q = state.q_set();
    return q.empty() ? Nat(2) : q.back();
}

const std::vector<unsigned>& cond_multipliers() {
    static const std::vector<unsigned> m = {2, 6, 14, 42, 86, 258, 602, 1806};
    return m;
}

bool cor_cond_check(const Nat& p) {
    if (!arith::is_prime(p)) throw std::invalid_argument("cor_cond_check: " + p.get_str() + " is not prime");
    if (p == 2 || p == 3 || p == 7 || p == 43)
        throw std::invalid_argument("cor_cond_check: p must not be 2, 3, 7 or 43");
    return std::none_of(cond_multipliers().begin(), cond_multipliers().end(),
                        [&](unsigned c) { return arith::is_prime(1 + c * p); });
}

NpEnumeration enumerate_np(const QpState& state, const std::optional<Nat>& bound) {
    if (!bound && !state.stabilized())
        throw std::invalid_argument("enumerate_np: unbounded enumeration needs a stabilized Q_p (status " +
                                    std::string(to_string(state.status)) + ")");
    const std::vector<Nat> pool = state.q_set();
    const Nat p_minus_1 = state.p - 1;

    NpEnumeration out{state.p, bound, {}};
    // Pool is sorted, so once acc * pool[i] exceeds the bound every later
    // prime does too.
    std::function<void(std::size_t, const Nat&)> rec = [&](std::size_t i, const Nat& acc) {
        if (passes_filter(acc, p_minus_1)) out.values.push_back(acc);
        for (std::size_t j = i; j < pool.size(); ++j) {
            Nat next = acc * pool[j];
            if (bound && next > *bound) break;
            rec(j + 1, next);
        }
    };
    if (!bound || *bound >= 1) rec(0, Nat(1));
    std::sort(out.values.begin(), out.values.end());
    return out;
}

}  // namespace psc::qp
