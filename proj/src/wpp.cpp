#include "psc/wpp.hpp"

#include <algorithm>

#include "psc/powersum.hpp"

namespace psc::wpp {

const std::vector<const char*>& known_values() {
    static const std::vector<const char*> values = {
        "1",          "2",           "6",
        "42",         "1806",        "47058",
        "2214502422", "52495396602", "8490421583559688410706771261086",
    };
    return values;
}

WppCatalog WppCatalog::known(std::uint64_t factor_cap) {
    WppCatalog catalog;
    for (const char* text : known_values()) {
        WppEntry e;
        e.value = Nat(text, 10);
        e.factorization = arith::factorize(e.value, factor_cap);
        if (!is_wpp(e.value, e.factorization))
            throw std::logic_error("catalog entry " + e.value.get_str() + " is not a WPP");
        e.n_q = n_q(e.value, e.factorization);
        catalog.entries.push_back(std::move(e));
    }
    return catalog;
}

Nat WppCatalog::max() const { return entries.empty() ? Nat(0) : entries.back().value; }

bool is_wpp(const Nat& n, const Factorization& fac) {
    if (n < 1) throw std::invalid_argument("is_wpp: n must be >= 1");
    Nat sum = 1;
    for (const auto& f : fac) sum += n / f.prime;
    return arith::divides(n, sum);
}

bool is_wpp(const Nat& n, std::uint64_t factor_cap) {
    if (n < 1) throw std::invalid_argument("is_wpp: n must be >= 1");
    return is_wpp(n, arith::factorize(n, factor_cap));
}

Nat n_q(const Nat& q, const Factorization& fac) {
    if (q < 1) throw std::invalid_argument("n_q: Q must be >= 1");
    Nat out = 1;
    for (const auto& f : fac) {
        const Nat pm1 = f.prime - 1;
        out = arith::lcm(out, pm1 / arith::gcd(pm1, q));
    }
    return out;
}

Nat n_q(const Nat& q, std::uint64_t factor_cap) {
    if (q < 1) throw std::invalid_argument("n_q: Q must be >= 1");
    return n_q(q, arith::factorize(q, factor_cap));
}

bool mq_empty(const Nat& q, std::uint64_t factor_cap) {
    const Nat nq = n_q(q, factor_cap);
    const Nat qn = q * nq;
    for (const auto& f : arith::factorize(nq, factor_cap))
        if (arith::divides(f.prime - 1, qn)) return true;
    return false;
}

std::vector<Nat> mp1_bounded(const Nat& p, const WppCatalog& catalog, std::uint64_t factor_cap) {
    if (!arith::is_prime(p)) throw std::invalid_argument("mp1_bounded: " + p.get_str() + " is not prime");
    std::vector<Nat> out;
    for (const auto& e : catalog.entries) {
        if (!arith::divides(e.n_q, p)) continue;
        // 0 divides only 0, so n_q = 1 never fails this screen.
        if (arith::divides(e.n_q - 1, e.value)) continue;
        Nat n = p * e.value;
        if (powersum::is_member(n, p, factor_cap)) out.push_back(std::move(n));
    }
    std::sort(out.begin(), out.end());
    return out;
}

structure::MpReport mp_bounded(const Nat& p, const WppCatalog& catalog, std::uint64_t factor_cap) {
    std::vector<Nat> candidates = structure::mp0(p);
    for (auto& n : mp1_bounded(p, catalog, factor_cap)) candidates.push_back(std::move(n));
    for (auto& n : structure::mp2_candidates(p)) candidates.push_back(std::move(n));
    return structure::make_report(p, std::move(candidates),
                                  structure::Completeness::up_to(p * catalog.max()), factor_cap);
}

}  // namespace psc::wpp
