#include "psc/structure.hpp"

#include <algorithm>

#include "psc/powersum.hpp"

namespace psc::structure {
namespace {

void require_prime(const Nat& p, const char* who) {
    if (!arith::is_prime(p))
        throw std::invalid_argument(std::string(who) + ": " + p.get_str() + " is not prime");
}

}  // namespace

bool is_exceptional(const Nat& p) {
    const auto& ex = exceptional_primes();
    return std::find(ex.begin(), ex.end(), p) != ex.end();
}

bool theorem1_check(const Nat& n, const Nat& p, std::uint64_t factor_cap) {
    require_prime(p, "theorem1_check");
    if (n < 1) throw std::invalid_argument("theorem1_check: n must be >= 1");
    const Factorization fac = arith::factorize(n, factor_cap);

    const unsigned s = fac.exponent_of(p);
    if (s > 2) return false;
    for (const auto& f : fac) {
        if (f.prime == p) continue;
        const Nat& q = f.prime;
        if (f.exponent != 1) return false;
        if (!arith::divides(q - 1, n)) return false;
        if (!arith::divides(q, n / q + p)) return false;
    }
    if (s == 1 && arith::divides(p - 1, n)) return false;
    if (s == 2) {
        if (!arith::divides(p - 1, n)) return false;
        if (!arith::divides(p, n / (p * p) + 1)) return false;
    }
    return true;
}

bool theoremG_check(const Nat& n, const Nat& m, std::uint64_t factor_cap) {
    if (n < 1) throw std::invalid_argument("theoremG_check: n must be >= 1");
    if (m < 1) throw std::invalid_argument("theoremG_check: m must be >= 1");
    const Factorization fm = arith::factorize(m, factor_cap);
    const Factorization fn = arith::factorize(n, factor_cap);

    for (const auto& f : fn) {
        if (fm.exponent_of(f.prime) != 0) continue;
        const Nat& q = f.prime;
        if (f.exponent != 1) return false;
        if (!arith::divides(q - 1, n)) return false;
        if (!arith::divides(q, n / q + m)) return false;
    }
    for (const auto& pj : fm) {
        const unsigned r = pj.exponent;
        const unsigned t = fn.exponent_of(pj.prime);
        if (t > r + 1) return false;
        if (t > 0 && t <= r && arith::divides(pj.prime - 1, n)) return false;
        if (t == r + 1) {
            if (!arith::divides(pj.prime - 1, n)) return false;
            // n / p^(r+1) + m / p^r == 0 (mod p). The unit part of m is
            // what S_n(n) must match at the top p-adic digit.
            const Nat unit = m / arith::pow(pj.prime, r);
            if (!arith::divides(pj.prime, n / arith::pow(pj.prime, r + 1) + unit)) return false;
        }
    }
    return true;
}

std::vector<Nat> mp0(const Nat& p) {
    std::vector<Nat> out;
    for (const auto& e : m1_set())
        if (p % e == 1 % e) out.push_back(e);
    return out;
}

std::vector<Nat> mp2_candidates(const Nat& p) {
    require_prime(p, "mp2_candidates");
    if (!is_exceptional(p)) return {};
    std::vector<Nat> pool;
    for (const auto& q : exceptional_primes())
        if (q != p) pool.push_back(q);

    std::vector<Nat> out;
    const Nat p2 = p * p;
    for (unsigned mask = 0; mask < (1u << pool.size()); ++mask) {
        Nat n = p2;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (mask & (1u << i)) n *= pool[i];
        if (theorem1_check(n, p)) out.push_back(n);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string_view to_string(Part part) {
    switch (part) {
        case Part::Zero: return "M0";
        case Part::One: return "M1";
        case Part::Two: return "M2";
    }
    return "?";
}

Part classify(const Nat& n, const Nat& p) {
    if (!arith::divides(p, n)) return Part::Zero;
    if (!arith::divides(p * p, n)) return Part::One;
    return Part::Two;
}

std::vector<Nat> MpReport::values() const {
    std::vector<Nat> out;
    out.reserve(elements.size());
    for (const auto& e : elements) out.push_back(e.value);
    return out;
}

MpReport make_report(const Nat& p, std::vector<Nat> candidates, Completeness completeness,
                     std::uint64_t factor_cap) {
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    MpReport report{p, {}, std::move(completeness)};
    for (auto& n : candidates) {
        if (report.completeness.kind == Completeness::Kind::UpToBound && n > report.completeness.bound)
            continue;
        if (!powersum::is_member(n, p, factor_cap)) continue;
        const Part part = classify(n, p);
        report.elements.push_back({std::move(n), part});
    }
    return report;
}

MpReport assemble_mp(const Nat& p, const std::vector<Nat>& np_list, Completeness completeness,
                     std::uint64_t factor_cap) {
    require_prime(p, "assemble_mp");
    std::vector<Nat> candidates = mp0(p);
    for (const auto& n : np_list) {
        Nat pn = p * n;
        if (theorem1_check(pn, p, factor_cap)) candidates.push_back(std::move(pn));
    }
    for (auto& n : mp2_candidates(p)) candidates.push_back(std::move(n));
    return make_report(p, std::move(candidates), std::move(completeness), factor_cap);
}

}  // namespace psc::structure
