#include "psc/powersum.hpp"

#include <cstdint>

namespace psc::powersum {
namespace {

bool fits_u32(const Nat& n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 32; }

}  // namespace

Nat naive_power_sum_mod(const Nat& k, const Nat& n, const Nat& modulus) {
    if (modulus == 0) throw std::invalid_argument("naive_power_sum_mod: modulus must be >= 1");
    if (n < 0 || k < 0) throw std::invalid_argument("naive_power_sum_mod: negative operand");

    // Word-sized path: the only difference is the integer type.
    if (fits_u32(modulus) && n.fits_ulong_p() && k.fits_ulong_p()) {
        const std::uint64_t m = modulus.get_ui();
        const std::uint64_t count = n.get_ui();
        const std::uint64_t e = k.get_ui();
        std::uint64_t sum = 0;
        for (std::uint64_t i = 1; i <= count; ++i) {
            std::uint64_t base = i % m, r = 1 % m;
            for (std::uint64_t x = e; x; x >>= 1) {
                if (x & 1) r = r * base % m;
                base = base * base % m;
            }
            sum = (sum + r) % m;
        }
        return Nat(static_cast<unsigned long>(sum));
    }

    Nat sum = 0;
    for (Nat i = 1; i <= n; ++i) {
        sum += arith::mod_pow(i, k, modulus);
        if (sum >= modulus) sum -= modulus;
    }
    return sum;
}

Nat prime_power_sum_residue(const Nat& k, const Nat& q, unsigned t) {
    if (t == 0) throw std::invalid_argument("prime_power_sum_residue: t must be >= 1");
    if (k < 1) throw std::invalid_argument("prime_power_sum_residue: k must be >= 1");
    if (!arith::is_prime(q))
        throw std::invalid_argument("prime_power_sum_residue: " + q.get_str() + " is not prime");

    const Nat modulus = arith::pow(q, t);
    const Nat half = arith::pow(q, t - 1);  // q^(t-1)
    if (q == 2) {
        // k = 1, t > 1 also lands on 2^(t-1): S_1(2^t) = 2^(t-1) (2^t + 1).
        if (t == 1 || k == 1 || mpz_even_p(k.get_mpz_t())) return half;
        return 0;
    }
    if (arith::divides(q - 1, k)) return modulus - half;
    return 0;
}

Nat residue_at_prime_power(const Nat& k, const Nat& n, const Nat& q, unsigned t) {
    const Nat modulus = arith::pow(q, t);
    if (!arith::divides(modulus, n))
        throw std::invalid_argument("residue_at_prime_power: " + q.get_str() + "^" +
                                    std::to_string(t) + " does not divide " + n.get_str());
    const Nat cofactor = n / modulus;
    return cofactor * prime_power_sum_residue(k, q, t) % modulus;
}

Nat ResidueBreakdown::combine() const {
    Nat value = 0, modulus = 1;
    for (const auto& e : entries) {
        const Nat pe = e.modulus();
        // value + modulus * x == residue (mod pe)
        Nat inv;
        mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), pe.get_mpz_t());
        Nat x = (e.residue - value) * inv % pe;
        if (x < 0) x += pe;
        value += modulus * x;
        modulus *= pe;
    }
    return modulus == 1 ? Nat(0) : value;
}

ResidueBreakdown s_n_n_breakdown(const Nat& n, const Factorization& fac) {
    ResidueBreakdown out{n, {}};
    out.entries.reserve(fac.size());
    for (const auto& f : fac)
        out.entries.push_back({f.prime, f.exponent, residue_at_prime_power(n, n, f.prime, f.exponent)});
    return out;
}

ResidueBreakdown s_n_n_breakdown(const Nat& n, std::uint64_t factor_cap) {
    if (n < 1) throw std::invalid_argument("s_n_n_breakdown: n must be >= 1");
    return s_n_n_breakdown(n, arith::factorize(n, factor_cap));
}

bool is_member(const Nat& n, const Nat& m, const Factorization& fac) {
    if (n < 1) throw std::invalid_argument("is_member: n must be >= 1");
    if (m < 0) throw std::invalid_argument("is_member: m must be >= 0");
    for (const auto& f : fac) {
        const Nat modulus = arith::pow(f.prime, f.exponent);
        if (residue_at_prime_power(n, n, f.prime, f.exponent) != m % modulus) return false;
    }
    return true;
}

bool is_member(const Nat& n, const Nat& m, std::uint64_t factor_cap) {
    if (n < 1) throw std::invalid_argument("is_member: n must be >= 1");
    return is_member(n, m, arith::factorize(n, factor_cap));
}

}  // namespace psc::powersum
