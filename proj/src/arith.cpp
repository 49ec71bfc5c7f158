#include "psc/arith.hpp"

#include <algorithm>
#include <array>
#include <random>

namespace psc {

FactorizationIncomplete::FactorizationIncomplete(const Nat& n, std::uint64_t cap)
    : std::runtime_error("factorization of " + n.get_str() + " exceeded " +
                         std::to_string(cap) + " iterations"),
      value_(n),
      cap_(cap) {}

Nat Factorization::value() const {
    Nat v = 1;
    for (const auto& f : factors) v *= arith::pow(f.prime, f.exponent);
    return v;
}

bool Factorization::square_free() const {
    return std::all_of(factors.begin(), factors.end(),
                       [](const PrimePower& f) { return f.exponent == 1; });
}

unsigned Factorization::exponent_of(const Nat& prime) const {
    for (const auto& f : factors)
        if (f.prime == prime) return f.exponent;
    return 0;
}

namespace arith {
namespace {

constexpr std::array<std::uint32_t, 12> kWitnesses = {2,  3,  5,  7,  11, 13,
                                                      17, 19, 23, 29, 31, 37};

// Primes below this bound are stripped by trial division before rho.
constexpr std::uint32_t kTrialBound = 1u << 12;
// is_prime only sieves this far before Miller-Rabin.
constexpr std::uint32_t kPrimalitySieveBound = 256;

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialBound, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i < kTrialBound; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint32_t j = i * i; j < kTrialBound; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

// Small primes packed into products below 2^64, so one bignum division
// serves a whole group.
struct SieveGroup {
    unsigned long product = 1;
    std::vector<std::uint32_t> primes;
};

const std::vector<SieveGroup>& sieve_groups() {
    static const std::vector<SieveGroup> groups = [] {
        std::vector<SieveGroup> out(1);
        for (std::uint32_t p : small_primes()) {
            if (p > kPrimalitySieveBound) break;
            if (out.back().product > ~0ul / p) out.emplace_back();
            out.back().product *= p;
            out.back().primes.push_back(p);
        }
        return out;
    }();
    return groups;
}

bool fits_u64(const Nat& n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

std::uint64_t to_u64(const Nat& n) {
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
    return out;
}

Nat from_u64(std::uint64_t v) {
    Nat out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return out;
}

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) {
    a %= n;
    if (a == 0) return true;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool strong_probable_prime(const Nat& n, const Nat& a, const Nat& d, unsigned s) {
    Nat x;
    const Nat n1 = n - 1;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n1) return true;
    }
    return false;
}

// Brent's cycle finding on x -> x^2 + c mod n. Returns a nontrivial factor or
// 0 when this constant c failed; `budget` is decremented per step.
std::uint64_t rho_u64(std::uint64_t n, std::uint64_t c, std::uint64_t& budget) {
    constexpr std::uint64_t kBatch = 128;
    auto f = [&](std::uint64_t x) {
        return static_cast<std::uint64_t>((static_cast<u128>(mul_mod(x, x, n)) + c) % n);
    };
    std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = f(y);
        for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
            ys = y;
            const std::uint64_t steps = std::min(kBatch, r - k);
            if (budget < steps) {
                budget = 0;
                return 0;
            }
            budget -= steps;
            for (std::uint64_t i = 0; i < steps; ++i) {
                y = f(y);
                q = mul_mod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
        }
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g == n ? 0 : g;
}

Nat rho_mpz(const Nat& n, unsigned long c, std::uint64_t& budget) {
    constexpr std::uint64_t kBatch = 128;
    auto f = [&](Nat& x) {
        x = x * x + c;
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    };
    Nat y = 2, x = 2, ys = 2, q = 1, g = 1, diff;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) f(y);
        for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
            ys = y;
            const std::uint64_t steps = std::min(kBatch, r - k);
            if (budget < steps) {
                budget = 0;
                return 0;
            }
            budget -= steps;
            for (std::uint64_t i = 0; i < steps; ++i) {
                f(y);
                diff = abs(x - y);
                q = q * diff % n;
            }
            g = gcd(q, n);
        }
    }
    if (g == n) {
        do {
            f(ys);
            g = gcd(abs(x - ys), n);
        } while (g == 1);
    }
    return g == n ? Nat(0) : g;
}

// Smallest k-th root representation n = r^k with k maximal, or k = 1.
std::pair<Nat, unsigned> perfect_power(const Nat& n) {
    const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (unsigned long k = bits; k >= 2; --k) {
        Nat root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0 && root > 1)
            return {root, static_cast<unsigned>(k)};
    }
    return {n, 1};
}

void split(const Nat& n, unsigned multiplicity, std::vector<PrimePower>& out,
           std::uint64_t& budget, const Nat& original, std::uint64_t cap) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back({n, multiplicity});
        return;
    }
    if (auto [root, k] = perfect_power(n); k > 1) {
        split(root, multiplicity * k, out, budget, original, cap);
        return;
    }
    Nat factor = 0;
    for (unsigned long c = 1; factor == 0; ++c) {
        if (fits_u64(n)) {
            factor = from_u64(rho_u64(to_u64(n), c, budget));
        } else {
            factor = rho_mpz(n, c, budget);
        }
        if (factor == 0 && budget == 0) throw FactorizationIncomplete(original, cap);
    }
    split(factor, multiplicity, out, budget, original, cap);
    split(Nat(n / factor), multiplicity, out, budget, original, cap);
}

}  // namespace

Nat parse_nat(std::string_view text) {
    if (text.empty() || !std::all_of(text.begin(), text.end(),
                                     [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw std::invalid_argument("not a nonnegative decimal integer: '" +
                                    std::string(text) + "'");
    return Nat(std::string(text), 10);
}

Nat mod_pow(const Nat& base, const Nat& exp, const Nat& modulus) {
    if (modulus == 0) throw std::invalid_argument("mod_pow: modulus must be >= 1");
    if (base < 0 || exp < 0) throw std::invalid_argument("mod_pow: negative operand");
    Nat out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
    return out;
}

Nat gcd(const Nat& a, const Nat& b) {
    Nat out;
    mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

Nat lcm(const Nat& a, const Nat& b) {
    if (a == 0 && b == 0) throw std::invalid_argument("lcm(0, 0) is undefined");
    Nat out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

bool divides(const Nat& d, const Nat& n) {
    if (d == 0) return n == 0;
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

Nat pow(const Nat& base, unsigned exp) {
    Nat out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint32_t p : kWitnesses) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // The first twelve primes as witnesses are deterministic below 3.3e24.
    for (std::uint32_t a : kWitnesses)
        if (!strong_probable_prime(n, a, d, s)) return false;
    return true;
}

bool is_prime(const Nat& n) {
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));

    for (const auto& group : sieve_groups()) {
        const unsigned long r = mpz_fdiv_ui(n.get_mpz_t(), group.product);
        for (std::uint32_t p : group.primes)
            if (r % p == 0) return false;
    }

    Nat d = n - 1;
    const unsigned s = static_cast<unsigned>(mpz_scan1(d.get_mpz_t(), 0));
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    for (std::uint32_t a : kWitnesses)
        if (!strong_probable_prime(n, Nat(a), d, s)) return false;

    // Fixed seed: the same n always sees the same bases.
    std::mt19937_64 gen(0x9e3779b97f4a7c15ull);
    const Nat span = n - 3;
    const auto words = mpz_size(n.get_mpz_t()) + 1;
    std::vector<std::uint64_t> buf(words);
    for (int round = 0; round < kProbabilisticRounds; ++round) {
        for (auto& w : buf) w = gen();
        Nat a;
        mpz_import(a.get_mpz_t(), buf.size(), -1, sizeof(std::uint64_t), 0, 0, buf.data());
        a = a % span + 2;
        if (!strong_probable_prime(n, a, d, s)) return false;
    }
    return true;
}

Factorization factorize(const Nat& n, std::uint64_t cap) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    Factorization out;
    Nat rest = n;
    for (std::uint32_t p : small_primes()) {
        if (rest == 1) break;
        if (Nat(p) * p > rest) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        if (e) out.factors.push_back({Nat(p), e});
    }

    std::vector<PrimePower> large;
    std::uint64_t budget = cap;
    split(rest, 1, large, budget, n, cap);

    // Merge repeated primes found along different split branches.
    std::sort(large.begin(), large.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    for (auto& f : large) {
        if (!out.factors.empty() && out.factors.back().prime == f.prime)
            out.factors.back().exponent += f.exponent;
        else
            out.factors.push_back(std::move(f));
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    return out;
}

}  // namespace arith
}  // namespace psc
