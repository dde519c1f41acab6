#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace lmeasure {

/// Primes up to `limit` inclusive, by a segmented sieve.
inline std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
    std::vector<std::int64_t> primes;
    if (limit < 2) return primes;

    // base primes up to sqrt(limit)
    std::int64_t root = 1;
    while ((root + 1) * (root + 1) <= limit) ++root;
    std::vector<bool> base(static_cast<std::size_t>(root) + 1, true);
    for (std::int64_t i = 2; i * i <= root; ++i)
        if (base[static_cast<std::size_t>(i)])
            for (std::int64_t j = i * i; j <= root; j += i) base[static_cast<std::size_t>(j)] = false;
    std::vector<std::int64_t> base_primes;
    for (std::int64_t i = 2; i <= root; ++i)
        if (base[static_cast<std::size_t>(i)]) {
            base_primes.push_back(i);
            primes.push_back(i);
        }

    const std::int64_t segment = 1 << 17;
    std::vector<bool> mark;
    for (std::int64_t low = root + 1; low <= limit; low += segment) {
        std::int64_t high = std::min(low + segment - 1, limit);
        mark.assign(static_cast<std::size_t>(high - low + 1), true);
        for (std::int64_t p : base_primes) {
            std::int64_t start = ((low + p - 1) / p) * p;
            if (start < p * p) start = p * p;
            for (std::int64_t j = start; j <= high; j += p) mark[static_cast<std::size_t>(j - low)] = false;
        }
        for (std::int64_t i = low; i <= high; ++i)
            if (mark[static_cast<std::size_t>(i - low)]) primes.push_back(i);
    }
    return primes;
}

struct PrimePower {
    std::int64_t p;
    int e;
    std::int64_t value;  // p^e
};

/// Prime factorization by trial division; adequate for desk-scale moduli.
inline std::vector<PrimePower> factorize(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be positive");
    std::vector<PrimePower> out;
    for (std::int64_t p = 2; p * p <= n; p == 2 ? p = 3 : p += 2) {
        if (n % p) continue;
        PrimePower pp{p, 0, 1};
        while (n % p == 0) {
            n /= p;
            ++pp.e;
            pp.value *= p;
        }
        out.push_back(pp);
    }
    if (n > 1) out.push_back(PrimePower{n, 1, n});
    return out;
}

inline std::int64_t totient(std::int64_t n) {
    std::int64_t phi = 1;
    for (const auto& pp : factorize(n)) phi *= pp.value / pp.p * (pp.p - 1);
    return phi;
}

inline std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

inline std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t m) {
    if (m <= 0) throw std::invalid_argument("mod_pow: modulus must be positive");
    if (m == 1) return 0;
    std::int64_t r = 1;
    base %= m;
    if (base < 0) base += m;
    while (exp > 0) {
        if (exp & 1) r = mod_mul(r, base, m);
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// Modular inverse of a mod m (requires gcd(a, m) = 1).
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = a % m, r = m, old_s = 1, s = 0;
    if (old_r < 0) old_r += m;
    while (r != 0) {
        std::int64_t quot = old_r / r;
        std::int64_t tmp = r;
        r = old_r - quot * r;
        old_r = tmp;
        tmp = s;
        s = old_s - quot * s;
        old_s = tmp;
    }
    if (old_r != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
    return ((old_s % m) + m) % m;
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p = 2; p * p <= n; p == 2 ? p = 3 : p += 2)
        if (n % p == 0) return false;
    return true;
}

/// Squarefree divisors of n with their Moebius signs.
inline std::vector<std::pair<std::int64_t, int>> squarefree_divisors(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out{{1, 1}};
    for (const auto& pp : factorize(n)) {
        std::size_t sz = out.size();
        for (std::size_t i = 0; i < sz; ++i) out.emplace_back(out[i].first * pp.p, -out[i].second);
    }
    return out;
}

}  // namespace lmeasure
