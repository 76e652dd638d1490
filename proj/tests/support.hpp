#pragma once

// Test-only oracles. Nothing here calls into the library's arithmetic.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace testing_oracle {

using u64 = std::uint64_t;

inline u64 powmod(u64 b, u64 e, u64 m)
{
    unsigned __int128 r = 1, x = b % m;
    while (e) {
        if (e & 1)
            r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<u64>(r);
}

inline bool is_prime(u64 v)
{
    if (v < 2)
        return false;
    for (u64 d = 2; d * d <= v; ++d)
        if (v % d == 0)
            return false;
    return true;
}

inline std::vector<u64> factor(u64 v)
{
    std::vector<u64> out;
    for (u64 d = 2; d * d <= v; ++d)
        while (v % d == 0) {
            out.push_back(d);
            v /= d;
        }
    if (v > 1)
        out.push_back(v);
    return out;
}

// Product of Euler-criterion Legendre symbols over the factorization of N.
inline int jacobi_by_factoring(long long a, u64 N)
{
    int result = 1;
    for (u64 q : factor(N)) {
        const u64 r = static_cast<u64>(((a % static_cast<long long>(q)) + static_cast<long long>(q)) %
                                       static_cast<long long>(q));
        if (r == 0)
            return 0;
        if (powmod(r, (q - 1) / 2, q) != 1)
            result = -result;
    }
    return result;
}

inline u64 gcd(u64 a, u64 b)
{
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Brute-force inverse by search.
inline std::optional<u64> inverse_by_search(u64 a, u64 N)
{
    for (u64 x = 1; x < N; ++x)
        if ((unsigned __int128)a * x % N == 1)
            return x;
    return std::nullopt;
}

// Affine point arithmetic with Fermat inverses, for prime p only.
struct NaivePoint {
    bool inf = true;
    u64 x = 0, y = 0;
    bool operator==(const NaivePoint&) const = default;
};

inline NaivePoint naive_add(u64 p, u64 m, NaivePoint P, NaivePoint Q)
{
    if (P.inf)
        return Q;
    if (Q.inf)
        return P;
    auto sub = [p](u64 a, u64 b) { return (a + p - b % p) % p; };
    u64 num, den;
    if (P.x == Q.x) {
        if ((P.y + Q.y) % p == 0)
            return {};
        num = sub(3 * P.x * P.x % p, m);
        den = 2 * P.y % p;
    } else {
        num = sub(Q.y, P.y);
        den = sub(Q.x, P.x);
    }
    const u64 slope = num * powmod(den, p - 2, p) % p;
    const u64 x3 = sub(sub(slope * slope % p, P.x), Q.x);
    return {false, x3, sub(slope * sub(P.x, x3) % p, P.y)};
}

}  // namespace testing_oracle
