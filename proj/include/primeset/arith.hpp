#pragma once

// Word-level modular arithmetic shared by the sieve, primality and the
// mod-p polynomial code. No argument checking; callers guarantee m >= 1.

#include <cstdint>
#include <numeric>

namespace primeset::arith {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 add_mod(u64 a, u64 b, u64 m) {
    // a, b < m
    u64 s = a + b;
    return (s >= m || s < a) ? s - m : s;
}

constexpr u64 sub_mod(u64 a, u64 b, u64 m) {
    return a >= b ? a - b : a + (m - b);
}

constexpr u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1)
            result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Inverse of a modulo a prime p (a != 0 mod p).
constexpr u64 inv_mod_prime(u64 a, u64 p) {
    return pow_mod(a, p - 2, p);
}

/// Reduce a signed value into [0, m).
constexpr u64 reduce_signed(std::int64_t a, u64 m) {
    if (a >= 0)
        return static_cast<u64>(a) % m;
    // -(a+1) avoids overflow at INT64_MIN
    u64 neg = (static_cast<u64>(-(a + 1)) % m + 1) % m;
    return neg == 0 ? 0 : m - neg;
}

}  // namespace primeset::arith
