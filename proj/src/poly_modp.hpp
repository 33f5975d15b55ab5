#pragma once

// Dense polynomials over F_p in ascending order, kept trimmed (no trailing
// zeros). Internal to the library.

#include <cstdint>
#include <vector>

#include "primeset/arith.hpp"

namespace primeset::poly::modp {

using u64 = std::uint64_t;
using Poly = std::vector<u64>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline int degree(const Poly& a) {
    return static_cast<int>(a.size()) - 1;
}

inline Poly mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty())
        return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = arith::add_mod(out[i + j], arith::mul_mod(a[i], b[j], p), p);
    }
    trim(out);
    return out;
}

inline Poly make_monic(Poly a, u64 p) {
    if (a.empty() || a.back() == 1)
        return a;
    const u64 inv = arith::inv_mod_prime(a.back(), p);
    for (auto& c : a)
        c = arith::mul_mod(c, inv, p);
    return a;
}

/// a mod m, m monic and nonzero.
inline Poly rem_monic(Poly a, const Poly& m, u64 p) {
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const u64 lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        if (lead != 0)
            for (std::size_t i = 0; i < dm; ++i)
                a[shift + i] = arith::sub_mod(a[shift + i], arith::mul_mod(lead, m[i], p), p);
        a.pop_back();
    }
    trim(a);
    return a;
}

/// Quotient and remainder by a nonzero (not necessarily monic) divisor.
inline void divmod(Poly a, const Poly& b, u64 p, Poly& q, Poly& r) {
    const std::size_t db = b.size() - 1;
    const u64 inv = arith::inv_mod_prime(b.back(), p);
    q.assign(a.size() > db ? a.size() - db : 0, 0);
    while (a.size() > db) {
        const std::size_t shift = a.size() - 1 - db;
        const u64 c = arith::mul_mod(a.back(), inv, p);
        q[shift] = c;
        if (c != 0)
            for (std::size_t i = 0; i < db; ++i)
                a[shift + i] = arith::sub_mod(a[shift + i], arith::mul_mod(c, b[i], p), p);
        a.pop_back();
    }
    trim(a);
    trim(q);
    r = std::move(a);
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        b = make_monic(std::move(b), p);
        Poly r = rem_monic(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(std::move(a), p);
}

inline Poly derivative(const Poly& a, u64 p) {
    if (a.size() <= 1)
        return {};
    Poly d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        d[i - 1] = arith::mul_mod(a[i], i % p, p);
    trim(d);
    return d;
}

/// base^e mod m (m monic, deg m >= 1).
inline Poly pow_mod(Poly base, u64 e, const Poly& m, u64 p) {
    base = rem_monic(std::move(base), m, p);
    Poly result{1 % p};
    trim(result);
    if (m.size() == 1)
        return {};
    while (e > 0) {
        if (e & 1)
            result = rem_monic(mul(result, base, p), m, p);
        e >>= 1;
        if (e)
            base = rem_monic(mul(base, base, p), m, p);
    }
    return result;
}

/// x^e mod m, by left-to-right squaring where multiplying by x is a shift.
inline Poly x_pow_mod(u64 e, const Poly& m, u64 p) {
    if (m.size() <= 1)
        return {};
    Poly result{1};
    int top = 63;
    while (top >= 0 && ((e >> top) & 1) == 0)
        --top;
    for (int bit = top; bit >= 0; --bit) {
        result = rem_monic(mul(result, result, p), m, p);
        if ((e >> bit) & 1) {
            result.insert(result.begin(), 0);
            result = rem_monic(std::move(result), m, p);
        }
    }
    return rem_monic(std::move(result), m, p);
}

inline Poly sub(Poly a, const Poly& b, u64 p) {
    if (a.size() < b.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = arith::sub_mod(a[i], b[i], p);
    trim(a);
    return a;
}

inline u64 evaluate(const Poly& a, u64 x, u64 p) {
    u64 acc = 0;
    for (std::size_t i = a.size(); i-- > 0;)
        acc = arith::add_mod(arith::mul_mod(acc, x, p), a[i], p);
    return acc;
}

}  // namespace primeset::poly::modp
