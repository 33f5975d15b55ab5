#include "primeset/modular.hpp"

#include <string>

#include "primeset/arith.hpp"
#include "primeset/errors.hpp"

namespace primeset::modular {

Residue::Residue(std::uint64_t value, std::uint64_t prime) : value_(0), prime_(prime) {
    if (prime < 2)
        throw DomainError("Residue: modulus must be at least 2");
    value_ = value % prime;
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    if (m < 2)
        throw DomainError("pow_mod: modulus must be at least 2, got " + std::to_string(m));
    return arith::pow_mod(a, e, m);
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p,
                                   const primes::Factorization& p_minus_1) {
    if (p < 2)
        throw DomainError("multiplicative_order: modulus must be prime");
    a %= p;
    if (a == 0)
        throw DomainError("multiplicative_order: " + std::to_string(p) + " divides a");
    // Start from p - 1 and strip each prime factor while the power stays 1.
    std::uint64_t order = p - 1;
    for (const auto& [q, e] : p_minus_1.factors) {
        for (unsigned i = 0; i < e; ++i) {
            if (arith::pow_mod(a, order / q, p) != 1)
                break;
            order /= q;
        }
    }
    return order;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p) {
    if (p < 2)
        throw DomainError("multiplicative_order: modulus must be prime");
    if (a % p == 0)
        throw DomainError("multiplicative_order: " + std::to_string(p) + " divides a");
    if (p == 2)
        return 1;
    return multiplicative_order(a, p, primes::factorize(p - 1));
}

bool is_primitive_root(std::uint64_t a, std::uint64_t p, const primes::Factorization& p_minus_1) {
    a %= p;
    if (a == 0)
        return false;
    if (p == 2)
        return true;
    for (const auto& f : p_minus_1.factors)
        if (arith::pow_mod(a, (p - 1) / f.prime, p) == 1)
            return false;
    return true;
}

bool is_primitive_root(std::uint64_t a, std::uint64_t p) {
    if (p < 2)
        throw DomainError("is_primitive_root: modulus must be prime");
    if (p == 2)
        return a % 2 == 1;
    return is_primitive_root(a, p, primes::factorize(p - 1));
}

std::uint64_t smallest_primitive_root(std::uint64_t p) {
    if (!primes::is_prime(p))
        throw DomainError("smallest_primitive_root: " + std::to_string(p) + " is not prime");
    if (p == 2)
        return 1;
    const auto fac = primes::factorize(p - 1);
    for (std::uint64_t a = 2; a < p; ++a)
        if (is_primitive_root(a, p, fac))
            return a;
    throw DomainError("smallest_primitive_root: no generator found mod " + std::to_string(p));
}

namespace {

/// Jacobi symbol (a | n) for odd n > 0.
int jacobi(std::uint64_t a, std::uint64_t n) {
    a %= n;
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const std::uint64_t r = n & 7;
            if (r == 3 || r == 5)
                t = -t;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3)
            t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

}  // namespace

int kronecker(std::int64_t d, std::int64_t n) {
    if (n == 0)
        return (d == 1 || d == -1) ? 1 : 0;

    int result = 1;
    // Magnitude of n, computed without overflow at INT64_MIN.
    std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    if (n < 0 && d < 0)
        result = -result;

    if ((m & 1) == 0) {
        if ((d & 1) == 0)
            return 0;
        const unsigned twos = static_cast<unsigned>(__builtin_ctzll(m));
        m >>= twos;
        const std::uint64_t r = arith::reduce_signed(d, 8);
        if ((twos & 1) && (r == 3 || r == 5))
            result = -result;
    }
    if (m == 1)
        return result;
    return result * jacobi(arith::reduce_signed(d, m), m);
}

}  // namespace primeset::modular
