#pragma once

// Per-prime arithmetic: exponentiation, multiplicative order, primitive roots
// and the Kronecker symbol.

#include <cstdint>

#include "primeset/primes.hpp"

namespace primeset::modular {

/// An element of F_p. The value is always reduced below the modulus.
class Residue {
public:
    Residue(std::uint64_t value, std::uint64_t prime);

    std::uint64_t value() const noexcept { return value_; }
    std::uint64_t modulus() const noexcept { return prime_; }

    friend bool operator==(const Residue&, const Residue&) = default;

private:
    std::uint64_t value_;
    std::uint64_t prime_;
};

/// a^e mod m; pow_mod(a, 0, m) = 1. Throws DomainError for m < 2.
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

/// Least n >= 1 with a^n = 1 (mod p). Throws DomainError if p | a.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p);

/// Same, reusing a precomputed factorization of p - 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p,
                                   const primes::Factorization& p_minus_1);

/// True iff a generates F_p^x. For p = 2 this is a odd; p | a gives false.
bool is_primitive_root(std::uint64_t a, std::uint64_t p);

bool is_primitive_root(std::uint64_t a, std::uint64_t p, const primes::Factorization& p_minus_1);

/// The canonical generator zeta_p: the least a >= 1 that is a primitive root mod p.
std::uint64_t smallest_primitive_root(std::uint64_t p);

/// Kronecker symbol (d | n) with the usual conventions:
/// (d|0) = 1 iff d = +-1; (d|-1) = sign of d; (d|2) = 0 for even d,
/// otherwise +1 for d = +-1 (mod 8) and -1 for d = +-3 (mod 8).
int kronecker(std::int64_t d, std::int64_t n);

}  // namespace primeset::modular
