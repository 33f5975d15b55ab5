#pragma once

// Single-prime shadows of the primitive-root statements: what the generator
// zeta_p (the smallest primitive root) does at one prime p.

#include <cstdint>
#include <optional>

#include "primeset/modular.hpp"

namespace primeset::constraints {

struct GpruWitness {
    std::uint64_t p = 0;
    std::uint64_t zeta = 0;    // smallest primitive root mod p
    std::uint64_t b = 0;       // exponent in [0, p-1)
    std::uint64_t value = 0;   // zeta^b mod p
    bool coprime = false;      // gcd(b, p-1) == 1
    bool primitive = false;    // value generates F_p^x

    bool consistent() const noexcept { return coprime == primitive; }
    friend bool operator==(const GpruWitness&, const GpruWitness&) = default;
};

/// Throws DomainError unless p is an odd prime and 0 <= b < p-1.
GpruWitness gpru_coordinate(std::uint64_t p, std::uint64_t b);

struct GpruSweep {
    std::uint64_t bound = 0;
    std::uint64_t primes_checked = 0;
    std::uint64_t pairs_checked = 0;
    std::uint64_t counterexamples = 0;
    std::optional<GpruWitness> first_counterexample;

    bool pass() const noexcept { return counterexamples == 0; }
};

/// Every odd prime p <= bound and every b in [0, p-1).
GpruSweep gpru_sweep(std::uint64_t bound);

/// zeta_p^((p-1)/2) == -1 (mod p). Throws DomainError unless p is an odd prime.
bool eta_nu_check(std::uint64_t p);

/// zeta_p^((p-1)/4), a square root of -1. Throws DomainError unless p is a
/// prime == 1 (mod 4).
modular::Residue sqrt_minus_one(std::uint64_t p);

}  // namespace primeset::constraints
