#include "primeset/coordinate.hpp"

#include <numeric>
#include <string>

#include "primeset/arith.hpp"
#include "primeset/errors.hpp"
#include "primeset/primes.hpp"

namespace primeset::constraints {

namespace {

void require_odd_prime(std::uint64_t p, const char* who) {
    if (p == 2 || !primes::is_prime(p))
        throw DomainError(std::string(who) + ": " + std::to_string(p) + " is not an odd prime");
}

}  // namespace

GpruWitness gpru_coordinate(std::uint64_t p, std::uint64_t b) {
    require_odd_prime(p, "gpru_coordinate");
    if (b >= p - 1)
        throw DomainError("gpru_coordinate: b must lie in [0, p-1)");
    GpruWitness w;
    w.p = p;
    w.zeta = modular::smallest_primitive_root(p);
    w.b = b;
    w.value = arith::pow_mod(w.zeta, b, p);
    w.coprime = std::gcd(b, p - 1) == 1;
    w.primitive = modular::is_primitive_root(w.value, p);
    return w;
}

GpruSweep gpru_sweep(std::uint64_t bound) {
    GpruSweep sweep;
    sweep.bound = bound;
    if (bound < 3)
        return sweep;
    const primes::SieveTable table(bound);
    table.for_each_prime(3, bound, [&](std::uint64_t p) {
        const auto fac = primes::factorize(p - 1);
        std::uint64_t zeta = 2;
        while (!modular::is_primitive_root(zeta, p, fac))
            ++zeta;
        std::uint64_t value = 1;  // zeta^b, advanced multiplicatively
        for (std::uint64_t b = 0; b < p - 1; ++b, value = arith::mul_mod(value, zeta, p)) {
            const bool coprime = std::gcd(b, p - 1) == 1;
            const bool primitive = modular::is_primitive_root(value, p, fac);
            ++sweep.pairs_checked;
            if (coprime != primitive) {
                ++sweep.counterexamples;
                if (!sweep.first_counterexample)
                    sweep.first_counterexample = GpruWitness{p, zeta, b, value, coprime, primitive};
            }
        }
        ++sweep.primes_checked;
    });
    return sweep;
}

bool eta_nu_check(std::uint64_t p) {
    require_odd_prime(p, "eta_nu_check");
    const std::uint64_t zeta = modular::smallest_primitive_root(p);
    return arith::pow_mod(zeta, (p - 1) / 2, p) == p - 1;
}

modular::Residue sqrt_minus_one(std::uint64_t p) {
    if (p % 4 != 1 || !primes::is_prime(p))
        throw DomainError("sqrt_minus_one: " + std::to_string(p) + " is not a prime congruent to 1 mod 4");
    const std::uint64_t zeta = modular::smallest_primitive_root(p);
    return modular::Residue(arith::pow_mod(zeta, (p - 1) / 4, p), p);
}

}  // namespace primeset::constraints
