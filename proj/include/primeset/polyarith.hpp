#pragma once

/**
 * Integer polynomials and their reductions modulo primes.
 *
 * IntPoly holds arbitrary-precision coefficients in ascending degree order and
 * is always normalized (no trailing zero coefficients). Everything that works
 * modulo p first reduces to machine words; p is assumed prime and below 2^63.
 */

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace primeset::poly {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr unsigned kMaxCyclotomicIndex = 10'000;

class IntPoly {
public:
    /// The zero polynomial.
    IntPoly() = default;

    explicit IntPoly(std::vector<BigInt> ascending);
    IntPoly(std::initializer_list<long long> ascending);

    /// Comma-separated integer coefficients, ascending degree: "-1,-1,0,1" is x^3 - x - 1.
    static IntPoly parse(std::string_view text);

    /// x^n - 1
    static IntPoly x_pow_minus_one(unsigned n);

    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// Degree, with -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    const BigInt& leading() const;
    const BigInt& coeff(std::size_t i) const;
    std::span<const BigInt> coefficients() const noexcept { return coeffs_; }

    IntPoly derivative() const;
    BigInt evaluate(const BigInt& x) const;

    /// Coefficients reduced into [0, p), ascending; trailing zeros trimmed.
    std::vector<std::uint64_t> reduce_mod(std::uint64_t p) const;

    /// Inverse of parse().
    std::string to_csv() const;

    /// Human-readable form such as "x^3 - x - 1".
    std::string pretty() const;

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend bool operator==(const IntPoly&, const IntPoly&) = default;

private:
    void normalize();

    std::vector<BigInt> coeffs_;
};

/// Reduce a big integer into [0, p).
std::uint64_t mod_u64(const BigInt& v, std::uint64_t p);

/// Exact quotient a / b over the integers. Throws DomainError if b is zero
/// or does not divide a exactly.
IntPoly exact_divide(const IntPoly& a, const IntPoly& b);

/// n-th cyclotomic polynomial, 1 <= n <= 10^4. Throws BoundsError otherwise.
IntPoly cyclotomic(unsigned n);

/// Euler's totient, used for cyclotomic degrees and congruence densities.
std::uint64_t euler_phi(std::uint64_t n);

/// Resultant over Z (Sylvester determinant). Throws DomainError on a zero argument.
BigInt poly_resultant(const IntPoly& f, const IntPoly& g);

/// Disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f). Throws DomainError for deg f < 1.
BigInt discriminant(const IntPoly& f);

/// Irreducible-factor degrees of f mod p. Empty degrees and
/// squarefree_mod_p == false when f mod p has a repeated factor.
struct FactorType {
    std::vector<unsigned> degrees;  // ascending
    bool squarefree_mod_p = true;

    bool all_linear() const;
    unsigned linear_factors() const;
    std::string to_string() const;

    friend bool operator==(const FactorType&, const FactorType&) = default;
};

/// Throws ExcludedPrime if p | lc(f).
FactorType factor_type_mod_p(const IntPoly& f, std::uint64_t p);

/// True iff f has a zero in F_p. Throws ExcludedPrime if p | lc(f).
bool has_root_mod_p(const IntPoly& f, std::uint64_t p);

/// True iff f is a product of distinct linear factors mod p.
/// Throws ExcludedPrime if p | lc(f) * Disc(f).
bool splits_completely_mod_p(const IntPoly& f, std::uint64_t p);

/// Precomputed per-polynomial data for scanning many primes: the discriminant
/// and leading coefficient are computed once.
class PrimeTester {
public:
    explicit PrimeTester(IntPoly f);

    const IntPoly& poly() const noexcept { return f_; }
    const BigInt& discriminant() const noexcept { return disc_; }

    /// p | lc(f) * Disc(f)
    bool ramified(std::uint64_t p) const;

    bool has_root(std::uint64_t p) const { return has_root_mod_p(f_, p); }
    FactorType factor_type(std::uint64_t p) const { return factor_type_mod_p(f_, p); }
    bool splits_completely(std::uint64_t p) const;

private:
    IntPoly f_;
    BigInt disc_;
    BigInt bad_;  // lc * Disc
};

}  // namespace primeset::poly
