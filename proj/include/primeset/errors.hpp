#pragma once

#include <stdexcept>
#include <string>

namespace primeset {

/// An argument lies outside a supported range (sieve limit, degree cap, group order cap).
class BoundsError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The prime is ramified for the object in question (divides the leading
/// coefficient or discriminant), so the per-prime test is undefined there.
class ExcludedPrime : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An operation was handed a constraint it has no congruence description for.
class Inapplicable : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed text input (polynomial, permutation, constraint line).
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace primeset
