#pragma once

/**
 * Prime enumeration, counting, primality and factorization.
 *
 * SieveTable is a segmented, odd-only sieve of Eratosthenes. It is immutable
 * once built and may be read from any number of threads. The on-disk cache
 * stores the full bitmap (bit n <-> integer n) after an 8-byte little-endian
 * limit header.
 */

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace primeset::primes {

inline constexpr std::uint64_t kMaxSieveLimit = std::uint64_t{1} << 32;
inline constexpr std::uint64_t kMaxFactorInput = std::uint64_t{1} << 63;

class SieveTable {
public:
    /// Sieve [2, limit]. Throws BoundsError unless 2 <= limit <= 2^32.
    explicit SieveTable(std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }

    /// Primality of n. Throws BoundsError if n > limit().
    bool is_prime(std::uint64_t n) const;

    /// #{p <= n : p prime}. Throws BoundsError if n > limit().
    std::uint64_t count_up_to(std::uint64_t n) const;

    /// Number of primes in [2, limit()].
    std::uint64_t count() const noexcept { return total_; }

    /// All primes in [lo, hi], hi clamped to limit().
    std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) const;

    std::vector<std::uint64_t> primes_up_to(std::uint64_t n) const { return primes_in(2, n); }

    /// Calls fn(p) for every prime p in [lo, hi] in increasing order.
    template <class Fn>
    void for_each_prime(std::uint64_t lo, std::uint64_t hi, Fn&& fn) const {
        if (hi > limit_)
            hi = limit_;
        if (lo <= 2 && hi >= 2)
            fn(std::uint64_t{2});
        if (hi < 3)
            return;
        std::uint64_t first = lo / 2 > 1 ? lo / 2 : 1;
        std::uint64_t last = (hi - 1) / 2;
        for (std::uint64_t w = first / 64; w <= last / 64; ++w) {
            std::uint64_t word = bits_[w];
            while (word) {
                std::uint64_t idx = w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(word));
                word &= word - 1;
                if (idx < first)
                    continue;
                if (idx > last)
                    return;
                fn(2 * idx + 1);
            }
        }
    }

    /// Writes the cache file: u64 limit (LE) followed by ceil((limit+1)/8)
    /// bytes, bit n of the stream set iff n is prime.
    void save(const std::filesystem::path& path) const;

    /// Loads a cache file. Returns nullopt when the file is missing,
    /// truncated, or was built for a different limit.
    static std::optional<SieveTable> load(const std::filesystem::path& path,
                                          std::uint64_t expected_limit);

    friend bool operator==(const SieveTable& a, const SieveTable& b) {
        return a.limit_ == b.limit_ && a.bits_ == b.bits_;
    }

private:
    SieveTable() = default;
    void build_counts();

    std::uint64_t limit_ = 0;
    std::uint64_t total_ = 0;
    std::vector<std::uint64_t> bits_;         // bit i <-> odd integer 2i+1
    std::vector<std::uint32_t> block_counts_; // odd primes before each 8-word block
};

SieveTable sieve(std::uint64_t limit);

std::uint64_t prime_count(const SieveTable& table, std::uint64_t n);

/// Deterministic primality for all 64-bit n (Miller-Rabin, fixed witnesses).
bool is_prime(std::uint64_t n);

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    std::uint64_t n = 1;
    std::vector<PrimePower> factors;  // increasing prime order

    /// Reassembles the product; overflow is impossible for valid factorizations.
    std::uint64_t product() const;

    std::vector<std::uint64_t> distinct_primes() const;
};

/// Complete factorization of 1 <= n <= 2^63. Throws DomainError for n = 0,
/// BoundsError above 2^63. Uses trial division below 10^6 and Pollard-Brent
/// (fixed seed) above.
Factorization factorize(std::uint64_t n);

}  // namespace primeset::primes
