#pragma once

// Density scans over primes <= N and the headline desk checks built on them.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "primeset/constraints.hpp"

namespace primeset::constraints {

struct Checkpoint {
    std::uint64_t bound = 0;
    std::uint64_t member_count = 0;
    std::uint64_t eligible = 0;  // primes <= bound not excluded by any spec

    double ratio() const noexcept {
        return eligible == 0 ? 0.0 : static_cast<double>(member_count) / static_cast<double>(eligible);
    }
    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct DensityReport {
    std::uint64_t bound = 0;
    std::uint64_t prime_count = 0;     // pi(N)
    std::uint64_t excluded_count = 0;  // primes <= N excluded by some spec
    std::uint64_t member_count = 0;
    double empirical_ratio = 0.0;      // member_count / (pi(N) - excluded_count)
    std::optional<Rational> predicted;
    std::vector<Checkpoint> checkpoints;
    std::vector<std::string> warnings;
    std::vector<std::uint64_t> members;  // filled only on request
};

struct ScanOptions {
    /// Multiply individual predictions into a joint one.
    bool assume_independent = true;
    /// Record every member prime in DensityReport::members.
    bool collect_members = false;
    /// Reuse a prebuilt table (its limit must be >= N); otherwise one is built.
    const primes::SieveTable* sieve = nullptr;
    /// Worker count; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// Counts primes p <= N lying In every spec; a prime Excluded by any spec is
/// dropped from numerator and denominator. Checkpoints must be sorted and <= N.
DensityReport scan(std::span<const ConstraintSpec> specs, std::uint64_t bound,
                   std::span<const std::uint64_t> checkpoints = {}, const ScanOptions& options = {});

struct FipResult {
    DensityReport report;
    bool pass = false;
};

/// PASS iff member counts strictly increase across >= 3 strictly increasing
/// checkpoints and the final count is positive.
FipResult fip_report(std::span<const ConstraintSpec> specs, std::span<const std::uint64_t> checkpoints,
                     const ScanOptions& options = {});

struct GermainResult {
    DensityReport report;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;  // (p, (p-1)/2)
};

/// Primes p <= N with (p-1)/2 prime, optionally restricted to p == 3 (mod 8).
GermainResult sophie_germain_scan(std::uint64_t bound, bool require_3_mod_8,
                                  std::span<const std::uint64_t> checkpoints = {}, const ScanOptions& options = {});

/// Primes p <= N, p not dividing m, for which m is a primitive root.
/// Throws DomainError for m in {0, 1, -1} or m a perfect square.
DensityReport artin_scan(std::int64_t m, std::uint64_t bound, std::span<const std::uint64_t> checkpoints = {},
                         const ScanOptions& options = {});

struct DedekindRow {
    groups::CycleType type;
    std::uint64_t count = 0;
    Rational empirical;
    Rational predicted;
};

struct DedekindResult {
    std::uint64_t bound = 0;
    std::uint64_t primes_used = 0;       // unramified primes tallied
    std::uint64_t ramified_skipped = 0;
    std::vector<DedekindRow> rows;       // union of observed and predicted types
    double linf = 0.0;
};

/// Factorization-type frequencies of f over unramified p <= N against the
/// model's cycle-type distribution. Throws DomainError on a degree mismatch.
DedekindResult dedekind_compare(const IntPoly& f, const GroupModel& model, std::uint64_t bound,
                                const ScanOptions& options = {});

}  // namespace primeset::constraints
