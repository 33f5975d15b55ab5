#include "primeset/scans.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "primeset/errors.hpp"

namespace primeset::constraints {

namespace {

struct Tally {
    std::vector<std::uint64_t> members, excluded, primes;  // per bucket
    std::vector<std::uint64_t> member_list;

    explicit Tally(std::size_t buckets) : members(buckets, 0), excluded(buckets, 0), primes(buckets, 0) {}
};

void check_checkpoints(std::span<const std::uint64_t> checkpoints, std::uint64_t bound) {
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] > bound)
            throw DomainError("checkpoint " + std::to_string(checkpoints[i]) + " exceeds bound " +
                              std::to_string(bound));
        if (i > 0 && checkpoints[i] < checkpoints[i - 1])
            throw DomainError("checkpoints must be sorted ascending");
    }
}

std::optional<Rational> joint_prediction(std::span<const ConstraintSpec> specs, bool assume_independent,
                                         std::vector<std::string>& warnings) {
    const bool all_congruence = std::all_of(specs.begin(), specs.end(),
                                            [](const ConstraintSpec& s) { return s.is_congruence_expressible(); });
    if (all_congruence) {
        try {
            if (!crt_compatible(specs)) {
                warnings.push_back("congruence conditions are incompatible; joint prediction forced to 0");
                return Rational(0);
            }
        } catch (const BoundsError&) {
            warnings.push_back("lcm of moduli too large for a compatibility check");
        }
    }
    if (!assume_independent)
        return std::nullopt;
    Rational product = 1;
    for (const auto& s : specs) {
        auto d = predicted_density(s);
        if (!d)
            return std::nullopt;
        product *= *d;
    }
    return product;
}

}  // namespace

DensityReport scan(std::span<const ConstraintSpec> specs, std::uint64_t bound,
                   std::span<const std::uint64_t> checkpoints, const ScanOptions& options) {
    if (specs.empty())
        throw DomainError("scan: at least one constraint is required");
    if (bound < 2 || bound > primes::kMaxSieveLimit)
        throw BoundsError("scan: bound must lie in [2, 2^32], got " + std::to_string(bound));
    check_checkpoints(checkpoints, bound);

    std::optional<primes::SieveTable> owned;
    const primes::SieveTable* table = options.sieve;
    if (!table || table->limit() < bound) {
        owned.emplace(bound);
        table = &*owned;
    }

    // Bucket i holds primes in (edges[i-1], edges[i]]; the last edge is the bound.
    std::vector<std::uint64_t> edges(checkpoints.begin(), checkpoints.end());
    edges.push_back(bound);
    const std::size_t buckets = edges.size();

    unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    if (bound < (std::uint64_t{1} << 16))
        workers = 1;

    std::vector<Tally> tallies(workers, Tally(buckets));
    auto work = [&](unsigned w) {
        const std::uint64_t span_len = (bound - 1) / workers + 1;
        const std::uint64_t lo = 2 + w * span_len;
        const std::uint64_t hi = std::min(bound, lo + span_len - 1);
        if (lo > hi)
            return;
        Tally& t = tallies[w];
        std::size_t bi = static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), lo) - edges.begin());
        table->for_each_prime(lo, hi, [&](std::uint64_t p) {
            while (p > edges[bi])
                ++bi;
            ++t.primes[bi];
            for (const auto& s : specs)
                if (s.excluded().contains(p)) {
                    ++t.excluded[bi];
                    return;
                }
            for (const auto& s : specs)
                if (s.membership(p, table) != Membership::In)
                    return;
            ++t.members[bi];
            if (options.collect_members)
                t.member_list.push_back(p);
        });
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
    }

    // Block tallies merge by addition, so the result does not depend on scheduling.
    DensityReport r;
    r.bound = bound;
    std::uint64_t members = 0, excluded = 0, primes_seen = 0;
    for (std::size_t b = 0; b < buckets; ++b) {
        for (const auto& t : tallies) {
            members += t.members[b];
            excluded += t.excluded[b];
            primes_seen += t.primes[b];
        }
        if (b < checkpoints.size())
            r.checkpoints.push_back({edges[b], members, primes_seen - excluded});
    }
    r.prime_count = primes_seen;
    r.excluded_count = excluded;
    r.member_count = members;
    const std::uint64_t eligible = primes_seen - excluded;
    r.empirical_ratio = eligible == 0 ? 0.0 : static_cast<double>(members) / static_cast<double>(eligible);
    r.predicted = joint_prediction(specs, options.assume_independent, r.warnings);
    if (options.collect_members)
        for (const auto& t : tallies)
            r.members.insert(r.members.end(), t.member_list.begin(), t.member_list.end());
    return r;
}

FipResult fip_report(std::span<const ConstraintSpec> specs, std::span<const std::uint64_t> checkpoints,
                     const ScanOptions& options) {
    if (checkpoints.size() < 3)
        throw DomainError("fip_report: at least three checkpoints are required");
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1])
            throw DomainError("fip_report: checkpoints must be strictly increasing");
    FipResult result;
    result.report = scan(specs, checkpoints.back(), checkpoints, options);
    const auto& cps = result.report.checkpoints;
    bool increasing = true;
    for (std::size_t i = 1; i < cps.size(); ++i)
        increasing = increasing && cps[i].member_count > cps[i - 1].member_count;
    result.pass = increasing && cps.back().member_count > 0;
    return result;
}

GermainResult sophie_germain_scan(std::uint64_t bound, bool require_3_mod_8,
                                  std::span<const std::uint64_t> checkpoints, const ScanOptions& options) {
    GermainResult result;
    if (bound < 2) {
        result.report.bound = bound;
        return result;
    }
    std::vector<ConstraintSpec> specs{ConstraintSpec::sophie_germain()};
    if (require_3_mod_8)
        specs.push_back(ConstraintSpec::congruence(3, 8));
    ScanOptions opts = options;
    opts.collect_members = true;
    result.report = scan(specs, bound, checkpoints, opts);
    for (std::uint64_t p : result.report.members) {
        const std::uint64_t q = (p - 1) / 2;
        if (require_3_mod_8 && q % 4 != 1)
            result.report.warnings.push_back("q = " + std::to_string(q) + " is not 1 mod 4");
        result.pairs.emplace_back(p, q);
    }
    if (!options.collect_members)
        result.report.members.clear();
    return result;
}

DensityReport artin_scan(std::int64_t m, std::uint64_t bound, std::span<const std::uint64_t> checkpoints,
                         const ScanOptions& options) {
    if (m == 0 || m == 1 || m == -1)
        throw DomainError("artin_scan: m must not be 0, 1 or -1 (got " + std::to_string(m) + ")");
    if (m > 0) {
        const auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(m))));
        for (std::int64_t s = std::max<std::int64_t>(0, r - 1); s <= r + 1; ++s)
            if (s * s == m)
                throw DomainError("artin_scan: m = " + std::to_string(m) + " is a perfect square");
    }
    const ConstraintSpec spec = ConstraintSpec::primitive_root_of(m);
    return scan(std::span(&spec, 1), bound, checkpoints, options);
}

DedekindResult dedekind_compare(const IntPoly& f, const GroupModel& model, std::uint64_t bound,
                                const ScanOptions& options) {
    if (f.degree() < 1 || model.degree() != static_cast<unsigned>(f.degree()))
        throw DomainError("dedekind_compare: group " + model.name() + " acts on " + std::to_string(model.degree()) +
                          " points but the polynomial has degree " + std::to_string(f.degree()));
    if (bound < 2 || bound > primes::kMaxSieveLimit)
        throw BoundsError("dedekind_compare: bound must lie in [2, 2^32]");
    const poly::PrimeTester tester(f);
    if (tester.discriminant() == 0)
        throw DomainError("dedekind_compare: polynomial has a repeated factor");

    std::optional<primes::SieveTable> owned;
    const primes::SieveTable* table = options.sieve;
    if (!table || table->limit() < bound) {
        owned.emplace(bound);
        table = &*owned;
    }

    DedekindResult result;
    result.bound = bound;
    std::map<groups::CycleType, std::uint64_t> tally;
    table->for_each_prime(2, bound, [&](std::uint64_t p) {
        if (tester.ramified(p)) {
            ++result.ramified_skipped;
            return;
        }
        const auto ft = tester.factor_type(p);
        ++tally[groups::CycleType(ft.degrees)];
        ++result.primes_used;
    });

    const auto predicted = groups::predicted_factor_distribution(model);
    std::map<groups::CycleType, DedekindRow> rows;
    for (const auto& [type, prob] : predicted)
        rows[type] = DedekindRow{type, 0, Rational(0), prob};
    for (const auto& [type, count] : tally) {
        auto& row = rows[type];
        row.type = type;
        row.count = count;
        row.empirical = Rational(count, result.primes_used);
    }
    for (auto& [type, row] : rows) {
        const Rational diff = row.empirical - row.predicted;
        result.linf = std::max(result.linf, std::abs(diff.convert_to<double>()));
        result.rows.push_back(row);
    }
    return result;
}

}  // namespace primeset::constraints
