#include <doctest.h>

#include "oracles.hpp"
#include "primeset/coordinate.hpp"
#include "primeset/errors.hpp"
#include "primeset/scans.hpp"

using namespace primeset;
using namespace primeset::constraints;

namespace {

std::vector<ConstraintSpec> fip_subbase() {
    const std::vector<std::int64_t> ds{5, -4, 8};
    const std::vector<std::pair<IntPoly, GroupModel>> polys{{IntPoly{-1, -1, 0, 1}, GroupModel::symmetric(3)}};
    return build_subbase_G(12, ds, polys);
}

}  // namespace

TEST_SUITE("scans") {

TEST_CASE("single congruence scan") {
    const auto spec = ConstraintSpec::parse("cong 3 8");
    const std::vector<std::uint64_t> cps{1'000, 10'000};
    const auto r = scan(std::span(&spec, 1), 100'000, cps);
    CHECK(r.member_count == 2'409);
    CHECK(r.prime_count == 9'592);
    CHECK(r.excluded_count == 1);
    CHECK(r.empirical_ratio == doctest::Approx(2'409.0 / 9'591.0));
    CHECK(*r.predicted == Rational(1, 4));
    REQUIRE(r.checkpoints.size() == 2);
    CHECK(r.checkpoints[0].bound == 1'000);
    CHECK(r.checkpoints[0].eligible == 167);
    CHECK(r.warnings.empty());
}

TEST_CASE("scan matches a brute-force count for mixed constraints") {
    const std::vector<ConstraintSpec> specs{ConstraintSpec::parse("U 5"), ConstraintSpec::parse("T -8"),
                                            ConstraintSpec::parse("polynoroot -1,-1,0,1 S3")};
    std::uint64_t members = 0, eligible = 0;
    for (std::uint64_t p : oracle::trial_primes_up_to(20'000)) {
        if (p == 2 || p == 5 || p == 23)
            continue;
        ++eligible;
        const bool u5 = (p - 1) % 5 != 0;
        const bool t = oracle::brute_is_nonzero_square(-8, p);
        const bool noroot = !oracle::brute_has_root({-1, -1, 0, 1}, p);
        members += u5 && t && noroot;
    }
    const auto r = scan(specs, 20'000);
    CHECK(r.member_count == members);
    CHECK(r.prime_count - r.excluded_count == eligible);
    CHECK(*r.predicted == Rational(3, 4) * Rational(1, 2) * Rational(1, 3));
}

TEST_CASE("scan validation") {
    const auto spec = ConstraintSpec::parse("U 3");
    CHECK_THROWS_AS(scan({}, 100), DomainError);
    CHECK_THROWS_AS(scan(std::span(&spec, 1), 1), BoundsError);
    CHECK_THROWS_AS(scan(std::span(&spec, 1), primes::kMaxSieveLimit + 1), BoundsError);
    const std::vector<std::uint64_t> unsorted{50, 10};
    CHECK_THROWS_AS(scan(std::span(&spec, 1), 100, unsorted), DomainError);
    const std::vector<std::uint64_t> beyond{10, 200};
    CHECK_THROWS_AS(scan(std::span(&spec, 1), 100, beyond), DomainError);
}

TEST_CASE("incompatible congruences force a zero prediction") {
    const std::vector<ConstraintSpec> specs{ConstraintSpec::parse("U 4"), ConstraintSpec::parse("cong 1 4")};
    const auto r = scan(specs, 10'000);
    CHECK(r.member_count == 0);
    REQUIRE(r.predicted.has_value());
    CHECK(*r.predicted == 0);
    CHECK(r.warnings.size() == 1);
}

TEST_CASE("results do not depend on thread count or a shared sieve") {
    const auto specs = fip_subbase();
    const std::vector<std::uint64_t> cps{1'000, 77'777, 150'000};
    ScanOptions one;
    one.threads = 1;
    one.collect_members = true;
    ScanOptions many = one;
    many.threads = 7;
    const auto table = primes::sieve(300'000);
    ScanOptions shared = many;
    shared.sieve = &table;
    const auto a = scan(specs, 300'000, cps, one);
    const auto b = scan(specs, 300'000, cps, many);
    const auto c = scan(specs, 300'000, cps, shared);
    CHECK(a.member_count == b.member_count);
    CHECK(a.checkpoints == b.checkpoints);
    CHECK(a.members == b.members);
    CHECK(a.checkpoints == c.checkpoints);
    CHECK(a.members == c.members);
    CHECK(std::is_sorted(a.members.begin(), a.members.end()));
}

TEST_CASE("FIP report on the default subbase") {
    const auto specs = fip_subbase();
    const std::vector<std::uint64_t> cps{10'000, 100'000};
    const std::vector<std::uint64_t> three{1'000, 10'000, 100'000};
    const auto fip = fip_report(specs, three);
    CHECK(fip.pass);
    const auto& cp = fip.report.checkpoints;
    REQUIRE(cp.size() == 3);
    CHECK(cp[1].member_count == 18);
    CHECK(cp[2].member_count == 139);
    CHECK(cp[1].eligible == 1'223);
    CHECK(cp[2].eligible == 9'586);
    CHECK_THROWS_AS(fip_report(specs, cps), DomainError);
    const std::vector<std::uint64_t> flat{10, 10, 100};
    CHECK_THROWS_AS(fip_report(specs, flat), DomainError);
    // Membership of every listed prime is a conjunction of the defining tests.
    ScanOptions opts;
    opts.collect_members = true;
    const auto r = scan(specs, 10'000, {}, opts);
    for (std::uint64_t p : r.members) {
        for (std::uint64_t m = 3; m <= 12; ++m)
            REQUIRE((p - 1) % m != 0);
        REQUIRE(oracle::brute_is_nonzero_square(-8, p));
        for (std::int64_t d : {5, -4, 8})
            REQUIRE_FALSE(oracle::brute_is_nonzero_square(d, p));
        REQUIRE_FALSE(oracle::brute_has_root({-1, -1, 0, 1}, p));
    }
}

TEST_CASE("FIP fails when a condition set is empty") {
    const std::vector<ConstraintSpec> specs{ConstraintSpec::parse("U 3"), ConstraintSpec::parse("cyclo 3")};
    const std::vector<std::uint64_t> cps{100, 1'000, 10'000};
    const auto fip = fip_report(specs, cps);
    CHECK_FALSE(fip.pass);
    CHECK(*fip.report.predicted == 0);
}

TEST_CASE("Sophie Germain scans") {
    const std::vector<std::uint64_t> cps{10'000};
    const auto all = sophie_germain_scan(100'000, false, cps);
    CHECK(all.report.checkpoints[0].member_count == 115);
    CHECK(all.report.member_count == 670);
    CHECK(all.pairs.size() == 670);
    CHECK(all.pairs.front() == std::pair<std::uint64_t, std::uint64_t>{5, 2});
    CHECK(all.pairs[1] == std::pair<std::uint64_t, std::uint64_t>{7, 3});
    CHECK_FALSE(all.report.predicted.has_value());
    const auto mod8 = sophie_germain_scan(100'000, true, cps);
    CHECK(mod8.report.checkpoints[0].member_count == 52);
    CHECK(mod8.report.member_count == 334);
    CHECK(mod8.report.warnings.empty());
    for (const auto& [p, q] : mod8.pairs) {
        REQUIRE(p % 8 == 3);
        REQUIRE(q % 4 == 1);
        REQUIRE(oracle::trial_prime(q));
    }
    CHECK(mod8.report.members.empty());
    const auto tiny = sophie_germain_scan(1, false);
    CHECK(tiny.pairs.empty());
    CHECK(tiny.report.member_count == 0);
}

TEST_CASE("Artin scans") {
    ScanOptions opts;
    opts.collect_members = true;
    const auto r = artin_scan(2, 100, {}, opts);
    CHECK(r.members == std::vector<std::uint64_t>{3, 5, 11, 13, 19, 29, 37, 53, 59, 61, 67, 83});
    CHECK(r.excluded_count == 1);
    CHECK_FALSE(r.predicted.has_value());

    const std::vector<std::uint64_t> cps{10'000};
    const std::vector<std::pair<std::int64_t, std::pair<std::uint64_t, std::uint64_t>>> expected{
        {2, {470, 3'603}}, {3, {477, 3'629}}, {-2, {465, 3'612}},
        {-3, {551, 4'337}}, {5, {493, 3'794}}, {6, {470, 3'585}},
    };
    for (const auto& [m, counts] : expected) {
        const auto rep = artin_scan(m, 100'000, cps);
        CHECK_MESSAGE(rep.checkpoints[0].member_count == counts.first, "m = " << m);
        CHECK_MESSAGE(rep.member_count == counts.second, "m = " << m);
    }
    for (std::int64_t bad : {0, 1, -1, 4, 9, 144})
        CHECK_THROWS_AS(artin_scan(bad, 100), DomainError);
    CHECK_NOTHROW(artin_scan(-4, 100));
}

TEST_CASE("Dedekind comparison") {
    const auto d = dedekind_compare(IntPoly{-1, -1, 0, 1}, GroupModel::symmetric(3), 100'000);
    CHECK(d.ramified_skipped == 1);
    CHECK(d.primes_used == 9'591);
    REQUIRE(d.rows.size() == 3);
    std::uint64_t total = 0;
    Rational sum = 0;
    for (const auto& row : d.rows) {
        total += row.count;
        sum += row.empirical;
    }
    CHECK(total == d.primes_used);
    CHECK(sum == 1);
    CHECK(d.linf < 0.01);
    CHECK_THROWS_AS(dedekind_compare(IntPoly{-1, -1, 0, 1}, GroupModel::symmetric(4), 1'000), DomainError);
    CHECK_THROWS_AS(dedekind_compare(IntPoly{1, 2, 1}, GroupModel::symmetric(2), 1'000), DomainError);
    // A cyclic cubic with group C3 has no (2,1) primes at all.
    const auto c3 = dedekind_compare(IntPoly{1, -3, 0, 1}, GroupModel::parse("perms:2,3,1"), 20'000);
    for (const auto& row : c3.rows)
        if (row.type == groups::CycleType({2, 1}))
            CHECK(row.count == 0);
    CHECK(c3.linf < 0.03);
}

TEST_CASE("primitive root coordinates") {
    const auto w = gpru_coordinate(7, 5);
    CHECK(w.zeta == 3);
    CHECK(w.value == 5);
    CHECK(w.coprime);
    CHECK(w.primitive);
    CHECK(w.consistent());
    const auto w2 = gpru_coordinate(7, 2);
    CHECK_FALSE(w2.coprime);
    CHECK_FALSE(w2.primitive);
    CHECK_THROWS_AS(gpru_coordinate(7, 6), DomainError);
    CHECK_THROWS_AS(gpru_coordinate(2, 0), DomainError);
    CHECK_THROWS_AS(gpru_coordinate(9, 1), DomainError);

    const auto sweep = gpru_sweep(2'000);
    CHECK(sweep.pass());
    CHECK(sweep.primes_checked == 302);
    CHECK_FALSE(sweep.first_counterexample.has_value());
    CHECK(gpru_sweep(2).primes_checked == 0);

    for (std::uint64_t p : oracle::trial_primes_up_to(5'000)) {
        if (p == 2)
            continue;
        REQUIRE(eta_nu_check(p));
        if (p % 4 == 1) {
            const auto s = sqrt_minus_one(p);
            REQUIRE(oracle::mulmod(s.value(), s.value(), p) == p - 1);
        } else {
            REQUIRE_THROWS_AS(sqrt_minus_one(p), DomainError);
        }
    }
    CHECK_THROWS_AS(eta_nu_check(2), DomainError);
    CHECK_THROWS_AS(eta_nu_check(15), DomainError);
    CHECK_THROWS_AS(sqrt_minus_one(21), DomainError);
}

}  // TEST_SUITE
