#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "primeset/errors.hpp"
#include "primeset/primes.hpp"

using namespace primeset;
using primes::SieveTable;

TEST_SUITE("primes") {

TEST_CASE("sieve of 10 holds exactly 2, 3, 5, 7") {
    const auto t = primes::sieve(10);
    CHECK(t.primes_up_to(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(t.count() == 4);
}

TEST_CASE("sieve limit bounds") {
    CHECK_THROWS_AS(primes::sieve(1), BoundsError);
    CHECK_THROWS_AS(primes::sieve(0), BoundsError);
    CHECK_THROWS_AS(primes::sieve(primes::kMaxSieveLimit + 1), BoundsError);
    CHECK_NOTHROW(primes::sieve(2));
    CHECK(primes::sieve(2).count() == 1);
    CHECK(primes::sieve(3).count() == 2);
}

TEST_CASE("sieve agrees with trial division below 10^4") {
    const auto t = primes::sieve(10'000);
    for (std::uint64_t n = 0; n <= 10'000; ++n)
        REQUIRE_MESSAGE(t.is_prime(n) == oracle::trial_prime(n), "n = " << n);
    CHECK_THROWS_AS(t.is_prime(10'001), BoundsError);
}

TEST_CASE("prime_count values and monotonicity") {
    const auto t = primes::sieve(1'000'000);
    CHECK(primes::prime_count(t, 100) == 25);
    CHECK(primes::prime_count(t, 2) == 1);
    CHECK(primes::prime_count(t, 1) == 0);
    // Independent count by trial division.
    std::uint64_t brute = 0;
    for (std::uint64_t n = 2; n <= 1'000'000; ++n)
        brute += oracle::trial_prime(n);
    CHECK(brute == 78498);
    CHECK(primes::prime_count(t, 1'000'000) == brute);
    CHECK(t.count() == brute);
    CHECK_THROWS_AS(primes::prime_count(t, 1'000'001), BoundsError);

    std::uint64_t prev = 0;
    for (std::uint64_t n = 0; n <= 20'000; ++n) {
        const auto c = primes::prime_count(t, n);
        REQUIRE(c >= prev);
        prev = c;
    }
}

TEST_CASE("for_each_prime respects both ends of the range") {
    const auto t = primes::sieve(200);
    CHECK(t.primes_in(3, 3) == std::vector<std::uint64_t>{3});
    CHECK(t.primes_in(4, 12) == std::vector<std::uint64_t>{5, 7, 11});
    CHECK(t.primes_in(14, 16).empty());
    CHECK(t.primes_in(190, 1000) == std::vector<std::uint64_t>{191, 193, 197, 199});
    CHECK(t.primes_in(127, 131) == std::vector<std::uint64_t>{127, 131});
}

TEST_CASE("segment boundaries do not lose primes") {
    // Several segments of 2^18 odd numbers each.
    const std::uint64_t n = 3'000'000;
    const auto t = primes::sieve(n);
    CHECK(t.count() == 216'816);
    // Spot-check around the first segment edge (index 262144 <-> 524289).
    for (std::uint64_t k = 524'000; k <= 525'000; ++k)
        REQUIRE(t.is_prime(k) == oracle::trial_prime(k));
}

TEST_CASE("deterministic is_prime matches trial division and known primes") {
    for (std::uint64_t n = 0; n < 100'000; ++n)
        REQUIRE(primes::is_prime(n) == oracle::trial_prime(n));
    CHECK(primes::is_prime(2'305'843'009'213'693'951ULL));       // 2^61 - 1
    CHECK(primes::is_prime(18'446'744'073'709'551'557ULL));      // largest 64-bit prime
    CHECK_FALSE(primes::is_prime(3'215'031'751ULL));             // strong pseudoprime to 2,3,5,7
    CHECK_FALSE(primes::is_prime(3'825'123'056'546'413'051ULL)); // spsp to bases 2..23
}

TEST_CASE("factorize examples") {
    CHECK(primes::factorize(12).factors == std::vector<primes::PrimePower>{{2, 2}, {3, 1}});
    CHECK(primes::factorize(1).factors.empty());
    const auto m61 = primes::factorize(2'305'843'009'213'693'951ULL);
    CHECK(m61.factors == std::vector<primes::PrimePower>{{2'305'843'009'213'693'951ULL, 1}});
    CHECK_THROWS_AS(primes::factorize(0), DomainError);
    CHECK_THROWS_AS(primes::factorize((std::uint64_t{1} << 63) + 1), BoundsError);
    // Product of two primes above the trial-division bound.
    const auto semi = primes::factorize(1'000'003ULL * 1'000'033ULL);
    CHECK(semi.factors == std::vector<primes::PrimePower>{{1'000'003, 1}, {1'000'033, 1}});
    const auto square = primes::factorize(2'147'483'647ULL * 2'147'483'647ULL);
    CHECK(square.factors == std::vector<primes::PrimePower>{{2'147'483'647ULL, 2}});
    CHECK(primes::factorize(std::uint64_t{1} << 63).factors == std::vector<primes::PrimePower>{{2, 63}});
}

TEST_CASE("factorize reassembles random inputs up to 10^12") {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::uint64_t> dist(1, 1'000'000'000'000ULL);
    for (int i = 0; i < 10'000; ++i) {
        const std::uint64_t n = dist(rng);
        const auto f = primes::factorize(n);
        REQUIRE(f.product() == n);
        for (std::size_t k = 0; k < f.factors.size(); ++k) {
            REQUIRE(primes::is_prime(f.factors[k].prime));
            if (k > 0)
                REQUIRE(f.factors[k].prime > f.factors[k - 1].prime);
        }
    }
}

TEST_CASE("sieve cache round trip and invalidation") {
    const auto dir = std::filesystem::temp_directory_path() / "primeset_cache_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "sieve.bin";
    const auto t = primes::sieve(100'000);
    t.save(path);

    // 8-byte header plus ceil((limit+1)/8) bytes.
    CHECK(std::filesystem::file_size(path) == 8 + (100'001 + 7) / 8);
    std::ifstream is(path, std::ios::binary);
    unsigned char head[10];
    is.read(reinterpret_cast<char*>(head), 10);
    CHECK(head[0] == (100'000 & 0xFF));
    CHECK(head[1] == ((100'000 >> 8) & 0xFF));
    CHECK(head[2] == ((100'000 >> 16) & 0xFF));
    CHECK(head[8] == 0b10101100);  // bits 2, 3, 5, 7

    const auto loaded = SieveTable::load(path, 100'000);
    REQUIRE(loaded.has_value());
    CHECK(*loaded == t);
    CHECK(loaded->count() == t.count());
    CHECK_FALSE(SieveTable::load(path, 99'999).has_value());
    CHECK_FALSE(SieveTable::load(dir / "missing.bin", 100'000).has_value());

    std::filesystem::resize_file(path, 100);
    CHECK_FALSE(SieveTable::load(path, 100'000).has_value());
    std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
