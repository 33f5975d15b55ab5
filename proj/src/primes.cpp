#include "primeset/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <random>
#include <string>

#include "primeset/arith.hpp"
#include "primeset/errors.hpp"

namespace primeset::primes {

using arith::mul_mod;
using arith::pow_mod;

namespace {

constexpr std::uint64_t kWordsPerBlock = 8;
constexpr std::uint64_t kSegmentWords = 4096;  // 32 KiB of bits, 512 Ki odd numbers

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

/// Odd primes up to n by a plain byte sieve; only used for the base primes.
std::vector<std::uint32_t> small_odd_primes(std::uint64_t n) {
    std::vector<std::uint32_t> out;
    if (n < 3)
        return out;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 3; i * i <= n; i += 2)
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= n; j += 2 * i)
                composite[j] = true;
    for (std::uint64_t i = 3; i <= n; i += 2)
        if (!composite[i])
            out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

}  // namespace

SieveTable::SieveTable(std::uint64_t limit) : limit_(limit) {
    if (limit < 2 || limit > kMaxSieveLimit)
        throw BoundsError("sieve limit must lie in [2, 2^32], got " + std::to_string(limit));

    // Odd integers 1, 3, ..., up to limit; index i <-> 2i+1.
    const std::uint64_t odd_count = (limit - 1) / 2 + 1;
    const std::uint64_t words = (odd_count + 63) / 64;
    bits_.assign(words, ~std::uint64_t{0});

    const auto base = small_odd_primes(isqrt(limit));
    std::vector<std::uint64_t> next(base.size());  // next odd-index to strike per base prime
    for (std::size_t k = 0; k < base.size(); ++k)
        next[k] = (std::uint64_t{base[k]} * base[k]) / 2;

    for (std::uint64_t w0 = 0; w0 < words; w0 += kSegmentWords) {
        const std::uint64_t w1 = std::min(words, w0 + kSegmentWords);
        const std::uint64_t hi_idx = w1 * 64;
        std::uint64_t* seg = bits_.data();
        for (std::size_t k = 0; k < base.size(); ++k) {
            const std::uint64_t q = base[k];
            std::uint64_t j = next[k];
            for (; j < hi_idx; j += q)
                seg[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
            next[k] = j;
        }
    }

    bits_[0] &= ~std::uint64_t{1};  // 1 is not prime
    const std::uint64_t tail = odd_count % 64;
    if (tail != 0)
        bits_.back() &= (std::uint64_t{1} << tail) - 1;

    build_counts();
}

void SieveTable::build_counts() {
    const std::uint64_t blocks = (bits_.size() + kWordsPerBlock - 1) / kWordsPerBlock;
    block_counts_.assign(blocks + 1, 0);
    std::uint64_t running = 0;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        block_counts_[b] = static_cast<std::uint32_t>(running);
        const std::uint64_t end = std::min<std::uint64_t>(bits_.size(), (b + 1) * kWordsPerBlock);
        for (std::uint64_t w = b * kWordsPerBlock; w < end; ++w)
            running += static_cast<std::uint64_t>(std::popcount(bits_[w]));
    }
    block_counts_[blocks] = static_cast<std::uint32_t>(running);
    total_ = running + (limit_ >= 2 ? 1 : 0);
}

bool SieveTable::is_prime(std::uint64_t n) const {
    if (n > limit_)
        throw BoundsError("n = " + std::to_string(n) + " exceeds sieve limit " +
                          std::to_string(limit_));
    if (n == 2)
        return true;
    if (n < 2 || n % 2 == 0)
        return false;
    const std::uint64_t i = n / 2;
    return (bits_[i >> 6] >> (i & 63)) & 1;
}

std::uint64_t SieveTable::count_up_to(std::uint64_t n) const {
    if (n > limit_)
        throw BoundsError("n = " + std::to_string(n) + " exceeds sieve limit " +
                          std::to_string(limit_));
    if (n < 2)
        return 0;
    if (n < 3)
        return 1;
    const std::uint64_t last = (n - 1) / 2;  // highest odd index <= n
    const std::uint64_t word = last >> 6;
    const std::uint64_t block = word / kWordsPerBlock;
    std::uint64_t count = block_counts_[block];
    for (std::uint64_t w = block * kWordsPerBlock; w < word; ++w)
        count += static_cast<std::uint64_t>(std::popcount(bits_[w]));
    const unsigned shift = static_cast<unsigned>(last & 63);
    const std::uint64_t mask = shift == 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (shift + 1)) - 1);
    count += static_cast<std::uint64_t>(std::popcount(bits_[word] & mask));
    return count + 1;  // the prime 2
}

std::vector<std::uint64_t> SieveTable::primes_in(std::uint64_t lo, std::uint64_t hi) const {
    std::vector<std::uint64_t> out;
    for_each_prime(lo, hi, [&](std::uint64_t p) { out.push_back(p); });
    return out;
}

void SieveTable::save(const std::filesystem::path& path) const {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw std::runtime_error("cannot open sieve cache for writing: " + path.string());
    unsigned char header[8];
    for (int i = 0; i < 8; ++i)
        header[i] = static_cast<unsigned char>(limit_ >> (8 * i));
    os.write(reinterpret_cast<const char*>(header), 8);

    std::vector<unsigned char> bytes((limit_ + 1 + 7) / 8, 0);
    bytes[0] |= 1u << 2;
    for_each_prime(3, limit_, [&](std::uint64_t p) { bytes[p >> 3] |= static_cast<unsigned char>(1u << (p & 7)); });
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!os)
        throw std::runtime_error("failed writing sieve cache: " + path.string());
}

std::optional<SieveTable> SieveTable::load(const std::filesystem::path& path,
                                           std::uint64_t expected_limit) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        return std::nullopt;
    unsigned char header[8];
    if (!is.read(reinterpret_cast<char*>(header), 8))
        return std::nullopt;
    std::uint64_t limit = 0;
    for (int i = 0; i < 8; ++i)
        limit |= std::uint64_t{header[i]} << (8 * i);
    if (limit != expected_limit || limit < 2 || limit > kMaxSieveLimit)
        return std::nullopt;

    std::vector<unsigned char> bytes((limit + 1 + 7) / 8);
    if (!is.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size())))
        return std::nullopt;
    if (is.peek() != std::char_traits<char>::eof())
        return std::nullopt;

    SieveTable t;
    t.limit_ = limit;
    const std::uint64_t odd_count = (limit - 1) / 2 + 1;
    t.bits_.assign((odd_count + 63) / 64, 0);
    for (std::uint64_t n = 3; n <= limit; n += 2)
        if ((bytes[n >> 3] >> (n & 7)) & 1) {
            const std::uint64_t i = n / 2;
            t.bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
        }
    t.build_counts();
    return t;
}

SieveTable sieve(std::uint64_t limit) {
    return SieveTable(limit);
}

std::uint64_t prime_count(const SieveTable& table, std::uint64_t n) {
    return table.count_up_to(n);
}

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n == q)
            return true;
        if (n % q == 0)
            return false;
    }
    if (n < 41 * 41)
        return true;

    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // These twelve bases are deterministic for n < 3.3 * 10^24.
    for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

namespace {

constexpr std::uint64_t kTrialBound = 1'000'000;

/// Finds a nontrivial factor of an odd composite n via Brent's variant of
/// Pollard rho. The generator seed is fixed so results are reproducible.
std::uint64_t pollard_brent(std::uint64_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(1, n - 1);
    for (;;) {
        std::uint64_t y = dist(rng);
        const std::uint64_t c = dist(rng);
        const std::uint64_t m = 128;
        std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
        auto f = [&](std::uint64_t v) { return arith::add_mod(mul_mod(v, v, n), c, n); };
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = f(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void split_large(std::uint64_t n, std::vector<std::uint64_t>& out, std::mt19937_64& rng) {
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    const std::uint64_t d = pollard_brent(n, rng);
    split_large(d, out, rng);
    split_large(n / d, out, rng);
}

}  // namespace

Factorization factorize(std::uint64_t n) {
    if (n == 0)
        throw DomainError("factorize: n must be positive");
    if (n > kMaxFactorInput)
        throw BoundsError("factorize: n exceeds 2^63");

    Factorization result;
    result.n = n;
    auto push = [&](std::uint64_t p, unsigned e) { result.factors.push_back({p, e}); };

    std::uint64_t m = n;
    for (std::uint64_t p : {2u, 3u, 5u}) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e)
            push(p, e);
    }
    // Wheel mod 30 over candidates below the trial bound.
    static constexpr std::uint64_t kGaps[] = {4, 2, 4, 2, 4, 6, 2, 6};
    std::uint64_t p = 7;
    for (std::size_t gi = 0; p < kTrialBound && p * p <= m; p += kGaps[gi++ & 7]) {
        if (m % p)
            continue;
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        push(p, e);
    }
    if (m == 1)
        return result;
    if (p * p > m || is_prime(m)) {
        push(m, 1);
        return result;
    }

    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::vector<std::uint64_t> large;
    split_large(m, large, rng);
    std::sort(large.begin(), large.end());
    for (std::size_t i = 0; i < large.size();) {
        std::size_t j = i;
        while (j < large.size() && large[j] == large[i])
            ++j;
        push(large[i], static_cast<unsigned>(j - i));
        i = j;
    }
    return result;
}

std::uint64_t Factorization::product() const {
    std::uint64_t v = 1;
    for (const auto& [p, e] : factors)
        for (unsigned i = 0; i < e; ++i)
            v *= p;
    return v;
}

std::vector<std::uint64_t> Factorization::distinct_primes() const {
    std::vector<std::uint64_t> out;
    out.reserve(factors.size());
    for (const auto& f : factors)
        out.push_back(f.prime);
    return out;
}

}  // namespace primeset::primes
