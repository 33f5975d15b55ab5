#include "primeset/polyarith.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "poly_modp.hpp"
#include "primeset/errors.hpp"
#include "primeset/primes.hpp"

namespace primeset::poly {

IntPoly::IntPoly(std::vector<BigInt> ascending) : coeffs_(std::move(ascending)) {
    normalize();
}

IntPoly::IntPoly(std::initializer_list<long long> ascending) {
    coeffs_.reserve(ascending.size());
    for (long long c : ascending)
        coeffs_.emplace_back(c);
    normalize();
}

void IntPoly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

IntPoly IntPoly::parse(std::string_view text) {
    std::vector<BigInt> coeffs;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t comma = text.find(',', pos);
        std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front())))
            tok.remove_prefix(1);
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back())))
            tok.remove_suffix(1);
        std::string_view digits = tok;
        if (!digits.empty() && (digits.front() == '-' || digits.front() == '+'))
            digits.remove_prefix(1);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                           [](char c) { return c >= '0' && c <= '9'; }))
            throw ParseError("bad polynomial coefficient '" + std::string(tok) + "' in \"" +
                             std::string(text) + "\"");
        const BigInt v{std::string(digits)};
        coeffs.push_back(tok.front() == '-' ? BigInt(-v) : v);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return IntPoly(std::move(coeffs));
}

IntPoly IntPoly::x_pow_minus_one(unsigned n) {
    std::vector<BigInt> c(n + 1, 0);
    c[0] = -1;
    c[n] += 1;
    return IntPoly(std::move(c));
}

const BigInt& IntPoly::leading() const {
    if (coeffs_.empty())
        throw DomainError("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

const BigInt& IntPoly::coeff(std::size_t i) const {
    static const BigInt zero = 0;
    return i < coeffs_.size() ? coeffs_[i] : zero;
}

IntPoly IntPoly::derivative() const {
    if (coeffs_.size() <= 1)
        return {};
    std::vector<BigInt> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = coeffs_[i] * static_cast<unsigned long long>(i);
    return IntPoly(std::move(d));
}

BigInt IntPoly::evaluate(const BigInt& x) const {
    BigInt acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;)
        acc = acc * x + coeffs_[i];
    return acc;
}

std::uint64_t mod_u64(const BigInt& v, std::uint64_t p) {
    BigInt r = v % p;
    if (r < 0)
        r += p;
    return r.convert_to<std::uint64_t>();
}

std::vector<std::uint64_t> IntPoly::reduce_mod(std::uint64_t p) const {
    std::vector<std::uint64_t> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        out[i] = mod_u64(coeffs_[i], p);
    modp::trim(out);
    return out;
}

std::string IntPoly::to_csv() const {
    if (coeffs_.empty())
        return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i)
            os << ',';
        os << coeffs_[i];
    }
    return os.str();
}

std::string IntPoly::pretty() const {
    if (coeffs_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const BigInt& c = coeffs_[i];
        if (c == 0)
            continue;
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (mag != 1 || i == 0)
            os << mag;
        if (i >= 1)
            os << 'x';
        if (i >= 2)
            os << '^' << i;
    }
    return os.str();
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
        c[i] += b.coeffs_[i];
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
        c[i] -= b.coeffs_[i];
    return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPoly(std::move(c));
}

IntPoly exact_divide(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero())
        throw DomainError("exact_divide: division by the zero polynomial");
    if (a.is_zero())
        return {};
    const auto ac = a.coefficients();
    std::vector<BigInt> rem(ac.begin(), ac.end());
    const auto bc = b.coefficients();
    const std::size_t db = bc.size() - 1;
    if (rem.size() < bc.size())
        throw DomainError("exact_divide: divisor does not divide dividend");
    std::vector<BigInt> q(rem.size() - db, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        BigInt quot, r;
        boost::multiprecision::divide_qr(rem[k + db], bc.back(), quot, r);
        if (r != 0)
            throw DomainError("exact_divide: divisor does not divide dividend");
        q[k] = quot;
        if (quot != 0)
            for (std::size_t i = 0; i <= db; ++i)
                rem[k + i] -= quot * bc[i];
    }
    if (std::any_of(rem.begin(), rem.end(), [](const BigInt& v) { return v != 0; }))
        throw DomainError("exact_divide: divisor does not divide dividend");
    return IntPoly(std::move(q));
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0)
        throw DomainError("euler_phi: n must be positive");
    std::uint64_t phi = n;
    for (const auto& f : primes::factorize(n).factors)
        phi = phi / f.prime * (f.prime - 1);
    return phi;
}

namespace {

int mobius(std::uint64_t n) {
    int mu = 1;
    for (const auto& f : primes::factorize(n).factors) {
        if (f.exponent > 1)
            return 0;
        mu = -mu;
    }
    return mu;
}

// c <- c * (x^d - 1)
void multiply_binomial(std::vector<BigInt>& c, unsigned d) {
    c.resize(c.size() + d, 0);
    for (std::size_t i = c.size(); i-- > 0;) {
        BigInt shifted = i >= d ? c[i - d] : BigInt(0);
        c[i] = shifted - c[i];
    }
}

// c <- c / (x^d - 1), which must be exact
void divide_binomial(std::vector<BigInt>& c, unsigned d) {
    const std::size_t qn = c.size() - d;
    std::vector<BigInt> q(qn);
    // c[i] = q[i-d] - q[i]  =>  q[i] = q[i-d] - c[i]
    for (std::size_t i = 0; i < qn; ++i)
        q[i] = (i >= d ? q[i - d] : BigInt(0)) - c[i];
    for (std::size_t i = qn; i < c.size(); ++i)
        if (c[i] != (i >= d ? q[i - d] : BigInt(0)))
            throw DomainError("cyclotomic: inexact division");
    c = std::move(q);
}

}  // namespace

IntPoly cyclotomic(unsigned n) {
    if (n < 1 || n > kMaxCyclotomicIndex)
        throw BoundsError("cyclotomic: n must lie in [1, 10000], got " + std::to_string(n));
    // Phi_n = prod_{d | n} (x^d - 1)^mu(n/d): multiply the mu = +1 binomials,
    // then divide out the mu = -1 ones. Every division is exact.
    std::vector<unsigned> up, down;
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d)
            continue;
        const int mu = mobius(n / d);
        if (mu > 0)
            up.push_back(d);
        else if (mu < 0)
            down.push_back(d);
    }
    std::vector<BigInt> c{1};
    for (unsigned d : up)
        multiply_binomial(c, d);
    for (unsigned d : down)
        divide_binomial(c, d);
    return IntPoly(std::move(c));
}

namespace {

/// Fraction-free Gaussian elimination (Bareiss); exact over Z.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    if (n == 0)
        return 1;
    BigInt sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0)
                ++r;
            if (r == n)
                return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

BigInt big_pow(const BigInt& b, unsigned e) {
    BigInt r = 1;
    for (unsigned i = 0; i < e; ++i)
        r *= b;
    return r;
}

}  // namespace

BigInt poly_resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero())
        throw DomainError("poly_resultant: zero polynomial");
    const int m = f.degree();
    const int n = g.degree();
    if (m == 0)
        return big_pow(f.coeff(0), static_cast<unsigned>(n));
    if (n == 0)
        return big_pow(g.coeff(0), static_cast<unsigned>(m));

    // Sylvester matrix, rows hold coefficients in descending order.
    const std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, 0));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i)
            s[r][r + i] = f.coeff(static_cast<std::size_t>(m - i));
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i)
            s[n + r][r + i] = g.coeff(static_cast<std::size_t>(n - i));
    return bareiss_determinant(std::move(s));
}

BigInt discriminant(const IntPoly& f) {
    const int n = f.degree();
    if (n < 1)
        throw DomainError("discriminant: polynomial must have degree >= 1");
    BigInt res = poly_resultant(f, f.derivative());
    if ((static_cast<long long>(n) * (n - 1) / 2) % 2 == 1)
        res = -res;
    return res / f.leading();
}

bool FactorType::all_linear() const {
    return squarefree_mod_p && std::all_of(degrees.begin(), degrees.end(), [](unsigned d) { return d == 1; });
}

unsigned FactorType::linear_factors() const {
    return static_cast<unsigned>(std::count(degrees.begin(), degrees.end(), 1u));
}

std::string FactorType::to_string() const {
    if (!squarefree_mod_p)
        return "not-squarefree";
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < degrees.size(); ++i)
        os << (i ? "," : "") << degrees[i];
    os << ')';
    return os.str();
}

namespace {

modp::Poly reduce_checked(const IntPoly& f, std::uint64_t p, const char* who) {
    if (f.is_zero())
        throw DomainError(std::string(who) + ": zero polynomial");
    if (p < 2)
        throw DomainError(std::string(who) + ": modulus must be prime");
    if (mod_u64(f.leading(), p) == 0)
        throw ExcludedPrime(std::string(who) + ": p = " + std::to_string(p) +
                            " divides the leading coefficient");
    return f.reduce_mod(p);
}

}  // namespace

FactorType factor_type_mod_p(const IntPoly& f, std::uint64_t p) {
    modp::Poly g = modp::make_monic(reduce_checked(f, p, "factor_type_mod_p"), p);
    FactorType ft;
    if (modp::degree(g) < 1)
        return ft;
    if (modp::degree(modp::gcd(g, modp::derivative(g, p), p)) > 0) {
        ft.squarefree_mod_p = false;
        return ft;
    }

    // Distinct-degree splitting: gcd(g, x^(p^d) - x) collects the degree-d factors.
    const modp::Poly x{0, 1};
    modp::Poly h = modp::x_pow_mod(p, g, p);  // x^(p^d) mod g for the current d
    for (unsigned d = 1; 2 * d <= static_cast<unsigned>(modp::degree(g)); ++d) {
        const modp::Poly common = modp::gcd(g, modp::sub(h, x, p), p);
        const int k = modp::degree(common);
        if (k > 0) {
            for (int i = 0; i < k / static_cast<int>(d); ++i)
                ft.degrees.push_back(d);
            modp::Poly q, r;
            modp::divmod(g, common, p, q, r);
            g = modp::make_monic(std::move(q), p);
            if (modp::degree(g) < 1)
                break;
        }
        h = modp::rem_monic(std::move(h), g, p);
        h = modp::pow_mod(std::move(h), p, g, p);
    }
    if (modp::degree(g) >= 1)
        ft.degrees.push_back(static_cast<unsigned>(modp::degree(g)));
    std::sort(ft.degrees.begin(), ft.degrees.end());
    return ft;
}

bool has_root_mod_p(const IntPoly& f, std::uint64_t p) {
    modp::Poly g = modp::make_monic(reduce_checked(f, p, "has_root_mod_p"), p);
    const int deg = modp::degree(g);
    if (deg < 1)
        return false;
    if (deg == 1)
        return true;
    const modp::Poly xp = modp::x_pow_mod(p, g, p);
    const modp::Poly common = modp::gcd(g, modp::sub(xp, {0, 1}, p), p);
    return modp::degree(common) >= 1;
}

bool splits_completely_mod_p(const IntPoly& f, std::uint64_t p) {
    return PrimeTester(f).splits_completely(p);
}

PrimeTester::PrimeTester(IntPoly f) : f_(std::move(f)) {
    if (f_.degree() < 1)
        throw DomainError("polynomial must have degree >= 1");
    disc_ = poly::discriminant(f_);
    bad_ = disc_ * f_.leading();
}

bool PrimeTester::ramified(std::uint64_t p) const {
    return mod_u64(bad_, p) == 0;
}

bool PrimeTester::splits_completely(std::uint64_t p) const {
    if (ramified(p))
        throw ExcludedPrime("splits_completely_mod_p: p = " + std::to_string(p) + " is ramified");
    return factor_type_mod_p(f_, p).all_linear();
}

}  // namespace primeset::poly
