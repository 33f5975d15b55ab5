#include "primeset/constraints.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <cmath>
#include <numeric>
#include <sstream>

#include "primeset/arith.hpp"
#include "primeset/errors.hpp"
#include "primeset/modular.hpp"

namespace primeset::constraints {

namespace {

std::uint64_t magnitude(std::int64_t v) {
    return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

bool is_perfect_square(std::int64_t v) {
    if (v < 0)
        return false;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v)
        --r;
    while ((r + 1) * (r + 1) <= v)
        ++r;
    return r * r == v;
}

bool is_squarefree(std::uint64_t n) {
    if (n == 0)
        return false;
    for (const auto& f : primes::factorize(n).factors)
        if (f.exponent > 1)
            return false;
    return true;
}

}  // namespace

std::string_view to_string(Membership m) {
    switch (m) {
    case Membership::In:
        return "In";
    case Membership::Out:
        return "Out";
    case Membership::Excluded:
        return "Excluded";
    }
    return "?";
}

ExcludedSet::ExcludedSet(BigInt bad) : bad_(std::move(bad)) {
    if (bad_ == 0)
        throw DomainError("excluded set: every prime divides zero");
    if (bad_ < 0)
        bad_ = -bad_;
    small_ = bad_ <= std::numeric_limits<std::uint64_t>::max() ? bad_.convert_to<std::uint64_t>() : 0;
}

bool ExcludedSet::contains(std::uint64_t p) const {
    if (small_ != 0)
        return small_ % p == 0;
    return poly::mod_u64(bad_, p) == 0;
}

std::vector<std::uint64_t> ExcludedSet::primes_up_to(std::uint64_t bound) const {
    std::vector<std::uint64_t> out;
    if (small_ != 0 && small_ <= primes::kMaxFactorInput) {
        for (const auto& f : primes::factorize(small_).factors)
            if (f.prime <= bound)
                out.push_back(f.prime);
        return out;
    }
    for (std::uint64_t n = 2; n <= bound; ++n)
        if (primes::is_prime(n) && contains(n))
            out.push_back(n);
    return out;
}

ConstraintSpec ConstraintSpec::cyclotomic_non_split(std::uint64_t m) {
    if (m < 3)
        throw DomainError("U_m requires m >= 3, got " + std::to_string(m));
    ConstraintSpec s(Variant::CyclotomicNonSplit);
    s.modulus_ = m;
    s.excluded_ = ExcludedSet(BigInt(m));
    return s;
}

ConstraintSpec ConstraintSpec::cyclotomic_has_root(std::uint64_t m) {
    if (m < 1)
        throw DomainError("cyclotomic index must be positive");
    ConstraintSpec s(Variant::CyclotomicHasRoot);
    s.modulus_ = m;
    s.excluded_ = ExcludedSet(BigInt(m));
    return s;
}

ConstraintSpec ConstraintSpec::quad_has_root(std::int64_t d) {
    if (d == 0)
        throw DomainError("quadratic constraint requires D != 0");
    ConstraintSpec s(Variant::QuadHasRoot);
    s.param_ = d;
    s.excluded_ = ExcludedSet(BigInt(2) * d);
    return s;
}

ConstraintSpec ConstraintSpec::quad_no_root(std::int64_t d) {
    ConstraintSpec s = quad_has_root(d);
    s.variant_ = Variant::QuadNoRoot;
    return s;
}

ConstraintSpec ConstraintSpec::polynomial_variant(Variant v, IntPoly f, std::optional<GroupModel> model) {
    if (f.degree() < 1)
        throw DomainError("polynomial constraint requires degree >= 1");
    if (model && model->degree() != static_cast<unsigned>(f.degree()))
        throw DomainError("group model " + model->name() + " has degree " + std::to_string(model->degree()) +
                          " but polynomial has degree " + std::to_string(f.degree()));
    auto tester = std::make_shared<const poly::PrimeTester>(std::move(f));
    if (tester->discriminant() == 0)
        throw DomainError("polynomial " + tester->poly().pretty() + " has a repeated factor (discriminant 0)");
    ConstraintSpec s(v);
    s.excluded_ = ExcludedSet(tester->discriminant() * tester->poly().leading());
    s.poly_ = std::move(tester);
    s.model_ = std::move(model);
    return s;
}

ConstraintSpec ConstraintSpec::poly_no_root(IntPoly f, std::optional<GroupModel> model) {
    return polynomial_variant(Variant::PolyNoRoot, std::move(f), std::move(model));
}

ConstraintSpec ConstraintSpec::poly_splits_completely(IntPoly f, std::optional<GroupModel> model) {
    return polynomial_variant(Variant::PolySplitsCompletely, std::move(f), std::move(model));
}

ConstraintSpec ConstraintSpec::poly_has_root(IntPoly f, std::optional<GroupModel> model) {
    return polynomial_variant(Variant::PolyHasRoot, std::move(f), std::move(model));
}

ConstraintSpec ConstraintSpec::congruence(std::int64_t a, std::uint64_t m) {
    if (m < 1)
        throw DomainError("congruence modulus must be positive");
    const std::uint64_t r = arith::reduce_signed(a, m);
    if (std::gcd(r, m) != 1)
        throw DomainError("congruence residue " + std::to_string(a) + " is not coprime to " + std::to_string(m));
    ConstraintSpec s(Variant::Congruence);
    s.modulus_ = m;
    s.param_ = static_cast<std::int64_t>(r);
    s.excluded_ = ExcludedSet(BigInt(m));
    return s;
}

ConstraintSpec ConstraintSpec::sophie_germain() {
    return ConstraintSpec(Variant::SophieGermain);
}

ConstraintSpec ConstraintSpec::primitive_root_of(std::int64_t m) {
    if (m == 0)
        throw DomainError("primitive root constraint requires m != 0");
    ConstraintSpec s(Variant::PrimitiveRootOf);
    s.param_ = m;
    s.excluded_ = ExcludedSet(BigInt(m));
    return s;
}

const IntPoly* ConstraintSpec::polynomial() const noexcept {
    return poly_ ? &poly_->poly() : nullptr;
}

bool ConstraintSpec::is_polynomial() const noexcept {
    return variant_ == Variant::PolyNoRoot || variant_ == Variant::PolySplitsCompletely ||
           variant_ == Variant::PolyHasRoot;
}

bool ConstraintSpec::is_congruence_expressible() const noexcept {
    switch (variant_) {
    case Variant::CyclotomicNonSplit:
    case Variant::CyclotomicHasRoot:
    case Variant::QuadHasRoot:
    case Variant::QuadNoRoot:
    case Variant::Congruence:
        return true;
    default:
        return false;
    }
}

std::string ConstraintSpec::label() const {
    switch (variant_) {
    case Variant::CyclotomicNonSplit:
        return "U_" + std::to_string(modulus_);
    case Variant::CyclotomicHasRoot:
        return "CycRoot_" + std::to_string(modulus_);
    case Variant::QuadHasRoot:
        return "T_" + std::to_string(param_);
    case Variant::QuadNoRoot:
        return "Tbar_" + std::to_string(param_);
    case Variant::PolyNoRoot:
        return "PolyNoRoot[" + poly_->poly().pretty() + "]";
    case Variant::PolySplitsCompletely:
        return "PolySplit[" + poly_->poly().pretty() + "]";
    case Variant::PolyHasRoot:
        return "PolyRoot[" + poly_->poly().pretty() + "]";
    case Variant::Congruence:
        return "Cong(" + std::to_string(param_) + " mod " + std::to_string(modulus_) + ")";
    case Variant::SophieGermain:
        return "SG";
    case Variant::PrimitiveRootOf:
        return "PrimRoot(" + std::to_string(param_) + ")";
    }
    return "?";
}

std::string ConstraintSpec::to_line() const {
    auto with_model = [&](std::string head) {
        head += " " + poly_->poly().to_csv();
        if (model_)
            head += " " + model_->name();
        return head;
    };
    switch (variant_) {
    case Variant::CyclotomicNonSplit:
        return "U " + std::to_string(modulus_);
    case Variant::CyclotomicHasRoot:
        return "cyclo " + std::to_string(modulus_);
    case Variant::QuadHasRoot:
        return "T " + std::to_string(param_);
    case Variant::QuadNoRoot:
        return "Tbar " + std::to_string(param_);
    case Variant::PolyNoRoot:
        return with_model("polynoroot");
    case Variant::PolySplitsCompletely:
        return with_model("polysplit");
    case Variant::PolyHasRoot:
        return with_model("polyroot");
    case Variant::Congruence:
        return "cong " + std::to_string(param_) + " " + std::to_string(modulus_);
    case Variant::SophieGermain:
        return "sg";
    case Variant::PrimitiveRootOf:
        return "proot " + std::to_string(param_);
    }
    return "";
}

Membership ConstraintSpec::membership(std::uint64_t p, const primes::SieveTable* table) const {
    if (p < 2)
        throw DomainError("membership: " + std::to_string(p) + " is not prime");
    if (excluded_.contains(p))
        return Membership::Excluded;
    bool in = false;
    switch (variant_) {
    case Variant::CyclotomicNonSplit:
        in = (p - 1) % modulus_ != 0;
        break;
    case Variant::CyclotomicHasRoot:
        in = (p - 1) % modulus_ == 0;
        break;
    case Variant::QuadHasRoot:
    case Variant::QuadNoRoot: {
        // p is odd and coprime to D here; (D|p) = 1 iff x^2 - D has a zero.
        const bool root = modular::kronecker(param_, static_cast<std::int64_t>(p)) == 1;
        in = (variant_ == Variant::QuadHasRoot) == root;
        break;
    }
    case Variant::PolyNoRoot:
        in = !poly_->has_root(p);
        break;
    case Variant::PolySplitsCompletely:
        in = poly_->factor_type(p).all_linear();
        break;
    case Variant::PolyHasRoot:
        in = poly_->has_root(p);
        break;
    case Variant::Congruence:
        in = p % modulus_ == static_cast<std::uint64_t>(param_);
        break;
    case Variant::SophieGermain: {
        const std::uint64_t q = (p - 1) / 2;
        in = table && q <= table->limit() ? table->is_prime(q) : primes::is_prime(q);
        break;
    }
    case Variant::PrimitiveRootOf:
        in = modular::is_primitive_root(arith::reduce_signed(param_, p), p);
        break;
    }
    return in ? Membership::In : Membership::Out;
}

Membership membership(const ConstraintSpec& spec, std::uint64_t p) {
    return spec.membership(p);
}

namespace {

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
            ++j;
        if (j > i)
            out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::string lower(std::string s) {
    for (auto& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

template <class Int>
Int parse_int(const std::string& tok, std::string_view line) {
    Int v{};
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (!tok.empty() && tok[0] == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("bad integer '" + tok + "' in constraint \"" + std::string(line) + "\"");
    return v;
}

}  // namespace

ConstraintSpec ConstraintSpec::parse(std::string_view line) {
    const auto tok = split_ws(line);
    if (tok.empty())
        throw ParseError("empty constraint");
    const std::string kw = lower(tok[0]);
    auto expect_args = [&](std::size_t lo, std::size_t hi) {
        if (tok.size() - 1 < lo || tok.size() - 1 > hi)
            throw ParseError("constraint '" + tok[0] + "' takes " +
                             (lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi)) +
                             " argument(s): \"" + std::string(line) + "\"");
    };
    try {
        if (kw == "u") {
            expect_args(1, 1);
            return cyclotomic_non_split(parse_int<std::uint64_t>(tok[1], line));
        }
        if (kw == "cyclo") {
            expect_args(1, 1);
            return cyclotomic_has_root(parse_int<std::uint64_t>(tok[1], line));
        }
        if (kw == "t") {
            expect_args(1, 1);
            return quad_has_root(parse_int<std::int64_t>(tok[1], line));
        }
        if (kw == "tbar") {
            expect_args(1, 1);
            return quad_no_root(parse_int<std::int64_t>(tok[1], line));
        }
        if (kw == "polynoroot" || kw == "polysplit" || kw == "polyroot") {
            expect_args(1, 2);
            IntPoly f = IntPoly::parse(tok[1]);
            std::optional<GroupModel> model;
            if (tok.size() == 3)
                model = GroupModel::parse(tok[2]);
            if (kw == "polynoroot")
                return poly_no_root(std::move(f), std::move(model));
            if (kw == "polysplit")
                return poly_splits_completely(std::move(f), std::move(model));
            return poly_has_root(std::move(f), std::move(model));
        }
        if (kw == "cong") {
            expect_args(2, 2);
            return congruence(parse_int<std::int64_t>(tok[1], line), parse_int<std::uint64_t>(tok[2], line));
        }
        if (kw == "sg") {
            expect_args(0, 0);
            return sophie_germain();
        }
        if (kw == "proot") {
            expect_args(1, 1);
            return primitive_root_of(parse_int<std::int64_t>(tok[1], line));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string(e.what()) + " in constraint \"" + std::string(line) + "\"");
    }
    throw ParseError("unknown constraint '" + tok[0] + "'");
}

std::vector<ConstraintSpec> parse_constraint_file(std::string_view text) {
    std::vector<ConstraintSpec> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        if (!split_ws(line).empty()) {
            try {
                out.push_back(ConstraintSpec::parse(line));
            } catch (const ParseError& e) {
                throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        pos = nl + 1;
    }
    return out;
}

std::optional<Rational> predicted_density(const ConstraintSpec& spec, const std::optional<GroupModel>& model) {
    const auto& m = model ? model : spec.model();
    switch (spec.variant()) {
    case Variant::CyclotomicNonSplit:
        return Rational(1) - Rational(1, poly::euler_phi(spec.modulus()));
    case Variant::CyclotomicHasRoot:
    case Variant::Congruence:
        return Rational(1, poly::euler_phi(spec.modulus()));
    case Variant::QuadHasRoot:
        return is_perfect_square(spec.parameter()) ? Rational(1) : Rational(1, 2);
    case Variant::QuadNoRoot:
        return is_perfect_square(spec.parameter()) ? Rational(0) : Rational(1, 2);
    case Variant::PolyNoRoot:
        if (!m)
            return std::nullopt;
        return groups::derangement_proportion(*m);
    case Variant::PolySplitsCompletely:
        if (!m)
            return std::nullopt;
        return Rational(1) / Rational(groups::class_table(*m).order);
    case Variant::PolyHasRoot:
        if (!m)
            return std::nullopt;
        return Rational(1) - groups::derangement_proportion(*m);
    case Variant::SophieGermain:
    case Variant::PrimitiveRootOf:
        return std::nullopt;
    }
    return std::nullopt;
}

bool crt_compatible(std::span<const ConstraintSpec> specs) {
    constexpr std::uint64_t kMaxModulus = 100'000'000;
    std::uint64_t lcm = 1;
    std::vector<std::uint64_t> moduli;
    for (const auto& s : specs) {
        if (!s.is_congruence_expressible())
            throw Inapplicable("crt_compatible: " + s.label() + " is not a congruence condition");
        const bool quad = s.variant() == Variant::QuadHasRoot || s.variant() == Variant::QuadNoRoot;
        const std::uint64_t mod = quad ? 4 * magnitude(s.parameter()) : s.modulus();
        if (mod > kMaxModulus)
            throw BoundsError("crt_compatible: modulus of " + s.label() + " exceeds 10^8");
        moduli.push_back(mod);
        lcm = std::lcm(lcm, mod);
        if (lcm > kMaxModulus)
            throw BoundsError("crt_compatible: lcm of moduli exceeds 10^8");
    }
    for (std::uint64_t r = 1; r <= lcm; ++r) {
        if (std::gcd(r, lcm) != 1)
            continue;
        bool ok = true;
        for (std::size_t i = 0; i < specs.size() && ok; ++i) {
            const auto& s = specs[i];
            const std::uint64_t rr = r % moduli[i];
            switch (s.variant()) {
            case Variant::CyclotomicNonSplit:
                ok = rr != 1 % moduli[i];
                break;
            case Variant::CyclotomicHasRoot:
                ok = rr == 1 % moduli[i];
                break;
            case Variant::Congruence:
                ok = rr == static_cast<std::uint64_t>(s.parameter());
                break;
            case Variant::QuadHasRoot:
            case Variant::QuadNoRoot: {
                // (4D | .) is a character mod 4|D| agreeing with (D | p) at odd p coprime to D.
                const int k = modular::kronecker(4 * s.parameter(), static_cast<std::int64_t>(rr));
                ok = (s.variant() == Variant::QuadHasRoot) ? k == 1 : k == -1;
                break;
            }
            default:
                ok = false;
            }
        }
        if (ok)
            return true;
    }
    return false;
}

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 0 || d == 1)
        return false;
    const std::uint64_t r = arith::reduce_signed(d, 4);
    if (r == 1)
        return is_squarefree(magnitude(d));
    if (r != 0)
        return false;
    const std::int64_t m = d / 4;
    const std::uint64_t rm = arith::reduce_signed(m, 4);
    return (rm == 2 || rm == 3) && is_squarefree(magnitude(m));
}

std::vector<ConstraintSpec> build_subbase_G(std::uint64_t m_max, std::span<const std::int64_t> fundamental_ds,
                                            std::span<const std::pair<IntPoly, GroupModel>> polys) {
    if (m_max < 3)
        throw DomainError("build_subbase_G: mMax must be at least 3");
    for (std::int64_t d : fundamental_ds) {
        if (d == -8)
            throw DomainError("build_subbase_G: D = -8 enters only as T_{-8}, never as Tbar");
        if (!is_fundamental_discriminant(d))
            throw DomainError("build_subbase_G: " + std::to_string(d) + " is not a fundamental discriminant");
    }
    std::vector<ConstraintSpec> out;
    for (std::uint64_t m = 3; m <= m_max; ++m)
        out.push_back(ConstraintSpec::cyclotomic_non_split(m));
    out.push_back(ConstraintSpec::quad_has_root(-8));
    for (std::int64_t d : fundamental_ds)
        out.push_back(ConstraintSpec::quad_no_root(d));
    for (const auto& [f, model] : polys)
        out.push_back(ConstraintSpec::poly_no_root(f, model));
    return out;
}

}  // namespace primeset::constraints
