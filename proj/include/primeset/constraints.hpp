#pragma once

/**
 * Constraint sets over primes.
 *
 * A ConstraintSpec is a predicate on primes together with its finite set of
 * excluded (ramified) primes:
 *
 *   U_m            Phi_m has no zero mod p, i.e. p != 1 (mod m)     excluded: p | m
 *   CycRoot_m      Phi_m has a zero mod p, i.e. p == 1 (mod m)      excluded: p | m
 *   T_D            x^2 - D has a zero mod p                         excluded: p | 2D
 *   Tbar_D         x^2 - D has no zero mod p                        excluded: p | 2D
 *   PolyNoRoot f   f has no zero mod p (derangement Frobenius)      excluded: p | lc(f) Disc(f)
 *   PolySplit f    f splits into distinct linear factors mod p      excluded: p | lc(f) Disc(f)
 *   PolyRoot f     f has a zero mod p                               excluded: p | lc(f) Disc(f)
 *   Cong(a, m)     p == a (mod m), gcd(a, m) = 1                    excluded: p | m
 *   SG             (p - 1)/2 is prime                               excluded: none
 *   PrimRoot(m)    m mod p generates F_p^x                          excluded: p | m
 *
 * Specs are immutable values; copies share their precomputed polynomial data.
 */

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "primeset/groups.hpp"
#include "primeset/polyarith.hpp"
#include "primeset/primes.hpp"

namespace primeset::constraints {

using groups::GroupModel;
using groups::Rational;
using poly::BigInt;
using poly::IntPoly;

enum class Variant {
    CyclotomicNonSplit,
    CyclotomicHasRoot,
    QuadHasRoot,
    QuadNoRoot,
    PolyNoRoot,
    PolySplitsCompletely,
    PolyHasRoot,
    Congruence,
    SophieGermain,
    PrimitiveRootOf,
};

enum class Membership { In, Out, Excluded };

std::string_view to_string(Membership m);

/// The primes dividing a fixed nonzero integer.
class ExcludedSet {
public:
    ExcludedSet() = default;
    explicit ExcludedSet(BigInt bad);

    bool contains(std::uint64_t p) const;
    const BigInt& product() const noexcept { return bad_; }

    /// Excluded primes up to bound, ascending.
    std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) const;

private:
    BigInt bad_ = 1;
    std::uint64_t small_ = 1;  // |bad_| when it fits in a word, else 0
};

class ConstraintSpec {
public:
    /// U_m, m >= 3.
    static ConstraintSpec cyclotomic_non_split(std::uint64_t m);
    /// P_{Phi_m}, m >= 1.
    static ConstraintSpec cyclotomic_has_root(std::uint64_t m);
    /// T_D, D != 0.
    static ConstraintSpec quad_has_root(std::int64_t d);
    /// Tbar_D, D != 0.
    static ConstraintSpec quad_no_root(std::int64_t d);
    static ConstraintSpec poly_no_root(IntPoly f, std::optional<GroupModel> model = std::nullopt);
    static ConstraintSpec poly_splits_completely(IntPoly f, std::optional<GroupModel> model = std::nullopt);
    static ConstraintSpec poly_has_root(IntPoly f, std::optional<GroupModel> model = std::nullopt);
    /// p == a (mod m); a is reduced mod m and must be coprime to m.
    static ConstraintSpec congruence(std::int64_t a, std::uint64_t m);
    static ConstraintSpec sophie_germain();
    /// m != 0.
    static ConstraintSpec primitive_root_of(std::int64_t m);

    /// One line of the constraint mini-language:
    ///   U 7 | cyclo 5 | T -8 | Tbar 5 | polynoroot -1,-1,0,1 S3 |
    ///   polysplit <coeffs> [group] | polyroot <coeffs> [group] | cong 3 8 | sg | proot 2
    static ConstraintSpec parse(std::string_view line);

    Variant variant() const noexcept { return variant_; }
    /// m for cyclotomic and congruence variants.
    std::uint64_t modulus() const noexcept { return modulus_; }
    /// a for Congruence, D for quadratic variants, m for PrimitiveRootOf.
    std::int64_t parameter() const noexcept { return param_; }
    /// Present for the polynomial variants.
    const IntPoly* polynomial() const noexcept;
    const std::optional<GroupModel>& model() const noexcept { return model_; }
    const ExcludedSet& excluded() const noexcept { return excluded_; }

    bool is_polynomial() const noexcept;
    /// True for variants that are unions of residue classes (crt_compatible accepts them).
    bool is_congruence_expressible() const noexcept;

    /// Short name, e.g. "U_5", "T_-8", "Tbar_5", "PolyNoRoot[x^3 - x - 1]".
    std::string label() const;

    /// Canonical mini-language line; parse(to_line()) reproduces the spec.
    std::string to_line() const;

    /// Excluded, else In/Out by the defining test. `table`, when given and
    /// large enough, answers the primality question for SophieGermain.
    Membership membership(std::uint64_t p, const primes::SieveTable* table = nullptr) const;

private:
    ConstraintSpec(Variant v) : variant_(v) {}
    static ConstraintSpec polynomial_variant(Variant v, IntPoly f, std::optional<GroupModel> model);

    Variant variant_;
    std::uint64_t modulus_ = 0;
    std::int64_t param_ = 0;
    std::shared_ptr<const poly::PrimeTester> poly_;
    std::optional<GroupModel> model_;
    ExcludedSet excluded_;
};

/// Free-function form of ConstraintSpec::membership.
Membership membership(const ConstraintSpec& spec, std::uint64_t p);

/// Parses a constraint file: one constraint per line, '#' starts a comment,
/// blank lines ignored. ParseError messages name the offending line number.
std::vector<ConstraintSpec> parse_constraint_file(std::string_view text);

/// Chebotarev prediction |C|/|G| where one is known. `model` overrides the
/// spec's own group model for the polynomial variants. SophieGermain and
/// PrimitiveRootOf have no prediction.
std::optional<Rational> predicted_density(const ConstraintSpec& spec,
                                          const std::optional<GroupModel>& model = std::nullopt);

/// True iff the congruence conditions admit a residue class coprime to the
/// lcm of their moduli. Throws Inapplicable for non-congruence variants and
/// BoundsError if that lcm exceeds 10^8.
bool crt_compatible(std::span<const ConstraintSpec> specs);

/// D is the discriminant of a quadratic field.
bool is_fundamental_discriminant(std::int64_t d);

/// Members of the subbase: U_m for 3 <= m <= m_max, T_{-8}, Tbar_D for each
/// listed fundamental D != -8, and PolyNoRoot(f) for each (f, model).
std::vector<ConstraintSpec> build_subbase_G(std::uint64_t m_max, std::span<const std::int64_t> fundamental_ds,
                                            std::span<const std::pair<IntPoly, GroupModel>> polys);

}  // namespace primeset::constraints
