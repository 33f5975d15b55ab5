#pragma once

/**
 * Permutation groups acting naturally on {1..n}, reduced to what the density
 * predictions consume: how many elements have each cycle type.
 *
 * S_n and A_n are handled by partition formulas (A_n keeps the even types of
 * S_n with the same counts; class splitting inside A_n is irrelevant here).
 * Groups given by explicit generators are enumerated by closure.
 */

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace primeset::groups {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr unsigned kMaxSymmetricDegree = 12;
inline constexpr unsigned kMaxExplicitDegree = 16;
inline constexpr std::uint64_t kMaxEnumeratedOrder = 1'000'000;

/// One-line notation, 0-based: perm[i] is the image of i.
using Permutation = std::vector<std::uint8_t>;

/// Parses 1-based one-line images such as "2,3,1". Throws ParseError if the
/// text is not a bijection of {1..n}.
Permutation parse_permutation(std::string_view text);

class CycleType {
public:
    CycleType() = default;
    /// Any order accepted; stored descending. Parts must be positive.
    explicit CycleType(std::vector<unsigned> parts);

    static CycleType of(const Permutation& perm);

    const std::vector<unsigned>& parts() const noexcept { return parts_; }
    unsigned degree() const noexcept;
    unsigned fixed_points() const noexcept;
    /// Sign is (-1)^(n - number of cycles).
    bool is_even() const noexcept;

    /// "(2,1)"
    std::string to_string() const;

    friend auto operator<=>(const CycleType&, const CycleType&) = default;

private:
    std::vector<unsigned> parts_;
};

/// All partitions of n as cycle types.
std::vector<CycleType> partitions(unsigned n);

/// Number of permutations of {1..n} with the given cycle type:
/// n! / prod_k (k^m_k * m_k!).
BigInt symmetric_class_size(const CycleType& type);

class GroupModel {
public:
    enum class Kind { Symmetric, Alternating, Explicit };

    static GroupModel symmetric(unsigned n);
    static GroupModel alternating(unsigned n);
    /// The group generated by gens acting on {1..n}. An empty list gives the trivial group.
    static GroupModel explicit_perms(unsigned n, std::vector<Permutation> gens);

    /// "S3", "A5", or "perms:2,3,1;2,1,3" (generators separated by ';').
    static GroupModel parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    unsigned degree() const noexcept { return n_; }
    const std::vector<Permutation>& generators() const noexcept { return gens_; }

    /// Inverse of parse().
    std::string name() const;

    /// Generators for every kind: (1 2), (1 2 ... n) for S_n; 3-cycles (1 2 k) for A_n.
    std::vector<Permutation> generating_set() const;

    BigInt order() const;

    /// All elements by closure. Throws BoundsError past 10^6 elements.
    std::vector<Permutation> elements() const;

    friend bool operator==(const GroupModel&, const GroupModel&) = default;

private:
    GroupModel(Kind kind, unsigned n, std::vector<Permutation> gens)
        : kind_(kind), n_(n), gens_(std::move(gens)) {}

    Kind kind_;
    unsigned n_;
    std::vector<Permutation> gens_;
};

struct ClassTable {
    BigInt order;
    std::map<CycleType, BigInt> counts;  // only types that occur
};

/// Element counts per cycle type. Caps: n <= 12 for S_n/A_n; order <= 10^6
/// and degree <= 16 for explicit groups (BoundsError otherwise).
ClassTable class_table(const GroupModel& model);

/// Proportion of fixed-point-free elements, exactly.
Rational derangement_proportion(const GroupModel& model);

/// Cycle type -> |class| / |G|; the values sum to 1.
std::map<CycleType, Rational> predicted_factor_distribution(const GroupModel& model);

/// (1/|G|) * sum over g of |Fix(g)|, the number of orbits on {1..n}.
Rational burnside_average_fixed_points(const GroupModel& model);

/// Orbits of the natural action, each as a sorted list of 0-based points.
std::vector<std::vector<unsigned>> orbits(const GroupModel& model);

/// Checks |G| = |Stab(point)| * |Orb(point)| by enumerating G. point is 1-based.
bool orbit_stabilizer_check(const GroupModel& model, unsigned point);

}  // namespace primeset::groups
