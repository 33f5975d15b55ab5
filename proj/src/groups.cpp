#include "primeset/groups.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "primeset/errors.hpp"

namespace primeset::groups {

namespace {

std::string trimmed(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return std::string(s);
}

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i)
        r *= i;
    return r;
}

// Permutations of degree <= 16 pack into one word, four bits per image.
std::uint64_t pack(const Permutation& p) {
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        w |= std::uint64_t{p[i]} << (4 * i);
    return w;
}

Permutation unpack(std::uint64_t w, unsigned n) {
    Permutation p(n);
    for (unsigned i = 0; i < n; ++i)
        p[i] = static_cast<std::uint8_t>((w >> (4 * i)) & 0xF);
    return p;
}

Permutation identity(unsigned n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), std::uint8_t{0});
    return p;
}

Permutation cycle(unsigned n, std::initializer_list<unsigned> points) {
    Permutation p = identity(n);
    std::vector<unsigned> pts(points);
    for (std::size_t i = 0; i < pts.size(); ++i)
        p[pts[i]] = static_cast<std::uint8_t>(pts[(i + 1) % pts.size()]);
    return p;
}

bool is_bijection(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    for (auto v : p) {
        if (v >= p.size() || seen[v])
            return false;
        seen[v] = true;
    }
    return true;
}

}  // namespace

Permutation parse_permutation(std::string_view text) {
    Permutation p;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t comma = text.find(',', pos);
        const std::string tok = trimmed(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
            tok.size() > 3)
            throw ParseError("bad permutation image '" + tok + "' in \"" + std::string(text) + "\"");
        const int v = std::stoi(tok);
        if (v < 1 || v > static_cast<int>(kMaxExplicitDegree))
            throw ParseError("permutation image out of range in \"" + std::string(text) + "\"");
        p.push_back(static_cast<std::uint8_t>(v - 1));
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    if (!is_bijection(p))
        throw ParseError("\"" + std::string(text) + "\" is not a permutation of {1.." +
                         std::to_string(p.size()) + "}");
    return p;
}

CycleType::CycleType(std::vector<unsigned> parts) : parts_(std::move(parts)) {
    if (std::find(parts_.begin(), parts_.end(), 0u) != parts_.end())
        throw DomainError("cycle type parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

CycleType CycleType::of(const Permutation& perm) {
    std::vector<unsigned> parts;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i])
            continue;
        unsigned len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        parts.push_back(len);
    }
    return CycleType(std::move(parts));
}

unsigned CycleType::degree() const noexcept {
    return std::accumulate(parts_.begin(), parts_.end(), 0u);
}

unsigned CycleType::fixed_points() const noexcept {
    return static_cast<unsigned>(std::count(parts_.begin(), parts_.end(), 1u));
}

bool CycleType::is_even() const noexcept {
    return (degree() - parts_.size()) % 2 == 0;
}

std::string CycleType::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts_.size(); ++i)
        os << (i ? "," : "") << parts_[i];
    os << ')';
    return os.str();
}

std::vector<CycleType> partitions(unsigned n) {
    std::vector<CycleType> out;
    std::vector<unsigned> cur;
    // Parts in nonincreasing order, each at most max_part.
    auto rec = [&](auto&& self, unsigned remaining, unsigned max_part) -> void {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (unsigned k = std::min(remaining, max_part); k >= 1; --k) {
            cur.push_back(k);
            self(self, remaining - k, k);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

BigInt symmetric_class_size(const CycleType& type) {
    std::map<unsigned, unsigned> mult;
    for (unsigned k : type.parts())
        ++mult[k];
    BigInt denom = 1;
    for (const auto& [k, m] : mult) {
        for (unsigned i = 0; i < m; ++i)
            denom *= k;
        denom *= factorial(m);
    }
    return factorial(type.degree()) / denom;
}

GroupModel GroupModel::symmetric(unsigned n) {
    if (n < 1 || n > kMaxSymmetricDegree)
        throw BoundsError("symmetric group degree must lie in [1, 12], got " + std::to_string(n));
    return GroupModel(Kind::Symmetric, n, {});
}

GroupModel GroupModel::alternating(unsigned n) {
    if (n < 1 || n > kMaxSymmetricDegree)
        throw BoundsError("alternating group degree must lie in [1, 12], got " + std::to_string(n));
    return GroupModel(Kind::Alternating, n, {});
}

GroupModel GroupModel::explicit_perms(unsigned n, std::vector<Permutation> gens) {
    if (n < 1 || n > kMaxExplicitDegree)
        throw BoundsError("explicit group degree must lie in [1, 16], got " + std::to_string(n));
    for (const auto& g : gens)
        if (g.size() != n || !is_bijection(g))
            throw DomainError("generator is not a bijection of {1.." + std::to_string(n) + "}");
    return GroupModel(Kind::Explicit, n, std::move(gens));
}

GroupModel GroupModel::parse(std::string_view text) {
    const std::string t = trimmed(text);
    if (t.size() >= 2 && (t[0] == 'S' || t[0] == 'A')) {
        std::string digits = t.substr(1);
        if (!digits.empty() && digits[0] == '_')
            digits.erase(0, 1);
        if (digits.empty() || digits.size() > 3 ||
            !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ParseError("bad group name \"" + t + "\"");
        const unsigned n = static_cast<unsigned>(std::stoul(digits));
        return t[0] == 'S' ? symmetric(n) : alternating(n);
    }
    constexpr std::string_view prefix = "perms:";
    if (t.rfind(prefix, 0) == 0) {
        std::vector<Permutation> gens;
        std::string_view rest = std::string_view(t).substr(prefix.size());
        std::size_t pos = 0;
        for (;;) {
            const std::size_t semi = rest.find(';', pos);
            gens.push_back(parse_permutation(rest.substr(pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos)));
            if (semi == std::string_view::npos)
                break;
            pos = semi + 1;
        }
        const auto n = static_cast<unsigned>(gens.front().size());
        for (const auto& g : gens)
            if (g.size() != n)
                throw ParseError("generators of different degrees in \"" + t + "\"");
        return explicit_perms(n, std::move(gens));
    }
    throw ParseError("unknown group \"" + t + "\" (expected S<n>, A<n> or perms:<images>;...)");
}

std::string GroupModel::name() const {
    switch (kind_) {
    case Kind::Symmetric:
        return "S" + std::to_string(n_);
    case Kind::Alternating:
        return "A" + std::to_string(n_);
    case Kind::Explicit:
        break;
    }
    std::ostringstream os;
    os << "perms:";
    const auto gens = gens_.empty() ? std::vector<Permutation>{identity(n_)} : gens_;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (g)
            os << ';';
        for (std::size_t i = 0; i < gens[g].size(); ++i)
            os << (i ? "," : "") << gens[g][i] + 1;
    }
    return os.str();
}

std::vector<Permutation> GroupModel::generating_set() const {
    switch (kind_) {
    case Kind::Symmetric: {
        if (n_ < 2)
            return {};
        Permutation rot(n_);
        for (unsigned i = 0; i < n_; ++i)
            rot[i] = static_cast<std::uint8_t>((i + 1) % n_);
        return {cycle(n_, {0, 1}), rot};
    }
    case Kind::Alternating: {
        std::vector<Permutation> gens;
        for (unsigned k = 2; k < n_; ++k)
            gens.push_back(cycle(n_, {0, 1, k}));
        return gens;
    }
    case Kind::Explicit:
        return gens_;
    }
    return {};
}

BigInt GroupModel::order() const {
    switch (kind_) {
    case Kind::Symmetric:
        return factorial(n_);
    case Kind::Alternating:
        return n_ < 2 ? BigInt(1) : factorial(n_) / 2;
    case Kind::Explicit:
        return BigInt(elements().size());
    }
    return 0;
}

std::vector<Permutation> GroupModel::elements() const {
    if (kind_ != Kind::Explicit && order() > kMaxEnumeratedOrder)
        throw BoundsError(name() + " has more than 10^6 elements; enumeration refused");
    const auto gens = generating_set();
    std::vector<std::uint64_t> packed_gens;
    for (const auto& g : gens)
        packed_gens.push_back(pack(g));

    const std::uint64_t id = pack(identity(n_));
    std::unordered_set<std::uint64_t> seen{id};
    std::vector<std::uint64_t> frontier{id};
    std::vector<std::uint64_t> all{id};
    while (!frontier.empty()) {
        std::vector<std::uint64_t> next;
        for (std::uint64_t e : frontier) {
            for (std::uint64_t g : packed_gens) {
                // (g o e)(i) = g[e[i]]
                std::uint64_t prod = 0;
                for (unsigned i = 0; i < n_; ++i) {
                    const std::uint64_t ei = (e >> (4 * i)) & 0xF;
                    prod |= ((g >> (4 * ei)) & 0xF) << (4 * i);
                }
                if (seen.insert(prod).second) {
                    if (all.size() >= kMaxEnumeratedOrder)
                        throw BoundsError("group order exceeds 10^6; enumeration refused");
                    all.push_back(prod);
                    next.push_back(prod);
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(all.begin(), all.end());
    std::vector<Permutation> out;
    out.reserve(all.size());
    for (std::uint64_t w : all)
        out.push_back(unpack(w, n_));
    return out;
}

namespace {

ClassTable compute_class_table(const GroupModel& model) {
    ClassTable table;
    if (model.kind() == GroupModel::Kind::Explicit) {
        const auto elems = model.elements();
        table.order = elems.size();
        for (const auto& e : elems)
            table.counts[CycleType::of(e)] += 1;
        return table;
    }
    table.order = model.order();
    const bool even_only = model.kind() == GroupModel::Kind::Alternating;
    for (const auto& type : partitions(model.degree()))
        if (!even_only || type.is_even())
            table.counts.emplace(type, symmetric_class_size(type));
    return table;
}

}  // namespace

ClassTable class_table(const GroupModel& model) {
    // Memo keyed by the canonical name; values are never mutated once stored.
    static std::mutex mu;
    static std::map<std::string, ClassTable> memo;
    const std::string key = model.name();
    {
        std::lock_guard lock(mu);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
    }
    ClassTable table = compute_class_table(model);
    std::lock_guard lock(mu);
    return memo.emplace(key, std::move(table)).first->second;
}

Rational derangement_proportion(const GroupModel& model) {
    const auto table = class_table(model);
    BigInt deranged = 0;
    for (const auto& [type, count] : table.counts)
        if (type.fixed_points() == 0)
            deranged += count;
    return Rational(deranged, table.order);
}

std::map<CycleType, Rational> predicted_factor_distribution(const GroupModel& model) {
    const auto table = class_table(model);
    std::map<CycleType, Rational> out;
    for (const auto& [type, count] : table.counts)
        out.emplace(type, Rational(count, table.order));
    return out;
}

Rational burnside_average_fixed_points(const GroupModel& model) {
    const auto table = class_table(model);
    BigInt total = 0;
    for (const auto& [type, count] : table.counts)
        total += count * type.fixed_points();
    return Rational(total, table.order);
}

std::vector<std::vector<unsigned>> orbits(const GroupModel& model) {
    const unsigned n = model.degree();
    std::vector<unsigned> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](unsigned x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& g : model.generating_set())
        for (unsigned i = 0; i < n; ++i)
            parent[find(i)] = find(g[i]);
    std::map<unsigned, std::vector<unsigned>> groups;
    for (unsigned i = 0; i < n; ++i)
        groups[find(i)].push_back(i);
    std::vector<std::vector<unsigned>> out;
    for (auto& [root, pts] : groups)
        out.push_back(std::move(pts));
    std::sort(out.begin(), out.end());
    return out;
}

bool orbit_stabilizer_check(const GroupModel& model, unsigned point) {
    if (point < 1 || point > model.degree())
        throw DomainError("point must lie in [1, " + std::to_string(model.degree()) + "]");
    const unsigned x = point - 1;
    const auto elems = model.elements();
    std::uint64_t stabilizer = 0;
    std::vector<bool> in_orbit(model.degree(), false);
    for (const auto& g : elems) {
        if (g[x] == x)
            ++stabilizer;
        in_orbit[g[x]] = true;
    }
    const auto orbit = static_cast<std::uint64_t>(std::count(in_orbit.begin(), in_orbit.end(), true));
    return elems.size() == stabilizer * orbit;
}

}  // namespace primeset::groups
