#include <doctest.h>

#include "oracles.hpp"
#include "primeset/constraints.hpp"
#include "primeset/errors.hpp"

using namespace primeset;
using namespace primeset::constraints;

namespace {

bool in(const ConstraintSpec& s, std::uint64_t p) {
    return s.membership(p) == Membership::In;
}

}  // namespace

TEST_SUITE("constraints") {

TEST_CASE("membership examples") {
    const auto u5 = ConstraintSpec::cyclotomic_non_split(5);
    CHECK(in(u5, 7));
    CHECK_FALSE(in(u5, 11));
    CHECK(u5.membership(5) == Membership::Excluded);
    CHECK(in(u5, 2));

    const auto t = ConstraintSpec::quad_has_root(-8);
    CHECK(in(t, 3));
    CHECK_FALSE(in(t, 5));
    CHECK(t.membership(2) == Membership::Excluded);
    CHECK(ConstraintSpec::quad_no_root(-8).membership(5) == Membership::In);

    const auto f = ConstraintSpec::poly_no_root(IntPoly{-1, -1, 0, 1}, GroupModel::symmetric(3));
    CHECK(in(f, 3));
    CHECK_FALSE(in(f, 7));
    CHECK(f.membership(23) == Membership::Excluded);

    CHECK(in(ConstraintSpec::congruence(3, 8), 11));
    CHECK_FALSE(in(ConstraintSpec::congruence(3, 8), 13));
    CHECK(ConstraintSpec::congruence(3, 8).membership(2) == Membership::Excluded);
    CHECK(ConstraintSpec::congruence(-5, 8).parameter() == 3);

    CHECK(in(ConstraintSpec::sophie_germain(), 11));
    CHECK(in(ConstraintSpec::sophie_germain(), 5));
    CHECK_FALSE(in(ConstraintSpec::sophie_germain(), 13));
    CHECK_FALSE(in(ConstraintSpec::sophie_germain(), 2));

    CHECK(in(ConstraintSpec::primitive_root_of(2), 3));
    CHECK_FALSE(in(ConstraintSpec::primitive_root_of(2), 7));
    CHECK(ConstraintSpec::primitive_root_of(2).membership(2) == Membership::Excluded);
    CHECK(in(ConstraintSpec::primitive_root_of(-1), 3));
    CHECK_FALSE(in(ConstraintSpec::primitive_root_of(-1), 5));

    CHECK(in(ConstraintSpec::cyclotomic_has_root(4), 5));
    CHECK(in(ConstraintSpec::poly_splits_completely(IntPoly{-1, -1, 0, 1}), 59));
    CHECK(in(ConstraintSpec::poly_has_root(IntPoly{-1, -1, 0, 1}), 7));

    CHECK(membership(u5, 7) == Membership::In);
    CHECK(to_string(Membership::Excluded) == "Excluded");
    CHECK_THROWS_AS(u5.membership(1), DomainError);
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(ConstraintSpec::cyclotomic_non_split(2), DomainError);
    CHECK_THROWS_AS(ConstraintSpec::cyclotomic_has_root(0), DomainError);
    CHECK_THROWS_AS(ConstraintSpec::quad_has_root(0), DomainError);
    CHECK_THROWS_AS(ConstraintSpec::quad_no_root(0), DomainError);
    CHECK_THROWS_AS(ConstraintSpec::congruence(2, 8), DomainError);
    CHECK_THROWS_AS(ConstraintSpec::congruence(1, 0), DomainError);
    CHECK_THROWS_AS(ConstraintSpec::primitive_root_of(0), DomainError);
    CHECK_THROWS_AS(ConstraintSpec::poly_no_root(IntPoly{1, 2, 1}), DomainError);
    CHECK_THROWS_AS(ConstraintSpec::poly_no_root(IntPoly{-1, -1, 0, 1}, GroupModel::symmetric(4)), DomainError);
    CHECK_THROWS_AS(ConstraintSpec::poly_no_root(IntPoly{3}), DomainError);
}

TEST_CASE("excluded sets") {
    CHECK(ConstraintSpec::cyclotomic_non_split(12).excluded().primes_up_to(100) ==
          std::vector<std::uint64_t>{2, 3});
    CHECK(ConstraintSpec::quad_no_root(5).excluded().primes_up_to(100) == std::vector<std::uint64_t>{2, 5});
    CHECK(ConstraintSpec::quad_has_root(-8).excluded().primes_up_to(100) == std::vector<std::uint64_t>{2});
    CHECK(ConstraintSpec::poly_no_root(IntPoly{-1, -1, 0, 1}).excluded().primes_up_to(100) ==
          std::vector<std::uint64_t>{23});
    CHECK(ConstraintSpec::poly_no_root(IntPoly{1, 0, 3}).excluded().primes_up_to(100) ==
          std::vector<std::uint64_t>{2, 3});
    CHECK(ConstraintSpec::sophie_germain().excluded().primes_up_to(100).empty());
    CHECK(ConstraintSpec::primitive_root_of(-12).excluded().primes_up_to(100) ==
          std::vector<std::uint64_t>{2, 3});
    const ExcludedSet big(BigInt("340282366920938463463374607431768211457"));  // 2^128 + 1
    CHECK_FALSE(big.contains(3));
    CHECK(ExcludedSet(BigInt(-30)).contains(5));
}

TEST_CASE("U_m is exactly the set where Phi_m has no root") {
    for (std::uint64_t m = 3; m <= 30; ++m) {
        const auto spec = ConstraintSpec::cyclotomic_non_split(m);
        const auto phi = poly::cyclotomic(static_cast<unsigned>(m));
        for (std::uint64_t p : oracle::trial_primes_up_to(2'000)) {
            if (m % p == 0) {
                REQUIRE(spec.membership(p) == Membership::Excluded);
                continue;
            }
            REQUIRE(in(spec, p) == !poly::has_root_mod_p(phi, p));
        }
    }
}

TEST_CASE("quadratic variants agree with a table of squares") {
    for (std::int64_t d = -40; d <= 40; ++d) {
        if (d == 0)
            continue;
        const auto t = ConstraintSpec::quad_has_root(d);
        const auto tbar = ConstraintSpec::quad_no_root(d);
        for (std::uint64_t p : oracle::trial_primes_up_to(3'000)) {
            if (p == 2 || oracle::reduce(d, p) == 0) {
                REQUIRE(t.membership(p) == Membership::Excluded);
                REQUIRE(tbar.membership(p) == Membership::Excluded);
                continue;
            }
            const bool sq = oracle::brute_is_nonzero_square(d, p);
            REQUIRE(in(t, p) == sq);
            REQUIRE(in(tbar, p) == !sq);
        }
    }
}

TEST_CASE("SG, PrimRoot and polynomial variants agree with brute force") {
    const auto sg = ConstraintSpec::sophie_germain();
    const auto table = primes::sieve(50'000);
    for (std::uint64_t p : oracle::trial_primes_up_to(50'000)) {
        const bool expected = p >= 5 && oracle::trial_prime((p - 1) / 2);
        REQUIRE(in(sg, p) == expected);
        REQUIRE((sg.membership(p, &table) == Membership::In) == expected);
    }
    for (std::int64_t m : {2, 3, -2, -3, 5, 6, 7, -1, 10}) {
        const auto spec = ConstraintSpec::primitive_root_of(m);
        for (std::uint64_t p : oracle::trial_primes_up_to(3'000)) {
            if (oracle::reduce(m, p) == 0)
                continue;
            REQUIRE(in(spec, p) == oracle::brute_primitive_root(oracle::reduce(m, p), p));
        }
    }
    const IntPoly f{-1, -1, 0, 1};
    const std::vector<std::int64_t> coeffs{-1, -1, 0, 1};
    const auto noroot = ConstraintSpec::poly_no_root(f);
    const auto root = ConstraintSpec::poly_has_root(f);
    for (std::uint64_t p : oracle::trial_primes_up_to(3'000)) {
        if (p == 23)
            continue;
        REQUIRE(in(noroot, p) == !oracle::brute_has_root(coeffs, p));
        REQUIRE(in(root, p) == oracle::brute_has_root(coeffs, p));
    }
}

TEST_CASE("mini-language parsing") {
    CHECK(ConstraintSpec::parse("U 7").label() == "U_7");
    CHECK(ConstraintSpec::parse("u 7").label() == "U_7");
    CHECK(ConstraintSpec::parse("T -8").label() == "T_-8");
    CHECK(ConstraintSpec::parse("Tbar 5").label() == "Tbar_5");
    CHECK(ConstraintSpec::parse("cyclo 5").label() == "CycRoot_5");
    CHECK(ConstraintSpec::parse("cong 3 8").label() == "Cong(3 mod 8)");
    CHECK(ConstraintSpec::parse("sg").label() == "SG");
    CHECK(ConstraintSpec::parse("proot -3").label() == "PrimRoot(-3)");
    const auto f = ConstraintSpec::parse("polynoroot -1,-1,0,1 S3");
    CHECK(f.label() == "PolyNoRoot[x^3 - x - 1]");
    CHECK(f.model() == GroupModel::symmetric(3));
    CHECK(*f.polynomial() == IntPoly{-1, -1, 0, 1});
    CHECK(f.is_polynomial());
    CHECK_FALSE(f.is_congruence_expressible());
    CHECK(ConstraintSpec::parse("U 7").is_congruence_expressible());
    CHECK(ConstraintSpec::parse("T 5").is_congruence_expressible());
    CHECK(ConstraintSpec::parse("U 7").polynomial() == nullptr);

    for (const char* line : {"U 7", "cyclo 5", "T -8", "Tbar 5", "polynoroot -1,-1,0,1 S3", "polysplit -2,0,0,1",
                             "polyroot 1,1,1,1,1 perms:2,3,4,1", "cong 3 8", "sg", "proot 2"}) {
        const auto spec = ConstraintSpec::parse(line);
        CHECK(spec.to_line() == line);
        CHECK(ConstraintSpec::parse(spec.to_line()).label() == spec.label());
    }

    CHECK_THROWS_AS(ConstraintSpec::parse(""), ParseError);
    CHECK_THROWS_AS(ConstraintSpec::parse("V 7"), ParseError);
    CHECK_THROWS_AS(ConstraintSpec::parse("U"), ParseError);
    CHECK_THROWS_AS(ConstraintSpec::parse("U 7 8"), ParseError);
    CHECK_THROWS_AS(ConstraintSpec::parse("U seven"), ParseError);
    CHECK_THROWS_AS(ConstraintSpec::parse("U 2"), ParseError);
    CHECK_THROWS_AS(ConstraintSpec::parse("T 0"), ParseError);
    CHECK_THROWS_AS(ConstraintSpec::parse("polynoroot 1,2,1"), ParseError);
    CHECK_THROWS_AS(ConstraintSpec::parse("cong 2 8"), ParseError);
}

TEST_CASE("constraint files") {
    const auto specs = parse_constraint_file("# subbase sample\nU 3\n\n  T -8   # quadratic\nTbar 5\n");
    REQUIRE(specs.size() == 3);
    CHECK(specs[1].label() == "T_-8");
    CHECK(parse_constraint_file("").empty());
    try {
        parse_constraint_file("U 3\nU 4\nbogus 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).rfind("line 3:", 0) == 0);
    }
}

TEST_CASE("predicted densities") {
    CHECK(*predicted_density(ConstraintSpec::cyclotomic_non_split(5)) == Rational(3, 4));
    CHECK(*predicted_density(ConstraintSpec::cyclotomic_non_split(12)) == Rational(3, 4));
    CHECK(*predicted_density(ConstraintSpec::cyclotomic_has_root(7)) == Rational(1, 6));
    CHECK(*predicted_density(ConstraintSpec::quad_has_root(-8)) == Rational(1, 2));
    CHECK(*predicted_density(ConstraintSpec::quad_no_root(5)) == Rational(1, 2));
    CHECK(*predicted_density(ConstraintSpec::quad_has_root(9)) == 1);
    CHECK(*predicted_density(ConstraintSpec::quad_no_root(9)) == 0);
    CHECK(*predicted_density(ConstraintSpec::congruence(3, 8)) == Rational(1, 4));
    const auto f = ConstraintSpec::poly_no_root(IntPoly{-1, -1, 0, 1}, GroupModel::symmetric(3));
    CHECK(*predicted_density(f) == Rational(1, 3));
    CHECK(*predicted_density(f, GroupModel::parse("perms:2,3,1")) == Rational(2, 3));
    CHECK_FALSE(predicted_density(ConstraintSpec::poly_no_root(IntPoly{-1, -1, 0, 1})).has_value());
    CHECK(*predicted_density(ConstraintSpec::poly_splits_completely(IntPoly{-1, -1, 0, 1}, GroupModel::symmetric(3))) ==
          Rational(1, 6));
    CHECK(*predicted_density(ConstraintSpec::poly_has_root(IntPoly{-1, -1, 0, 1}, GroupModel::symmetric(3))) ==
          Rational(2, 3));
    CHECK_FALSE(predicted_density(ConstraintSpec::sophie_germain()).has_value());
    CHECK_FALSE(predicted_density(ConstraintSpec::primitive_root_of(2)).has_value());
}

TEST_CASE("CRT compatibility") {
    auto compat = [](std::initializer_list<const char*> lines) {
        std::vector<ConstraintSpec> specs;
        for (const char* l : lines)
            specs.push_back(ConstraintSpec::parse(l));
        return crt_compatible(specs);
    };
    CHECK(compat({"cong 1 4", "T -4"}));
    CHECK_FALSE(compat({"cong 3 4", "T -4"}));
    CHECK_FALSE(compat({"U 4", "cong 1 4"}));
    CHECK_FALSE(compat({"U 3", "cyclo 3"}));
    CHECK(compat({"cong 3 8", "T -8"}));
    CHECK_FALSE(compat({"cong 3 8", "Tbar -8"}));
    CHECK(compat({"U 3", "U 4", "U 5", "T -8", "Tbar 5"}));
    CHECK(compat({"cyclo 3", "cyclo 4", "Tbar 5", "T -3"}));
    CHECK_FALSE(compat({"cyclo 3", "Tbar -3"}));
    CHECK(compat({}));
    CHECK_THROWS_AS(compat({"U 3", "sg"}), Inapplicable);
    CHECK_THROWS_AS(compat({"cong 1 99991", "cong 1 99989"}), BoundsError);
}

TEST_CASE("fundamental discriminants") {
    std::vector<std::int64_t> found;
    for (std::int64_t d = -20; d <= 20; ++d)
        if (is_fundamental_discriminant(d))
            found.push_back(d);
    CHECK(found == std::vector<std::int64_t>{-20, -19, -15, -11, -8, -7, -4, -3, 5, 8, 12, 13, 17});
}

TEST_CASE("subbase construction") {
    const std::vector<std::int64_t> ds{5, -4, 8};
    const std::vector<std::pair<IntPoly, GroupModel>> polys{{IntPoly{-1, -1, 0, 1}, GroupModel::symmetric(3)}};
    const auto g = build_subbase_G(12, ds, polys);
    REQUIRE(g.size() == 10 + 1 + 3 + 1);
    CHECK(g.front().label() == "U_3");
    CHECK(g[9].label() == "U_12");
    CHECK(g[10].label() == "T_-8");
    CHECK(g[11].label() == "Tbar_5");
    CHECK(g.back().label() == "PolyNoRoot[x^3 - x - 1]");
    const std::vector<std::int64_t> bad{-8};
    CHECK_THROWS_AS(build_subbase_G(12, bad, polys), DomainError);
    const std::vector<std::int64_t> nonfund{12 * 4};
    CHECK_THROWS_AS(build_subbase_G(12, nonfund, polys), DomainError);
    CHECK_THROWS_AS(build_subbase_G(2, ds, polys), DomainError);
}

}  // TEST_SUITE
