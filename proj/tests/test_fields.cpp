#include "doctest.h"

#include "grval/poly.hpp"

#include <random>
#include <set>

using namespace grval;

TEST_CASE("prime field arithmetic") {
    auto f5 = Field::prime(5);
    CHECK(f5->from_int(2).inv() == f5->from_int(3));
    CHECK((f5->from_int(4) + f5->from_int(3)) == f5->from_int(2));
    CHECK_THROWS_AS(f5->zero().inv(), domain_error);
    CHECK_THROWS_AS(Field::prime(6), domain_error);
    auto f3 = Field::prime(3);
    CHECK_THROWS_AS(f5->one() + f3->one(), domain_error);
}

TEST_CASE("unit group order") {
    for (auto f : {Field::prime(7), Field::extension_canonical(3, 2), Field::extension_canonical(2, 4)}) {
        Int q = f->cardinality();
        for (const auto& g : f->elements()) {
            if (g.is_zero()) continue;
            CHECK(g.pow(q - 1) == f->one());
        }
    }
}

TEST_CASE("GF(4) inverse against brute-force multiplication table") {
    auto f4 = Field::extension(2, {1, 1, 1});  // GF(2)[x]/(x^2+x+1)
    FieldElem x = f4->generator();
    // oracle: the unique y with x*y = 1
    FieldElem expect = f4->zero();
    int hits = 0;
    for (const auto& y : f4->elements())
        if ((x * y).is_one()) {
            expect = y;
            ++hits;
        }
    CHECK(hits == 1);
    CHECK(expect == x + f4->one());  // x+1
    CHECK(x.inv() == expect);
}

TEST_CASE("rationals") {
    auto qq = Field::rationals();
    FieldElem a = qq->from_rat(Rat(3, 4));
    CHECK((a * a.inv()).is_one());
    CHECK((a + qq->from_rat(Rat(1, 4))).is_one());
    CHECK_THROWS_AS(a.frobenius(), domain_error);
}

TEST_CASE("modulus validation") {
    CHECK_THROWS_AS(Field::extension(2, {1, 0, 1}), domain_error);  // x^2+1=(x+1)^2 over GF(2)
    CHECK_NOTHROW(Field::extension(2, {1, 1, 1}));
    CHECK_NOTHROW(Field::extension(5, {2, 0, 1}));  // x^2+2 irreducible mod 5
}

TEST_CASE("factor: difference of squares over GF(5)") {
    auto f5 = Field::prime(5);
    auto fac = poly_factor(fpoly_from_ints(f5, {-1, 0, 1}));
    REQUIRE(fac.parts.size() == 2);
    CHECK(fac.unit.is_one());
    for (const auto& [g, m] : fac.parts) {
        CHECK(g.degree() == 1);
        CHECK(m == 1);
    }
    auto roots = poly_roots(fpoly_from_ints(f5, {-1, 0, 1}));
    std::set<std::int64_t> rs;
    for (auto& [r, m] : roots) rs.insert(r.coeffs()[0]);
    CHECK(rs == std::set<std::int64_t>{1, 4});
}

TEST_CASE("X^2+1 irreducible over GF(3), certified by root search") {
    auto f3 = Field::prime(3);
    FPoly f = fpoly_from_ints(f3, {1, 0, 1});
    for (const auto& a : f3->elements()) CHECK_FALSE(upoly_eval(f, a).is_zero());
    CHECK(poly_irreducible(f));
}

TEST_CASE("X^4-1 over GF(5) splits into all units") {
    auto f5 = Field::prime(5);
    auto fac = poly_factor(fpoly_from_ints(f5, {-1, 0, 0, 0, 1}));
    REQUIRE(fac.parts.size() == 4);
    std::set<std::int64_t> roots;
    for (const auto& [g, m] : fac.parts) {
        CHECK(g.degree() == 1);
        CHECK(m == 1);
        roots.insert((-g.c[0]).coeffs()[0]);
    }
    CHECK(roots == std::set<std::int64_t>{1, 2, 3, 4});
}

TEST_CASE("factor round trip on random polynomials") {
    std::mt19937_64 rng(20240811);
    for (std::int64_t p : {2, 3, 5, 13}) {
        auto f = Field::prime(p);
        std::uniform_int_distribution<std::int64_t> coef(0, p - 1);
        std::uniform_int_distribution<int> deg(1, 8);
        for (int t = 0; t < 250; ++t) {
            int d = deg(rng);
            std::vector<std::int64_t> c(static_cast<std::size_t>(d) + 1);
            for (auto& x : c) x = coef(rng);
            c.back() = 1 + (c.back() % (p - 1 > 0 ? p - 1 : 1));
            FPoly poly = fpoly_from_ints(f, c);
            auto fac = poly_factor(poly);  // product identity asserted internally
            FPoly prod = fpoly_const(fac.unit);
            for (const auto& [g, m] : fac.parts) {
                CHECK(g.lead().is_one());
                for (int i = 0; i < m; ++i) prod = upoly_mul(prod, g);
            }
            CHECK(upoly_eq(prod, poly));
        }
    }
}

TEST_CASE("reported irreducibles of degree <= 4 have no roots in small extensions") {
    std::mt19937_64 rng(77);
    for (std::int64_t p : {2, 3}) {
        auto f = Field::prime(p);
        std::uniform_int_distribution<std::int64_t> coef(0, p - 1);
        for (int t = 0; t < 60; ++t) {
            std::vector<std::int64_t> c(5);
            for (auto& x : c) x = coef(rng);
            c.back() = 1;
            auto fac = poly_factor(fpoly_from_ints(f, c));
            for (const auto& [g, m] : fac.parts) {
                (void)m;
                if (g.degree() < 2 || g.degree() > 4) continue;
                for (int d = 1; d < g.degree(); ++d) {
                    auto ext = d == 1 ? f : Field::extension_canonical(p, d);
                    // embed the GF(p) coefficients and evaluate over GF(p^d)
                    std::vector<FieldElem> ec;
                    for (const auto& x : g.c) ec.push_back(ext->from_int(x.coeffs()[0]));
                    FPoly ge(std::move(ec));
                    for (const auto& a : ext->elements()) CHECK_FALSE(upoly_eval(ge, a).is_zero());
                }
            }
        }
    }
}

TEST_CASE("factorization over extension fields") {
    auto f9 = Field::extension_canonical(3, 2);
    // X^2 - g for the generator g: either splits or stays irreducible, and the
    // product identity must hold either way
    std::vector<FieldElem> c{-f9->generator(), f9->zero(), f9->one()};
    auto fac = poly_factor(FPoly(c));
    FPoly prod = fpoly_const(fac.unit);
    for (const auto& [g, m] : fac.parts)
        for (int i = 0; i < m; ++i) prod = upoly_mul(prod, g);
    CHECK(upoly_eq(prod, FPoly(c)));
    // X^9 - X splits into all nine linear factors
    std::vector<std::int64_t> xq(10, 0);
    xq[1] = -1;
    xq[9] = 1;
    auto fac2 = poly_factor(fpoly_from_ints(f9, xq));
    CHECK(fac2.parts.size() == 9);
}

TEST_CASE("frobenius orbits") {
    auto f7 = Field::prime(7);
    CHECK(frobenius_orbit(f7->from_int(4)).size() == 1);

    auto f9 = Field::extension_canonical(3, 2);
    FieldElem g = f9->generator();
    auto orb = frobenius_orbit(g);
    REQUIRE(orb.size() == 2);
    CHECK(orb[1] == g.pow(3));

    // orbits partition the field with sizes dividing k
    for (auto fld : {Field::extension_canonical(2, 4), Field::extension_canonical(5, 2)}) {
        std::set<std::vector<std::int64_t>> seen;
        std::size_t total = 0;
        for (const auto& a : fld->elements()) {
            if (seen.count(a.coeffs())) continue;
            auto orbit = frobenius_orbit(a);
            CHECK(fld->degree() % static_cast<int>(orbit.size()) == 0);
            for (const auto& x : orbit) CHECK(seen.insert(x.coeffs()).second);
            total += orbit.size();
        }
        CHECK(total == static_cast<std::size_t>(fld->elements().size()));
    }
}

TEST_CASE("field embeddings") {
    auto f2 = Field::prime(2);
    auto f4 = Field::extension(2, {1, 1, 1});
    auto f16 = Field::extension_canonical(2, 4);
    auto emb = FieldEmbedding::find(f4, f16);
    FieldElem g = f4->generator();
    // ring homomorphism on a sample of pairs
    for (const auto& a : f4->elements())
        for (const auto& b : f4->elements()) {
            CHECK(emb.apply(a * b) == emb.apply(a) * emb.apply(b));
            CHECK(emb.apply(a + b) == emb.apply(a) + emb.apply(b));
        }
    CHECK(emb.contains(emb.apply(g)));
    CHECK(emb.section(emb.apply(g)) == g);
    int inside = 0;
    for (const auto& x : f16->elements())
        if (emb.contains(x)) ++inside;
    CHECK(inside == 4);
    CHECK_THROWS_AS(FieldEmbedding::find(f16, f4), domain_error);
    CHECK(FieldEmbedding::find(f2, f4).apply(f2->one()) == f4->one());
}
