#include "doctest.h"

#include "grval/hensel.hpp"

#include <random>

using namespace grval;

namespace {

Grade g1(Rat a) { return Grade{a}; }

SeriesFieldPtr E(std::int64_t p) { return SeriesField::make(Field::prime(p), {"t"}); }

SeriesElement mono(const SeriesFieldPtr& f, Rat g, std::int64_t c) {
    return f->monomial(g1(g), f->residue()->from_int(c));
}

SeriesFieldPtr field_of_series(const SPoly& f) {
    for (const auto& c : f.c)
        if (c.field()) return c.field();
    throw std::runtime_error("empty poly");
}

// independent term-by-term oracle: the unique series s = b0 + sum_{k>=1} s_k t^k
// with h(s) = 0, solved one coefficient at a time from h(s) == 0 mod t^(k+1)
SeriesElement root_by_recursion(const SPoly& h, const FieldElem& b0, int nterms) {
    auto fld = field_of_series(h);
    FPoly hres;  // residue polynomial over F0
    for (const auto& c : h.c) {
        auto it = c.terms().find(g1(0));
        hres.c.push_back(it == c.terms().end() ? fld->residue()->zero() : it->second);
    }
    hres.normalize();
    FPoly hder = upoly_derivative(hres, fld->residue()->one());
    FieldElem slope = upoly_eval(hder, b0);
    SeriesElement s = fld->from_residue(b0);
    for (int k = 1; k <= nterms; ++k) {
        // h(s) = c_k t^k + ...; the correction is s_k = -c_k / h~'(b0)
        SeriesElement val = upoly_eval(h, s);
        auto it = val.terms().find(g1(k));
        FieldElem ck = it == val.terms().end() ? fld->residue()->zero() : it->second;
        // all earlier terms must already vanish
        for (const auto& [g, c] : val.terms()) {
            (void)c;
            REQUIRE_FALSE(grade_lt(g, g1(k)));
        }
        FieldElem sk = -(ck * slope.inv());
        s = s + fld->monomial(g1(k), sk);
    }
    return s;
}

}  // namespace

TEST_CASE("newton polygon shapes") {
    auto e = E(3);
    // X^2 - t: vertices (0,1),(2,0), single slope lambda = 1/2
    SPoly f(std::vector<SeriesElement>{-mono(e, 1, 1), e->zero(), e->one()});
    auto nd = newton_polygon(f);
    REQUIRE(nd.slopes.size() == 1);
    CHECK(grade_cmp(nd.slopes[0].first, g1(Rat(1, 2))) == 0);
    CHECK(nd.slopes[0].second == 2);
    CHECK(nd.vertices.size() == 2);

    // X^2 + t X + t^2: middle point on the hull, single slope 1
    SPoly f2(std::vector<SeriesElement>{mono(e, 2, 1), mono(e, 1, 1), e->one()});
    auto nd2 = newton_polygon(f2);
    REQUIRE(nd2.slopes.size() == 1);
    CHECK(grade_cmp(nd2.slopes[0].first, g1(1)) == 0);
    CHECK(nd2.slopes[0].second == 2);

    // (X-1)(X-t) = X^2 - (1+t)X + t: two slopes 0 and 1
    SPoly f3(std::vector<SeriesElement>{mono(e, 1, 1), -(e->one() + mono(e, 1, 1)), e->one()});
    auto nd3 = newton_polygon(f3);
    REQUIRE(nd3.slopes.size() == 2);
    CHECK(grade_cmp(nd3.slopes[0].first, g1(1)) == 0);
    CHECK(grade_cmp(nd3.slopes[1].first, g1(0)) == 0);
}

TEST_CASE("lambda criterion") {
    auto e = E(3);
    SPoly f(std::vector<SeriesElement>{-mono(e, 1, 1), e->zero(), e->one()});
    auto lp = is_lambda_polynomial(f);
    REQUIRE(lp.has_value());
    CHECK(lp->certified);
    CHECK(grade_cmp(lp->lambda, g1(Rat(1, 2))) == 0);

    SPoly f3(std::vector<SeriesElement>{mono(e, 1, 1), -(e->one() + mono(e, 1, 1)), e->one()});
    CHECK_FALSE(is_lambda_polynomial(f3).has_value());

    // monic, integral, unit constant term: 0-polynomial
    SPoly f0(std::vector<SeriesElement>{e->one() + mono(e, 2, 2), mono(e, 1, 1), e->one()});
    auto lp0 = is_lambda_polynomial(f0);
    REQUIRE(lp0.has_value());
    CHECK(grade_is_zero(lp0->lambda));
}

TEST_CASE("lambda criterion agrees with single-slope Newton polygon") {
    std::mt19937_64 rng(2718);
    for (std::int64_t p : {2, 3, 5}) {
        auto e = E(p);
        std::uniform_int_distribution<int> deg(1, 6), nt(1, 3);
        std::uniform_int_distribution<std::int64_t> expo(0, 5), coef(1, p - 1);
        for (int t = 0; t < 150; ++t) {
            int n = deg(rng);
            std::vector<SeriesElement> c(static_cast<std::size_t>(n) + 1, e->zero());
            for (int i = 0; i <= n; ++i) {
                if (i != 0 && i != n && nt(rng) == 1) continue;  // keep some zero coefficients
                int terms = nt(rng);
                SeriesElement v = e->zero();
                for (int k = 0; k < terms; ++k) v = v + mono(e, expo(rng), coef(rng));
                c[static_cast<std::size_t>(i)] = v;
            }
            if (c[0].is_zero() || c.back().is_zero()) continue;
            SPoly f(std::move(c));
            if (f.degree() < 1) continue;
            bool single = newton_polygon(f).single_slope();
            bool lambda_ok = is_lambda_polynomial(f).has_value();
            CHECK(single == lambda_ok);
        }
    }
}

TEST_CASE("residue polynomials") {
    auto e = E(3);
    auto ge = associated_graded(e);
    // X^2 - (1+t), lambda = 0 -> X^2 - 1
    SPoly f(std::vector<SeriesElement>{-(e->one() + mono(e, 1, 1)), e->zero(), e->one()});
    auto lp = is_lambda_polynomial(f);
    REQUIRE(lp.has_value());
    GPoly r = residue_poly(*lp);
    CHECK(upoly_eq(r, GPoly(std::vector<GradedElement>{-ge->one(), ge->zero(), ge->one()})));

    // (X-1)(X-(1+t)) = X^2 - (2+t)X + (1+t) -> (X-1)^2
    SPoly f2(std::vector<SeriesElement>{e->one() + mono(e, 1, 1),
                                        -(e->from_residue(e->residue()->from_int(2)) + mono(e, 1, 1)),
                                        e->one()});
    auto lp2 = is_lambda_polynomial(f2);
    REQUIRE(lp2.has_value());
    GPoly sq = upoly_mul(GPoly(std::vector<GradedElement>{-ge->one(), ge->one()}),
                         GPoly(std::vector<GradedElement>{-ge->one(), ge->one()}));
    CHECK(upoly_eq(residue_poly(*lp2), sq));
}

TEST_CASE("residue multiplicativity for lambda-matched products") {
    std::mt19937_64 rng(515);
    auto e = E(5);
    std::uniform_int_distribution<std::int64_t> coef(1, 4), tail(1, 4);
    std::uniform_int_distribution<int> deg(1, 3), halfshift(0, 2);
    for (int t = 0; t < 120; ++t) {
        // build lambda-polynomials with lambda = k (integer) by scaling 0-polys
        auto make = [&](int n, std::int64_t lamnum) {
            std::vector<SeriesElement> c;
            for (int i = 0; i <= n; ++i) {
                SeriesElement v = e->zero();
                if (i == 0 || i == n || tail(rng) != 1)
                    v = mono(e, Rat(lamnum) * (n - i), coef(rng)) +
                        mono(e, Rat(lamnum) * (n - i) + 1, tail(rng));
                c.push_back(v);
            }
            return SPoly(std::move(c));
        };
        std::int64_t lam = halfshift(rng);
        SPoly g = make(deg(rng), lam), h = make(deg(rng), lam);
        auto lg = is_lambda_polynomial(g), lh = is_lambda_polynomial(h);
        if (!lg || !lh) continue;
        auto lf = is_lambda_polynomial(upoly_mul(g, h));
        REQUIRE(lf.has_value());
        CHECK(upoly_eq(lf->residue, upoly_mul(lg->residue, lh->residue)));
    }
}

TEST_CASE("coefficient lifts of homogenizable polynomials are lambda-polynomials") {
    // Th-lambda(5)-style: lift each graded coefficient with arbitrary tails
    std::mt19937_64 rng(808);
    auto e = E(3);
    auto ge = associated_graded(e);
    std::uniform_int_distribution<std::int64_t> coef(1, 2), tails(0, 2);
    for (int t = 0; t < 80; ++t) {
        GPoly fp = lift_descended(
            ge,
            fpoly_from_ints(Field::prime(3), {coef(rng), coef(rng), 1}),
            Grade{Rat(tails(rng), 1 + tails(rng))});
        auto lamv = is_homogenizable(fp);
        REQUIRE(lamv.has_value());
        // lift with random higher-order noise
        std::vector<SeriesElement> c;
        for (const auto& gc : fp.c) {
            SeriesElement v = e->zero();
            if (!gc.is_zero()) {
                Grade g = gc.grade();
                v = e->monomial(g, gc.lead_coeff());
                v = v + e->monomial(grade_add(g, g1(1 + tails(rng))), e->residue()->from_int(tails(rng)));
            }
            c.push_back(v);
        }
        SPoly f(std::move(c));
        if (f.degree() < 1) continue;
        auto lp = is_lambda_polynomial(f);
        REQUIRE(lp.has_value());
        CHECK(grade_cmp(lp->lambda, *lamv) == 0);
        CHECK(upoly_eq(lp->residue, fp));
    }
}

TEST_CASE("monicize") {
    auto e = E(3);
    Grade box = e->default_precision();
    // X^2 - t with c = t^(1/2): h = X^2 - 1
    SPoly f(std::vector<SeriesElement>{-mono(e, 1, 1), e->zero(), e->one()});
    auto lp = is_lambda_polynomial(f);
    auto mo = monicize(*lp, box);
    CHECK(mo.eprime->denominators()[0] == 2);
    REQUIRE(mo.h.degree() == 2);
    CHECK(mo.h.c[2] == mo.eprime->one());
    CHECK(mo.h.c[0] == -mo.eprime->one());
    CHECK(mo.h.c[1].is_zero());

    // lambda = 0, c = 1: h = f / a_n
    SPoly f0(std::vector<SeriesElement>{e->one(), e->zero(),
                                        e->from_residue(e->residue()->from_int(2))});
    auto lp0 = is_lambda_polynomial(f0);
    auto mo0 = monicize(*lp0, box);
    CHECK(mo0.eprime == e);
    CHECK(mo0.h.c[0] == e->from_residue(e->residue()->from_int(2)));  // 1/2 = 2 mod 3

    // X^2 - t^3, lambda = 3/2, c = t^(3/2): h = X^2 - 1
    SPoly f3(std::vector<SeriesElement>{-mono(e, 3, 1), e->zero(), e->one()});
    auto lp3 = is_lambda_polynomial(f3);
    CHECK(grade_cmp(lp3->lambda, g1(Rat(3, 2))) == 0);
    auto mo3 = monicize(*lp3, box);
    CHECK(mo3.h.c[0] == -mo3.eprime->one());
    CHECK_THROWS_AS(monicize(*lp3, e, e->one(), box), domain_error);
}

TEST_CASE("hensel_factor: square root of 1+t over GF(3)") {
    auto e = E(3);
    Grade box = e->default_precision();
    auto ge = associated_graded(e);
    SPoly f(std::vector<SeriesElement>{-(e->one() + mono(e, 1, 1)), e->zero(), e->one()});
    auto lp = is_lambda_polynomial(f);
    GPoly l(std::vector<GradedElement>{-ge->one(), ge->one()});  // X - 1
    GPoly m(std::vector<GradedElement>{ge->one(), ge->one()});   // X + 1
    auto [g, h] = hensel_factor(*lp, l, m, box);
    CHECK(upoly_eq(g.residue, l));
    CHECK(upoly_eq(h.residue, m));
    // product reproduces f within the working box
    SPoly prod = upoly_mul(g.f, h.f);
    for (int i = 0; i <= 2; ++i)
        CHECK(agree_to_precision(prod.c[static_cast<std::size_t>(i)],
                                 f.c[static_cast<std::size_t>(i)], box));
    // oracle: the square root of 1+t by coefficient recursion: s^2 = 1+t
    SeriesElement s = e->one();
    {
        std::vector<FieldElem> sc(24, e->residue()->zero());
        sc[0] = e->residue()->one();
        for (int k = 1; k < 24; ++k) {
            // coefficient of t^k in s^2 must match (1 at k=1, else 0)
            FieldElem conv = e->residue()->zero();
            for (int j = 1; j < k; ++j) conv = conv + sc[static_cast<std::size_t>(j)] * sc[static_cast<std::size_t>(k - j)];
            FieldElem target = k == 1 ? e->residue()->one() : e->residue()->zero();
            // 2*s0*sk + conv = target
            sc[static_cast<std::size_t>(k)] =
                (target - conv) * (e->residue()->from_int(2)).inv();
        }
        for (int k = 1; k < 24; ++k)
            if (!sc[static_cast<std::size_t>(k)].is_zero())
                s = s + e->monomial(g1(k), sc[static_cast<std::size_t>(k)]);
    }
    // g = X - s or h = X + s
    SeriesElement root = -g.f.c[0] * g.f.c[1].inv();
    CHECK(agree_to_precision(root, s, g1(20)));
}

TEST_CASE("hensel_factor: exact split of X^4 - t^2 over GF(5)") {
    auto e = E(5);
    Grade box = e->default_precision();
    auto ge = associated_graded(e);
    std::vector<SeriesElement> c(5, e->zero());
    c[0] = -mono(e, 2, 1);
    c[4] = e->one();
    SPoly f(std::move(c));
    auto lp = is_lambda_polynomial(f);
    REQUIRE(lp.has_value());
    std::vector<GradedElement> lc(3, ge->zero());
    lc[0] = -ge->monomial(Grade{Rat(1)}, ge->f0()->one());
    lc[2] = ge->one();
    GPoly l(std::move(lc));  // X^2 - t~
    std::vector<GradedElement> mc(3, ge->zero());
    mc[0] = ge->monomial(Grade{Rat(1)}, ge->f0()->one());
    mc[2] = ge->one();
    GPoly m(std::move(mc));  // X^2 + t~
    auto [g, h] = hensel_factor(*lp, l, m, box);
    // exact factors: X^2 -+ t with no correction terms
    CHECK(g.f.c[0] == (-mono(e, 1, 1)).truncated(*g.f.c[0].precision()));
    CHECK(h.f.c[0] == mono(e, 1, 1).truncated(*h.f.c[0].precision()));
    CHECK(g.f.c[1].is_zero());
    CHECK(h.f.c[1].is_zero());
}

TEST_CASE("hensel_factor input validation") {
    auto e = E(3);
    auto ge = associated_graded(e);
    SPoly f(std::vector<SeriesElement>{-(e->one() + mono(e, 1, 1)), e->zero(), e->one()});
    auto lp = is_lambda_polynomial(f);
    GPoly l(std::vector<GradedElement>{-ge->one(), ge->one()});
    CHECK_THROWS_AS(hensel_factor(*lp, l, l, e->default_precision()), domain_error);
}

TEST_CASE("hensel_root examples with the recursion oracle") {
    auto e3 = E(3);
    Grade box = e3->default_precision();
    // X^2 - (1+t), b = 1
    SPoly f(std::vector<SeriesElement>{-(e3->one() + mono(e3, 1, 1)), e3->zero(), e3->one()});
    auto lp = is_lambda_polynomial(f);
    SeriesElement a = hensel_root(*lp, g1(0), e3->residue()->one(), box);
    SeriesElement check = a * a - (e3->one() + mono(e3, 1, 1));
    CHECK(agree_to_precision(check, e3->zero(), g1(20)));
    SeriesElement oracle = root_by_recursion(f, e3->residue()->one(), 20);
    CHECK(agree_to_precision(a, oracle, g1(20)));
    auto it = a.terms().find(g1(1));
    REQUIRE(it != a.terms().end());
    CHECK(it->second == e3->residue()->from_int(2));  // a = 1 + 2t + 2t^2 + ...

    // linear: X - u
    SeriesElement u = e3->one() + mono(e3, 2, 2);
    SPoly flin(std::vector<SeriesElement>{-u, e3->one()});
    auto lpl = is_lambda_polynomial(flin);
    SeriesElement al = hensel_root(*lpl, g1(0), e3->residue()->one(), box);
    CHECK(agree_to_precision(al, u, g1(20)));

    // X^3 - X - t over GF(5): simple residue root 0 lifts to a = -t - t^3 - ...
    auto e5 = E(5);
    SPoly f5(std::vector<SeriesElement>{-mono(e5, 1, 1), -e5->one(), e5->zero(), e5->one()});
    // not a lambda-polynomial (slopes 0 and 1), but integral at slope 0
    CHECK_FALSE(is_lambda_polynomial(f5).has_value());
    SeriesElement a5 = hensel_root(f5, g1(0), e5->residue()->zero(), box);
    SeriesElement chk = a5 * a5 * a5 - a5 - mono(e5, 1, 1);
    CHECK(agree_to_precision(chk, e5->zero(), g1(20)));
    SeriesElement orac = root_by_recursion(f5, e5->residue()->zero(), 20);
    CHECK(agree_to_precision(a5, orac, g1(20)));
    auto i1 = a5.terms().find(g1(1));
    REQUIRE(i1 != a5.terms().end());
    CHECK(i1->second == e5->residue()->from_int(4));  // -1 mod 5

    // non-simple root is refused
    SPoly fsq(std::vector<SeriesElement>{e3->one() + mono(e3, 1, 1),
                                         e3->from_residue(e3->residue()->from_int(1)), e3->one()});
    auto lpsq = is_lambda_polynomial(fsq);  // residue (X+... ) may have a double root
    if (lpsq) {
        // (X+1)^2 = X^2+2X+1: build it explicitly
        SPoly fd(std::vector<SeriesElement>{e3->one(), e3->from_residue(e3->residue()->from_int(2)),
                                            e3->one()});
        auto lpd = is_lambda_polynomial(fd);
        CHECK_THROWS_AS(hensel_root(*lpd, g1(0), e3->residue()->from_int(2), box), domain_error);
    }
}

TEST_CASE("random simple-root lifts agree with the recursion oracle") {
    std::mt19937_64 rng(1123);
    for (std::int64_t p : {3, 5}) {
        auto e = E(p);
        Grade box = e->default_precision();
        std::uniform_int_distribution<std::int64_t> coef(0, p - 1);
        std::uniform_int_distribution<int> deg(2, 4);
        int done = 0;
        while (done < 30) {
            int n = deg(rng);
            std::vector<SeriesElement> c;
            for (int i = 0; i <= n; ++i) {
                SeriesElement v = e->from_residue(e->residue()->from_int(coef(rng)));
                v = v + mono(e, 1, coef(rng));
                c.push_back(v);
            }
            c.back() = e->one();
            SPoly f(std::move(c));
            if (f.c[0].is_zero()) continue;
            auto lp = is_lambda_polynomial(f);
            if (!lp || !grade_is_zero(lp->lambda)) continue;
            // find a simple residue root
            FPoly res;
            for (const auto& cc : f.c) {
                auto it = cc.terms().find(g1(0));
                res.c.push_back(it == cc.terms().end() ? e->residue()->zero() : it->second);
            }
            res.normalize();
            FPoly resd = upoly_derivative(res, e->residue()->one());
            std::optional<FieldElem> simple;
            for (const auto& r : e->residue()->elements())
                if (upoly_eval(res, r).is_zero() && !upoly_eval(resd, r).is_zero()) {
                    simple = r;
                    break;
                }
            if (!simple) continue;
            SeriesElement a = hensel_root(*lp, g1(0), *simple, box);
            SeriesElement orac = root_by_recursion(f, *simple, 24);
            CHECK(agree_to_precision(a, orac, g1(24)));
            ++done;
        }
    }
}

TEST_CASE("slope splitting") {
    auto e = E(3);
    Grade box = e->default_precision();
    // (X-1)(X-t): slopes 0 and 1
    SPoly f(std::vector<SeriesElement>{mono(e, 1, 1), -(e->one() + mono(e, 1, 1)), e->one()});
    auto split = slope_factor(f, box);
    CHECK(split.x_power == 0);
    REQUIRE(split.pieces.size() == 2);
    CHECK(grade_is_zero(split.pieces[0].lambda));
    CHECK(grade_cmp(split.pieces[1].lambda, g1(1)) == 0);
    SPoly prod = upoly_mul(split.pieces[0].piece.f, split.pieces[1].piece.f);
    for (std::size_t i = 0; i < f.c.size(); ++i)
        CHECK(agree_to_precision(prod.c[i], f.c[i], g1(20)));

    // X^2 * (X - t): stripping X powers first
    SPoly g(std::vector<SeriesElement>{e->zero(), e->zero(), -mono(e, 1, 1), e->one()});
    auto s2 = slope_factor(g, box);
    CHECK(s2.x_power == 2);
    REQUIRE(s2.pieces.size() == 1);
}

TEST_CASE("build_root_extension") {
    Grade box{Rat(24)};
    // totally ramified degree 2 over GF(3)((t))
    auto e3 = E(3);
    auto ge3 = associated_graded(e3);
    GPoly g(std::vector<GradedElement>{-ge3->monomial(g1(1), ge3->f0()->one()), ge3->zero(), ge3->one()});
    auto ve = build_root_extension(e3, g, box);
    CHECK(ve.degree == 2);
    auto d = valued_degrees(ve);
    CHECK(d.defectless);
    CHECK(d.ram_index == 2);
    CHECK(d.residue_degree == 1);
    CHECK(classify_valued(ve).totally_ramified);
    // gen^2 = t
    SeriesElement sq = ve.gen * ve.gen - transport(e3->monomial(g1(1), e3->residue()->one()), ve.ambient);
    CHECK(agree_to_precision(sq, ve.ambient->zero(), g1(20)));

    // inertial degree 2 over GF(5)((t)): X^2 - 2
    auto e5 = E(5);
    auto ge5 = associated_graded(e5);
    GPoly g2(std::vector<GradedElement>{-ge5->constant(ge5->f0()->from_int(2)), ge5->zero(), ge5->one()});
    auto ve2 = build_root_extension(e5, g2, box);
    CHECK(ve2.residue->cardinality() == 25);
    CHECK(classify_valued(ve2).inertial);
    CHECK(valued_degrees(ve2).defectless);

    // X^2 - 2t over GF(5): lattice grows, residue fixed
    GPoly g3(std::vector<GradedElement>{-ge5->monomial(g1(1), ge5->f0()->from_int(2)), ge5->zero(), ge5->one()});
    auto ve3 = build_root_extension(e5, g3, box);
    CHECK(valued_degrees(ve3).ram_index == 2);
    CHECK(valued_degrees(ve3).residue_degree == 1);
    CHECK(ve3.residue->same_as(*e5->residue()));
}

TEST_CASE("build_purely_wild") {
    Grade box{Rat(24)};
    // GF(3)((t)), b = t, n = 1: K = E(t^(1/3))
    auto e3 = E(3);
    auto ve = build_purely_wild(e3, e3->monomial(g1(1), e3->residue()->one()), 1, box);
    CHECK(ve.degree == 3);
    auto d = valued_degrees(ve);
    CHECK(d.defectless);
    CHECK(d.ram_index == 3);
    auto fl = classify_valued(ve);
    CHECK(fl.purely_wild);
    CHECK(fl.totally_ramified);
    CHECK_FALSE(fl.tame);
    CHECK((ve.gen.pow(3) - transport(e3->monomial(g1(1), e3->residue()->one()), ve.ambient)).is_zero());

    // GF(4)((t)), b = w*t with w the GF(4) generator, p = 2
    auto f4 = Field::extension(2, {1, 1, 1});
    auto e4 = SeriesField::make(f4, {"t"});
    SeriesElement b = e4->monomial(g1(1), f4->generator());
    auto ve4 = build_purely_wild(e4, b, 1, box);
    CHECK(ve4.degree == 2);
    CHECK(classify_valued(ve4).purely_wild);
    CHECK((ve4.gen * ve4.gen - transport(b, ve4.ambient)).is_zero());
    // the square root of w is w^2
    CHECK(ve4.gen.leading_coeff() == f4->generator() * f4->generator());

    // p^2 case
    auto ve9 = build_purely_wild(e3, e3->monomial(g1(1), e3->residue()->one()), 2, box);
    CHECK(ve9.degree == 9);
    CHECK(valued_degrees(ve9).defectless);

    // dimension mismatch is refused
    CHECK_THROWS_AS(build_purely_wild(e3, e3->monomial(g1(3), e3->residue()->one()), 1, box),
                    domain_error);
}

TEST_CASE("tame correspondence") {
    Grade box{Rat(24)};
    auto e5 = E(5);
    // inertial GF(25) step
    auto tc1 = tame_correspond(
        e5,
        {[](const GDescPtr& gk) {
            return GPoly(std::vector<GradedElement>{-gk->constant(gk->f0()->from_int(2)), gk->zero(),
                                                    gk->one()});
        }},
        box);
    CHECK(tc1.ext.degree == 2);
    CHECK(tc1.galois);
    CHECK(tc1.ext.residue->cardinality() == 25);
    CHECK(valued_degrees(tc1.ext).defectless);

    // Kummer x^2 = t: Galois with two conjugate roots
    auto tc2 = tame_correspond(
        e5,
        {[](const GDescPtr& gk) {
            return GPoly(std::vector<GradedElement>{-gk->monomial(Grade{Rat(1)}, gk->f0()->one()),
                                                    gk->zero(), gk->one()});
        }},
        box);
    CHECK(tc2.ext.degree == 2);
    CHECK(tc2.galois);
    REQUIRE(tc2.steps.size() == 1);
    CHECK(tc2.steps[0].conjugates.size() == 2);
    // the two valued roots are negatives of each other
    SeriesElement sum = tc2.steps[0].conjugates[0] + tc2.steps[0].conjugates[1];
    CHECK(agree_to_precision(sum, tc2.ext.ambient->zero(), g1(20)));

    // composite: inertial degree 2 then ramified degree 3
    auto tc3 = tame_correspond(
        e5,
        {[](const GDescPtr& gk) {
            return GPoly(std::vector<GradedElement>{-gk->constant(gk->f0()->from_int(2)), gk->zero(),
                                                    gk->one()});
         },
         [](const GDescPtr& gk) {
             std::vector<GradedElement> c(4, gk->zero());
             c[0] = -gk->monomial(Grade{Rat(1)}, gk->f0()->one());
             c[3] = gk->one();
             return GPoly(std::move(c));
         }},
        box);
    CHECK(tc3.ext.degree == 6);
    auto d3 = valued_degrees(tc3.ext);
    CHECK(d3.defectless);
    CHECK(d3.residue_degree == 2);
    CHECK(d3.ram_index == 3);

    // wild steps are refused
    auto e3 = E(3);
    CHECK_THROWS_AS(tame_correspond(e3,
                                    {[](const GDescPtr& gk) {
                                        std::vector<GradedElement> c(4, gk->zero());
                                        c[0] = -gk->monomial(Grade{Rat(1)}, gk->f0()->one());
                                        c[3] = gk->one();
                                        return GPoly(std::move(c));
                                    }},
                                    box),
                    domain_error);
}
