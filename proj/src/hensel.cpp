#include "grval/hensel.hpp"

#include <algorithm>

namespace grval {

namespace {

SeriesFieldPtr field_of(const SPoly& f) {
    for (const auto& c : f.c)
        if (c.field()) return c.field();
    throw domain_error("polynomial without coefficients");
}

// canonical representative modulo the box: known terms below the box, kept
// exact (internal lifting discipline; precision is re-attached at the end)
SeriesElement as_repr(const SeriesElement& x, const Grade& box) {
    auto fld = x.field();
    std::vector<std::pair<Grade, FieldElem>> terms;
    for (const auto& [g, c] : x.terms())
        if (grade_cw_lt(g, box)) terms.emplace_back(g, c);
    return fld->from_terms(std::move(terms));
}

SPoly spoly_repr(const SPoly& f, const Grade& box) {
    SPoly r;
    for (const auto& c : f.c) r.c.push_back(as_repr(c, box));
    r.normalize();
    return r;
}

SPoly spoly_with_precision(const SPoly& f, const Grade& box) {
    SPoly r;
    r.c = f.c;
    for (auto& c : r.c) c = c.truncated(box);
    while (!r.c.empty() && r.c.back().is_zero() && r.c.back().exact()) r.c.pop_back();
    return r;
}

// representatives are only taken when the element's own precision covers the box
void require_precision(const SPoly& f, const Grade& box) {
    for (const auto& c : f.c) {
        if (!c.precision()) continue;
        for (std::size_t i = 0; i < box.size(); ++i)
            if ((*c.precision())[i] < box[i])
                throw internal_error("working precision does not cover the requested box");
    }
}

Grade min_coeff_valuation(const SPoly& f) {
    std::optional<Grade> best;
    for (const auto& c : f.c) {
        if (c.is_zero()) continue;
        const Grade& g = c.terms().begin()->first;
        if (!best || grade_lt(g, *best)) best = g;
    }
    if (!best) throw internal_error("min_coeff_valuation of zero polynomial");
    return *best;
}

bool spoly_repr_zero(const SPoly& f, const Grade& box) {
    for (const auto& c : f.c)
        for (const auto& [g, cc] : c.terms()) {
            (void)cc;
            if (grade_cw_lt(g, box)) return false;
        }
    return true;
}

}  // namespace

// --------------------------------------------------------------------------
// Newton polygon

NewtonData newton_polygon(const SPoly& f) {
    if (f.degree() < 1) throw domain_error("newton_polygon needs degree >= 1");
    if (f.c[0].is_zero() && f.c[0].exact())
        throw domain_error("newton_polygon requires a nonzero constant term");
    std::vector<std::pair<std::int64_t, Grade>> pts;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        const SeriesElement& c = f.c[i];
        if (c.is_zero() && c.exact()) continue;
        auto v = c.valuation();  // throws when indeterminate
        pts.emplace_back(static_cast<std::int64_t>(i), *v);
    }
    // lower convex hull, i ascending; grades compare lexicographically
    NewtonData nd;
    auto cross_sign = [](const std::pair<std::int64_t, Grade>& a, const std::pair<std::int64_t, Grade>& b,
                         const std::pair<std::int64_t, Grade>& c) {
        // sign of (b.i-a.i)(c.v-a.v) - (c.i-a.i)(b.v-a.v)
        Grade lhs = grade_scale(grade_sub(c.second, a.second), Rat(b.first - a.first));
        Grade rhs = grade_scale(grade_sub(b.second, a.second), Rat(c.first - a.first));
        return grade_cmp(lhs, rhs);
    };
    for (const auto& p : pts) {
        while (nd.vertices.size() >= 2 &&
               cross_sign(nd.vertices[nd.vertices.size() - 2], nd.vertices.back(), p) <= 0)
            nd.vertices.pop_back();
        nd.vertices.push_back(p);
    }
    for (std::size_t k = 0; k + 1 < nd.vertices.size(); ++k) {
        std::int64_t run = nd.vertices[k + 1].first - nd.vertices[k].first;
        Grade lambda =
            grade_scale(grade_sub(nd.vertices[k].second, nd.vertices[k + 1].second), Rat(1, run));
        nd.slopes.emplace_back(std::move(lambda), run);
    }
    return nd;
}

// --------------------------------------------------------------------------
// lambda polynomials and residues

std::optional<LambdaPolynomial> is_lambda_polynomial(const SPoly& f) {
    auto fld = field_of(f);
    auto ge = associated_graded(fld);
    LambdaPolynomial lp;
    lp.f = f;
    lp.ge = ge;
    if (f.degree() == 0) {
        lp.lambda = grade_zero(fld->rank());
        lp.certified = true;
        lp.residue = GPoly(std::vector<GradedElement>{residue_image(ge, f.c[0])});
        return lp;
    }
    if (f.is_zero() || (f.c[0].is_zero() && f.c[0].exact()))
        throw domain_error("lambda criterion requires a_0 * a_n != 0");
    int n = f.degree();
    Grade v0 = *f.c[0].valuation();
    Grade vn = *f.lead().valuation();
    lp.lambda = grade_scale(grade_sub(v0, vn), Rat(1, n));
    std::vector<GradedElement> res;
    for (int i = 0; i <= n; ++i) {
        const SeriesElement& a = f.c[static_cast<std::size_t>(i)];
        Grade bound = grade_add(grade_scale(lp.lambda, Rat(n - i)), vn);
        if (a.is_zero() && a.exact()) {
            res.push_back(ge->zero());
            continue;
        }
        if (!a.certainly_at_or_above(bound)) {
            if (!a.is_zero() && grade_lt(a.terms().begin()->first, bound))
                return std::nullopt;  // a known term violates the bound
            throw domain_error("lambda criterion: coefficient valuation indeterminate");
        }
        // residue coefficient: needs certainty at the bound itself
        auto it = a.terms().find(bound);
        auto mu = a.min_unknown();
        if (mu && !grade_lt(bound, *mu))
            throw domain_error("lambda residue: coefficient indeterminate at the hull");
        if (it != a.terms().end())
            res.push_back(ge->monomial(bound, it->second));
        else
            res.push_back(ge->zero());
    }
    lp.certified = true;
    lp.residue = GPoly(std::move(res));
    if (lp.residue.degree() != n) throw internal_error("residue degree mismatch");
    return lp;
}

// --------------------------------------------------------------------------
// monicization

Monicized monicize(const LambdaPolynomial& lp, const SeriesFieldPtr& eprime, const SeriesElement& c,
                   const Grade& workbox) {
    if (!lp.certified) throw domain_error("monicize: uncertified polynomial");
    auto cv = c.valuation();
    if (!cv || grade_cmp(*cv, lp.lambda) != 0)
        throw domain_error("monicize: v(c) must equal lambda");
    Monicized mo;
    mo.eprime = eprime;
    mo.c = c;
    int n = lp.f.degree();
    SeriesElement an = transport(lp.f.lead(), eprime);
    mo.lead = an;
    SeriesElement cn = c.pow(n);
    SeriesElement scale = (an * cn).inv_to(grade_add(workbox, grade_add(workbox, Grade(workbox.size(), Rat(4)))));
    std::vector<SeriesElement> coeffs;
    SeriesElement cpow = eprime->one();
    for (int i = 0; i <= n; ++i) {
        SeriesElement ai = transport(lp.f.c[static_cast<std::size_t>(i)], eprime);
        coeffs.push_back(ai * cpow * scale);
        cpow = cpow * c;
    }
    mo.h = SPoly(std::move(coeffs));
    // integrality
    for (const auto& b : mo.h.c)
        if (!b.certainly_at_or_above(grade_zero(eprime->rank())))
            throw internal_error("monicize: non-integral coefficient");
    return mo;
}

Monicized monicize(const LambdaPolynomial& lp, const Grade& workbox) {
    auto fld = field_of(lp.f);
    SeriesFieldPtr ep = fld;
    for (int i = 0; i < fld->rank(); ++i) {
        Int d = rat_den(lp.lambda[static_cast<std::size_t>(i)]);
        std::int64_t have = fld->denominators()[static_cast<std::size_t>(i)];
        Int need = int_lcm(Int(have), d);
        if (need != have) ep = adjoin_ramified(ep, i, static_cast<std::int64_t>(need / have));
    }
    SeriesElement c = ep->monomial(lp.lambda, ep->residue()->one());
    return monicize(lp, ep, c, workbox);
}

// --------------------------------------------------------------------------
// core quadratic lifting

namespace {

// residue of an integral polynomial at grade zero, as an F0 polynomial
FPoly grade_zero_residue(const SPoly& h) {
    auto fld = field_of(h);
    std::vector<FieldElem> out;
    Grade zero = grade_zero(fld->rank());
    for (const auto& c : h.c) {
        auto it = c.terms().find(zero);
        out.push_back(it == c.terms().end() ? fld->residue()->zero() : it->second);
    }
    return FPoly(std::move(out));
}

SPoly lift_f0_poly(const SeriesFieldPtr& fld, const FPoly& q) {
    std::vector<SeriesElement> out;
    for (const auto& c : q.c) out.push_back(fld->from_residue(c));
    return SPoly(std::move(out));
}

// quadratic Hensel lifting of the coprime residue split h~ = l0 * m0 over the
// valuation ring; all arithmetic on exact representatives modulo the box
std::pair<SPoly, SPoly> hensel_core(const SPoly& h_in, const FPoly& l0, const FPoly& m0,
                                    const Grade& box) {
    auto fld = field_of(h_in);
    require_precision(h_in, box);
    SPoly h = spoly_repr(h_in, box);
    FPoly prod = upoly_mul(l0, m0);
    if (!upoly_eq(prod, grade_zero_residue(h)))
        throw domain_error("hensel_core: split does not match the residue");
    auto [gc, s0, t0] = upoly_xgcd(l0, m0);
    if (gc.degree() != 0) throw domain_error("hensel_core: residue factors are not coprime");
    if (fpoly_resultant(l0, m0).is_zero())
        throw internal_error("hensel_core: vanishing resultant despite trivial gcd");

    SPoly G = lift_f0_poly(fld, l0);
    SPoly H = lift_f0_poly(fld, m0);
    SPoly S = lift_f0_poly(fld, s0);
    SPoly T = lift_f0_poly(fld, t0);
    SPoly one = spoly_from_ints(fld, {1});

    std::optional<Grade> last_gain;
    for (int round = 0; round < 200; ++round) {
        SPoly e = spoly_repr(upoly_sub(h, upoly_mul(G, H)), box);
        if (e.is_zero() || spoly_repr_zero(e, box)) {
            return {spoly_repr(G, box), spoly_repr(H, box)};
        }
        Grade gain = min_coeff_valuation(e);
        if (last_gain && !grade_lt(*last_gain, gain))
            throw internal_error("hensel_core: no progress in the lifting iteration");
        last_gain = gain;
        auto [q, r] = upoly_divrem(upoly_mul(S, e), H);
        G = spoly_repr(upoly_add(G, upoly_add(upoly_mul(T, e), upoly_mul(q, G))), box);
        H = spoly_repr(upoly_add(H, r), box);
        SPoly b = spoly_repr(upoly_sub(upoly_add(upoly_mul(S, G), upoly_mul(T, H)), one), box);
        auto [cq, dq] = upoly_divrem(upoly_mul(S, b), H);
        S = spoly_repr(upoly_sub(S, dq), box);
        T = spoly_repr(upoly_sub(T, upoly_add(upoly_mul(T, b), upoly_mul(cq, G))), box);
    }
    throw internal_error("hensel_core: iteration cap exceeded");
}

// descend a homogeneous-side factor to its monicized F0 form: l0 = l(c~ X) / (lead * c~^deg)
FPoly descend_factor(const GPoly& l, const GDescPtr& geprime, const GradedElement& ctilde) {
    GPoly lt = graded_transport(l, geprime);
    GradedElement scale = (lt.lead() * ctilde.pow(lt.degree())).inv();
    std::vector<FieldElem> out;
    GradedElement cpow = geprime->one();
    for (int i = 0; i <= lt.degree(); ++i) {
        GradedElement v = lt.c[static_cast<std::size_t>(i)] * cpow * scale;
        if (v.is_zero()) {
            out.push_back(geprime->f0()->zero());
        } else {
            if (!v.is_homogeneous() || !grade_is_zero(v.grade()))
                throw internal_error("descend_factor: coefficient not of grade zero");
            out.push_back(v.lead_coeff());
        }
        cpow = cpow * ctilde;
    }
    return FPoly(std::move(out));
}

// g(X) = lead * c^(deg G) * G(X/c), mapped back into the base field
SPoly demonicize(const SPoly& G, const SeriesElement& c, const SeriesElement& lead,
                 const SeriesFieldPtr& base) {
    int dg = G.degree();
    std::vector<SeriesElement> out;
    for (int i = 0; i <= dg; ++i) {
        SeriesElement v = G.c[static_cast<std::size_t>(i)] * c.pow(dg - i) * lead;
        out.push_back(v);
    }
    SPoly res(std::move(out));
    SPoly restricted;
    for (const auto& cc : res.c) restricted.c.push_back(restrict_lattice(cc, base));
    restricted.normalize();
    return restricted;
}

}  // namespace

std::pair<LambdaPolynomial, LambdaPolynomial> hensel_factor(const LambdaPolynomial& lp,
                                                            const GPoly& l, const GPoly& m,
                                                            const Grade& workbox) {
    if (!lp.certified) throw domain_error("hensel_factor: uncertified polynomial");
    if (!upoly_eq(upoly_mul(l, m), lp.residue))
        throw domain_error("hensel_factor: split does not multiply to the residue");
    if (l.degree() == 0 || m.degree() == 0)
        throw domain_error("hensel_factor: split must be proper (both factors of positive degree)");
    auto fld = field_of(lp.f);

    Monicized mo = monicize(lp, workbox);
    auto geprime = associated_graded(mo.eprime);
    GradedElement ctilde = residue_image(geprime, mo.c);
    FPoly l0 = descend_factor(l, geprime, ctilde);
    FPoly m0 = descend_factor(m, geprime, ctilde);

    auto [G, H] = hensel_core(mo.h, l0, m0, workbox);

    // distribute the leading unit so the residues come out exactly as l and m:
    // g gets the monomial lift A of lead(l), h gets a_n / A
    GradedElement llead = l.lead();
    SeriesElement A = mo.eprime->monomial(llead.grade(), llead.lead_coeff());
    SeriesElement B = mo.lead * A.inv();
    SPoly g = demonicize(G, mo.c, A, fld);
    SPoly h = demonicize(H, mo.c, B, fld);

    auto lpg = is_lambda_polynomial(spoly_with_precision(g, workbox));
    auto lph = is_lambda_polynomial(spoly_with_precision(h, workbox));
    if (!lpg || !lph) throw internal_error("hensel_factor: lifted factor lost the lambda property");
    GPoly lr = graded_transport(lpg->residue, lp.ge);
    GPoly mr = graded_transport(lph->residue, lp.ge);
    if (!upoly_eq(lr, l) || !upoly_eq(mr, m))
        throw internal_error("hensel_factor: residues do not match the requested split");
    return {*lpg, *lph};
}

SeriesElement hensel_root(const SPoly& f, const Grade& lambda, const FieldElem& bcoeff,
                          const Grade& workbox) {
    auto fld = field_of(f);
    if (f.degree() < 1) throw domain_error("hensel_root: degree must be >= 1");
    if (!fld->grade_in_lattice(lambda))
        throw domain_error("hensel_root: root grade outside the value lattice");
    if (!bcoeff.field()->same_as(*fld->residue()))
        throw domain_error("hensel_root: root coefficient from the wrong residue field");
    // integrality of the monicization: v(a_i) >= (n-i) lambda + v(a_n)
    int n = f.degree();
    Grade vn = *f.lead().valuation();
    for (int i = 0; i < n; ++i) {
        const SeriesElement& a = f.c[static_cast<std::size_t>(i)];
        if (a.is_zero() && a.exact()) continue;
        Grade bound = grade_add(grade_scale(lambda, Rat(n - i)), vn);
        if (!a.certainly_at_or_above(bound))
            throw domain_error("hensel_root: polynomial is not integral at this slope");
    }

    LambdaPolynomial lp;
    lp.f = f;
    lp.lambda = lambda;
    lp.certified = true;  // integrality established above; the residue is unused
    lp.ge = associated_graded(fld);
    SeriesElement c = fld->monomial(lambda, fld->residue()->one());
    Monicized mo = monicize(lp, fld, c, workbox);
    require_precision(mo.h, workbox);
    FPoly hres = grade_zero_residue(spoly_repr(mo.h, workbox));
    FieldElem b0 = bcoeff;
    if (!upoly_eval(hres, b0).is_zero()) throw domain_error("hensel_root: not a residue root");
    FPoly hresd = upoly_derivative(hres, fld->residue()->one());
    if (upoly_eval(hresd, b0).is_zero()) throw domain_error("hensel_root: residue root is not simple");

    SPoly h = spoly_repr(mo.h, workbox);
    SPoly hd;
    {
        SeriesElement one = fld->one();
        hd = upoly_derivative(h, one);
    }
    SeriesElement x = fld->from_residue(b0);
    std::optional<Grade> last;
    for (int round = 0; round < 200; ++round) {
        SeriesElement fx = as_repr(upoly_eval(h, x), workbox);
        if (fx.is_zero()) {
            SeriesElement a = (c * x).truncated(grade_add(workbox, lp.lambda));
            return a;
        }
        Grade gain = fx.terms().begin()->first;
        if (last && !grade_lt(*last, gain))
            throw internal_error("hensel_root: no progress in the iteration");
        last = gain;
        SeriesElement der = as_repr(upoly_eval(hd, x), workbox);
        x = as_repr(x - fx * der.inv_to(workbox), workbox);
    }
    throw internal_error("hensel_root: iteration cap exceeded");
}

SeriesElement hensel_root(const LambdaPolynomial& lp, const Grade& bgrade, const FieldElem& bcoeff,
                          const Grade& workbox) {
    if (!lp.certified) throw domain_error("hensel_root: uncertified polynomial");
    if (grade_cmp(bgrade, lp.lambda) != 0)
        throw domain_error("hensel_root: root grade must equal lambda");
    return hensel_root(lp.f, bgrade, bcoeff, workbox);
}

SeriesElement hensel_root(const LambdaPolynomial& lp, const GradedElement& b, const Grade& workbox) {
    if (!b.is_homogeneous() || b.is_zero())
        throw domain_error("hensel_root: root must be nonzero homogeneous");
    return hensel_root(lp, b.grade(), b.lead_coeff(), workbox);
}

// --------------------------------------------------------------------------
// slope splitting

SlopeSplit slope_factor(const SPoly& f_in, const Grade& workbox) {
    SlopeSplit out;
    SPoly f = f_in;
    auto fld = field_of(f);
    while (f.degree() > 0 && f.c[0].is_zero()) {
        if (!f.c[0].exact())
            throw domain_error("slope_factor: indeterminate constant term");
        f.c.erase(f.c.begin());
        ++out.x_power;
    }
    out.unit = f.lead();
    if (f.degree() < 1) return out;

    while (f.degree() >= 1) {
        auto lp = is_lambda_polynomial(f);
        if (lp) {
            out.pieces.push_back({*lp, lp->lambda});
            break;
        }
        NewtonData nd = newton_polygon(f);
        // rightmost segment: least root value; its monicization is integral
        Grade lam = nd.slopes.back().first;
        std::int64_t len = nd.slopes.back().second;
        LambdaPolynomial fake;
        fake.f = f;
        fake.lambda = lam;
        fake.certified = true;  // only the inequality matters for monicize
        fake.ge = associated_graded(fld);
        Monicized mo = monicize(fake, workbox);
        FPoly hres = grade_zero_residue(spoly_repr(mo.h, workbox));
        // hres = X^(n-len) * w with w(0) != 0
        int xs = 0;
        FPoly w = hres;
        while (w.degree() > 0 && w.c[0].is_zero()) {
            w.c.erase(w.c.begin());
            ++xs;
        }
        if (xs != f.degree() - len) throw internal_error("slope_factor: residue shape mismatch");
        std::vector<FieldElem> xs_poly(static_cast<std::size_t>(xs) + 1, fld->residue()->zero());
        xs_poly.back() = fld->residue()->one();
        auto [G, H] = hensel_core(mo.h, w, FPoly(std::move(xs_poly)), workbox);
        SPoly piece = demonicize(upoly_scale(G, mo.lead), mo.c, mo.eprime->one(), fld);
        SPoly rest = demonicize(H, mo.c, mo.eprime->one(), fld);
        auto lpp = is_lambda_polynomial(spoly_with_precision(piece, workbox));
        if (!lpp) throw internal_error("slope_factor: extracted piece is not a lambda polynomial");
        out.pieces.push_back({*lpp, lam});
        f = spoly_repr(rest, workbox);
    }
    return out;
}

// --------------------------------------------------------------------------
// extension builders

namespace {

SeriesFieldPtr ambient_cover(const SeriesFieldPtr& e, const Lattice& gamma) {
    SeriesFieldPtr k = e;
    for (int i = 0; i < e->rank(); ++i) {
        Int need = 1;
        for (const auto& row : gamma.basis()) need = int_lcm(need, rat_den(row[static_cast<std::size_t>(i)]));
        std::int64_t have = k->denominators()[static_cast<std::size_t>(i)];
        Int l = int_lcm(Int(have), need);
        if (l != have) k = adjoin_ramified(k, i, static_cast<std::int64_t>(l / have));
    }
    return k;
}

SPoly lift_gpoly(const GPoly& g, const SeriesFieldPtr& fld) {
    FieldEmbedding emb = FieldEmbedding::find(g.c[0].desc()->f0(), fld->residue());
    std::vector<SeriesElement> out;
    for (const auto& coeff : g.c) {
        SeriesElement v = fld->zero();
        for (const auto& [e, cc] : coeff.terms())
            v = v + fld->monomial(coeff.desc()->grade_of_exp(e), emb.apply(cc));
        out.push_back(v);
    }
    return SPoly(std::move(out));
}

// Ambient plan for lifting a root of g: the residue field is grown in steps
// of [K0 : GF(p)] until the monicized residue acquires a simple root (the
// leading unit of the generator can live in a proper extension of the true
// residue field of K).
struct LiftPlan {
    SeriesFieldPtr ambient;
    SPoly f;
    Grade lambda;
    std::vector<FieldElem> simple_roots;  // of the monicized residue, in order
};

LiftPlan plan_tame_lift(const SeriesFieldPtr& base, const RootExtension& gre, const GPoly& g,
                        const Grade& workbox) {
    std::int64_t p = base->residue()->characteristic();
    int k0deg = gre.emb.top()->f0()->degree();
    for (int mult = 1; mult <= std::max(1, g.degree()); ++mult) {
        int deg = k0deg * mult;
        FieldPtr res = deg == 1 ? Field::prime(p)
                                : (gre.emb.top()->f0()->degree() == deg
                                       ? gre.emb.top()->f0()
                                       : Field::extension_canonical(p, deg));
        SeriesFieldPtr ambient = ambient_cover(make_inertial(base, res), gre.emb.top()->lattice());
        SPoly f = lift_gpoly(g, ambient);
        auto lp = is_lambda_polynomial(f);
        if (!lp) throw internal_error("plan_tame_lift: monomial lift lost the lambda property");
        Monicized mo = monicize(*lp, workbox);
        std::vector<FieldElem> found;
        {
            // grade-zero residue of the monicized polynomial over the trial field
            std::vector<FieldElem> rc;
            Grade zero = grade_zero(mo.eprime->rank());
            for (const auto& c : mo.h.c) {
                auto it = c.terms().find(zero);
                rc.push_back(it == c.terms().end() ? mo.eprime->residue()->zero() : it->second);
            }
            FPoly hres(std::move(rc));
            for (const auto& [r, m] : poly_roots(hres))
                if (m == 1) found.push_back(r);
        }
        if (!found.empty()) {
            LiftPlan plan;
            plan.ambient = ambient;
            plan.f = std::move(f);
            plan.lambda = gre.lambda;
            plan.simple_roots = std::move(found);
            return plan;
        }
    }
    throw domain_error("no simple residue root found: the input is not tame over the residue");
}

}  // namespace

ValuedDegrees valued_degrees(const ValuedExtension& ve) {
    ValuedDegrees d;
    d.residue_degree = ve.residue->degree() / ve.base->residue()->degree();
    d.ram_index = ve.gamma.index_over(ve.base->value_lattice());
    d.total = d.residue_degree * d.ram_index;
    d.defectless = d.total == ve.degree;
    return d;
}

ExtensionFlags classify_valued(const ValuedExtension& ve) {
    auto d = valued_degrees(ve);
    ExtensionFlags f;
    f.residue_degree = d.residue_degree;
    f.ram_index = d.ram_index;
    f.total = ve.degree;
    f.inertial = ve.degree == d.residue_degree;
    f.totally_ramified = ve.degree == d.ram_index;
    std::int64_t p = ve.base->residue()->characteristic();
    bool p_torsion_free = true, pgroup = true;
    if (p > 0) {
        auto q = quotient_structure(ve.gamma.basis(), ve.base->value_lattice());
        for (const auto& dinv : q.invariant_factors)
            if (dinv % p == 0) p_torsion_free = false;
        Int o = q.order;
        while (o > 1) {
            if (o % p != 0) {
                pgroup = false;
                break;
            }
            o /= p;
        }
    }
    f.tame = (p == 0 || p_torsion_free) && d.defectless;
    f.purely_wild = p > 0 && d.residue_degree == 1 && pgroup && ve.degree > 1 && d.defectless;
    return f;
}

ValuedExtension build_root_extension(const SeriesFieldPtr& e, const GPoly& g, const Grade& workbox) {
    auto ge = associated_graded(e);
    if (!g.c[0].desc()->same_as(*ge))
        throw domain_error("build_root_extension: polynomial is not over GE");
    RootExtension gre = build_root_extension_graded(ge, g);
    const GDescPtr& top = gre.emb.top();

    LiftPlan plan = plan_tame_lift(e, gre, g, workbox);
    SeriesElement a = hensel_root(plan.f, plan.lambda, plan.simple_roots[0], workbox);

    ValuedExtension ve;
    ve.base = e;
    ve.ambient = plan.ambient;
    ve.gamma = top->lattice();
    ve.residue = top->f0();
    ve.gk = top;
    ve.gen = a;
    ve.gen_residue = residue_image(associated_graded(plan.ambient), a);
    ve.minpoly = plan.f;
    ve.degree = g.degree();
    if (grade_cmp(ve.gen_residue.grade(), gre.lambda) != 0)
        throw internal_error("build_root_extension: residue grade of the root does not match");
    return ve;
}

ValuedExtension build_purely_wild(const SeriesFieldPtr& e, const SeriesElement& b, int n,
                                  const Grade& workbox) {
    std::int64_t p = e->residue()->characteristic();
    if (p == 0) throw domain_error("build_purely_wild needs positive residue characteristic");
    if (n < 1) throw domain_error("build_purely_wild: n must be >= 1");
    auto vb = b.valuation();
    if (!vb) throw domain_error("build_purely_wild: b must be nonzero");
    Int P = int_pow(Int(p), static_cast<std::uint64_t>(n));
    Grade lam = grade_scale(*vb, Rat(1, P));
    Int ord = ramification_order(lam, e->value_lattice());
    if (ord != P)
        throw domain_error("build_purely_wild: GE[a~] does not have dimension p^n over GE");

    // graded side first: X^(p^n) - b~ presents GK = GE[a~]
    auto ge = associated_graded(e);
    std::vector<GradedElement> gc(static_cast<std::size_t>(P) + 1, ge->zero());
    gc[0] = -residue_image(ge, b);
    gc.back() = ge->one();
    RootExtension gre = build_root_extension_graded(ge, GPoly(std::move(gc)));
    const GDescPtr& top = gre.emb.top();
    if (!top->f0()->same_as(*e->residue()))
        throw internal_error("build_purely_wild: residue grew on a purely wild build");

    SeriesFieldPtr ambient = ambient_cover(e, top->lattice());
    SeriesElement a = transport(b, ambient);
    for (int i = 0; i < n; ++i) a = char_p_root(a, ambient);
    SeriesElement check = a.pow(static_cast<std::int64_t>(P)) - transport(b, ambient);
    if (!(check.is_zero()))
        throw internal_error("build_purely_wild: radical root verification failed");

    ValuedExtension ve;
    ve.base = e;
    ve.ambient = ambient;
    ve.gamma = top->lattice();
    ve.residue = top->f0();
    ve.gk = top;
    ve.gen = a;
    ve.gen_residue = residue_image(associated_graded(ambient), a);
    std::vector<SeriesElement> fc(static_cast<std::size_t>(P) + 1, ambient->zero());
    fc[0] = -transport(b, ambient);
    fc.back() = ambient->one();
    ve.minpoly = SPoly(std::move(fc));
    ve.degree = P;
    (void)workbox;
    if (grade_cmp(ve.gen_residue.grade(), gre.lambda) != 0)
        throw internal_error("build_purely_wild: residue grade of the radical root does not match");
    return ve;
}

TameCorrespondence tame_correspond(const SeriesFieldPtr& e,
                                   const std::vector<std::function<GPoly(const GDescPtr&)>>& steps,
                                   const Grade& workbox) {
    TameCorrespondence tc;
    tc.galois = true;
    SeriesFieldPtr ambient = e;
    GDescPtr gk = associated_graded(e);
    Lattice gamma = e->value_lattice();
    FieldPtr residue = e->residue();
    SeriesElement gen = ambient->one();
    GradedElement gen_res = gk->one();
    SPoly minpoly = spoly_from_ints(ambient, {0, 1});
    Int degree = 1;

    for (const auto& make_step : steps) {
        GPoly g = make_step(gk);
        if (!g.c[0].desc()->same_as(*gk))
            throw domain_error("tame_correspond: step polynomial is not over the current stage");
        RootExtension gre = build_root_extension_graded(gk, g);
        auto flags = classify_extension(gre.emb);
        if (!flags.tame) throw domain_error("tame_correspond: wild step refused");
        const GDescPtr& top = gre.emb.top();

        LiftPlan plan = plan_tame_lift(ambient, gre, g, workbox);

        TameStepReport rep;
        rep.minpoly = g;
        rep.degree = g.degree();
        rep.gen = hensel_root(plan.f, plan.lambda, plan.simple_roots[0], workbox);
        for (const auto& r : plan.simple_roots)
            rep.conjugates.push_back(hensel_root(plan.f, plan.lambda, r, workbox));
        auto conj = root_conjugates(gre);
        for (const auto& [root, sig] : conj) {
            (void)sig;
            rep.graded_conjugates.push_back(root);
        }
        if (static_cast<Int>(conj.size()) != g.degree()) tc.galois = false;
        tc.steps.push_back(std::move(rep));

        ambient = plan.ambient;
        gk = top;
        gamma = top->lattice();
        residue = top->f0();
        gen = tc.steps.back().gen;
        gen_res = residue_image(associated_graded(ambient), gen);
        minpoly = plan.f;
        degree *= g.degree();
    }

    tc.ext.base = e;
    tc.ext.ambient = ambient;
    tc.ext.gamma = gamma;
    tc.ext.residue = residue;
    tc.ext.gk = gk;
    tc.ext.gen = gen;
    tc.ext.gen_residue = gen_res;
    tc.ext.minpoly = minpoly;
    tc.ext.degree = degree;
    return tc;
}

}  // namespace grval
