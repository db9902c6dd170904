#include "grval/graded_ext.hpp"

#include <algorithm>

namespace grval {

// --------------------------------------------------------------------------
// GradedEmbedding

GradedEmbedding GradedEmbedding::identity(const GDescPtr& d) {
    GradedEmbedding e;
    e.base_ = d;
    e.top_ = d;
    e.res_ = FieldEmbedding::identity(d->f0());
    for (int i = 0; i < d->rank(); ++i) {
        GExp exp(static_cast<std::size_t>(d->rank()), 0);
        exp[static_cast<std::size_t>(i)] = 1;
        e.sym_.emplace_back(exp, d->f0()->one());
    }
    return e;
}

GradedEmbedding GradedEmbedding::make(GDescPtr base, GDescPtr top, FieldEmbedding res,
                                      std::vector<std::pair<GExp, FieldElem>> sym) {
    GradedEmbedding e;
    e.base_ = std::move(base);
    e.top_ = std::move(top);
    e.res_ = std::move(res);
    e.sym_ = std::move(sym);
    if (static_cast<int>(e.sym_.size()) != e.base_->rank())
        throw domain_error("embedding needs one symbol image per base basis vector");
    // grade preservation
    for (int j = 0; j < e.base_->rank(); ++j) {
        const auto& [exp, tw] = e.sym_[static_cast<std::size_t>(j)];
        if (tw.is_zero()) throw domain_error("embedding twist must be a unit");
        Grade g = e.top_->grade_of_exp(exp);
        if (grade_cmp(g, e.base_->lattice().basis()[static_cast<std::size_t>(j)]) != 0)
            throw domain_error("embedding does not preserve grades");
    }
    return e;
}

GradedEmbedding GradedEmbedding::compose(const GradedEmbedding& inner, const GradedEmbedding& outer) {
    if (!inner.top_->same_as(*outer.base_)) throw domain_error("embedding composition mismatch");
    FieldEmbedding res = FieldEmbedding::explicit_map(
        inner.res_.src(), outer.res_.dst(), outer.res_.apply(inner.res_.apply(inner.res_.src()->generator())));
    std::vector<std::pair<GExp, FieldElem>> sym;
    for (int j = 0; j < inner.base_->rank(); ++j) {
        const auto& [exp, tw] = inner.sym_[static_cast<std::size_t>(j)];
        GradedElement mid = inner.top_->monomial_exp(exp, tw);
        GradedElement out = outer.apply(mid);
        if (out.terms().size() != 1) throw internal_error("composed embedding image not a monomial");
        sym.emplace_back(out.terms().begin()->first, out.terms().begin()->second);
    }
    return make(inner.base_, outer.top_, std::move(res), std::move(sym));
}

std::pair<GExp, FieldElem> GradedEmbedding::image_of_grade(const Grade& g) const {
    auto k = base_->lattice().coords(g);
    if (!k) throw domain_error("grade not in base lattice");
    GExp exp(static_cast<std::size_t>(top_->rank()), 0);
    FieldElem tw = top_->f0()->one();
    for (std::size_t j = 0; j < k->size(); ++j) {
        std::int64_t kj = static_cast<std::int64_t>((*k)[j]);
        if (kj == 0) continue;
        for (std::size_t i = 0; i < exp.size(); ++i) exp[i] += kj * sym_[j].first[i];
        tw = tw * sym_[j].second.pow(kj);
    }
    return {exp, tw};
}

GradedElement GradedEmbedding::apply(const GradedElement& x) const {
    if (!x.desc()->same_as(*base_)) throw domain_error("embedding applied to wrong field");
    GradedElement r = top_->zero();
    for (const auto& [e, c] : x.terms()) {
        auto [exp, tw] = image_of_grade(base_->grade_of_exp(e));
        r = r + top_->monomial_exp(exp, tw * res_.apply(c));
    }
    return r;
}

GPoly GradedEmbedding::apply(const GPoly& p) const {
    GPoly r;
    for (const auto& c : p.c) r.c.push_back(apply(c));
    r.normalize();
    return r;
}

bool GradedEmbedding::in_image(const GradedElement& y) const {
    for (const auto& [e, c] : y.terms()) {
        Grade g = top_->grade_of_exp(e);
        if (!base_->lattice().contains(g)) return false;
        auto [exp, tw] = image_of_grade(g);
        if (exp != e) throw internal_error("embedding image exponent mismatch");
        if (!res_.contains(c * tw.inv())) return false;
    }
    return true;
}

GradedElement GradedEmbedding::section(const GradedElement& y) const {
    GradedElement r = base_->zero();
    for (const auto& [e, c] : y.terms()) {
        Grade g = top_->grade_of_exp(e);
        auto [exp, tw] = image_of_grade(g);  // throws when grade outside base
        if (exp != e) throw internal_error("embedding image exponent mismatch");
        r = r + base_->monomial(g, res_.section(c * tw.inv()));
    }
    return r;
}

// --------------------------------------------------------------------------
// GradedAut

GradedAut GradedAut::identity(const GDescPtr& d) {
    GradedAut a;
    a.d_ = d;
    a.res_gen_image_ = d->f0()->generator();
    a.symscale_.assign(static_cast<std::size_t>(d->rank()), d->f0()->one());
    return a;
}

GradedAut GradedAut::make(GDescPtr d, FieldElem res_gen_image, std::vector<FieldElem> symscale) {
    GradedAut a;
    a.d_ = std::move(d);
    a.res_gen_image_ = std::move(res_gen_image);
    a.symscale_ = std::move(symscale);
    if (static_cast<int>(a.symscale_.size()) != a.d_->rank())
        throw domain_error("automorphism needs one scalar per basis vector");
    for (const auto& u : a.symscale_)
        if (u.is_zero()) throw domain_error("automorphism scalar must be a unit");
    if (a.d_->f0()->kind() == Field::Kind::Extension) {
        // generator image must be a modulus root
        FieldElem v = a.d_->f0()->zero();
        for (std::size_t i = a.d_->f0()->modulus().size(); i-- > 0;)
            v = v * a.res_gen_image_ + a.d_->f0()->from_int(a.d_->f0()->modulus()[i]);
        if (!v.is_zero()) throw domain_error("residue map is not an automorphism");
    }
    return a;
}

FieldElem GradedAut::apply_res(const FieldElem& c) const {
    if (d_->f0()->kind() != Field::Kind::Extension) return c;
    FieldElem r = d_->f0()->zero();
    for (std::size_t i = c.coeffs().size(); i-- > 0;)
        r = r * res_gen_image_ + d_->f0()->from_int(c.coeffs()[i]);
    return r;
}

GradedElement GradedAut::apply(const GradedElement& x) const {
    if (!x.desc()->same_as(*d_)) throw domain_error("automorphism applied to wrong field");
    GradedElement r = d_->zero();
    for (const auto& [e, c] : x.terms()) {
        FieldElem f = apply_res(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) f = f * symscale_[i].pow(e[i]);
        r = r + d_->monomial_exp(e, f);
    }
    return r;
}

GPoly GradedAut::apply(const GPoly& p) const {
    GPoly r;
    for (const auto& c : p.c) r.c.push_back(apply(c));
    r.normalize();
    return r;
}

GradedAut GradedAut::compose(const GradedAut& then) const {
    if (!d_->same_as(*then.d_)) throw domain_error("automorphism composition mismatch");
    std::vector<FieldElem> sc;
    for (std::size_t i = 0; i < symscale_.size(); ++i)
        sc.push_back(then.apply_res(symscale_[i]) * then.symscale_[i]);
    return make(d_, then.apply_res(res_gen_image_), std::move(sc));
}

GradedAut GradedAut::power(Int k) const {
    GradedAut r = identity(d_);
    Int n = k;
    GradedAut base = *this;
    if (n < 0) throw domain_error("negative automorphism power");
    while (n > 0) {
        if ((n & 1) != 0) r = r.compose(base);
        base = base.compose(base);
        n >>= 1;
    }
    return r;
}

bool GradedAut::is_identity() const {
    if (!(res_gen_image_ == d_->f0()->generator())) return false;
    return std::all_of(symscale_.begin(), symscale_.end(), [](const FieldElem& u) { return u.is_one(); });
}

Int GradedAut::order(Int cap) const {
    GradedAut a = *this;
    Int n = 1;
    while (!a.is_identity()) {
        a = a.compose(*this);
        ++n;
        if (n > cap) throw domain_error("automorphism order exceeds cap");
    }
    return n;
}

// --------------------------------------------------------------------------
// classification

ExtensionFlags classify_extension(const GradedEmbedding& ext) {
    const auto& base = ext.base();
    const auto& top = ext.top();
    ExtensionFlags f;
    if (base->f0()->finite() != top->f0()->finite())
        throw domain_error("classification across mixed residue kinds");
    if (base->f0()->finite()) {
        if (base->f0()->p() != top->f0()->p()) throw domain_error("residue characteristic mismatch");
        f.residue_degree = top->f0()->degree() / base->f0()->degree();
    } else {
        f.residue_degree = 1;
    }
    f.ram_index = top->lattice().index_over(base->lattice());
    f.total = f.residue_degree * f.ram_index;
    std::int64_t p = base->f0()->characteristic();
    // residue fields here are finite or Q, hence perfect: residue growth is
    // always separable and purely inseparable growth is trivial
    f.inertial = f.total == f.residue_degree;
    f.totally_ramified = f.total == f.ram_index;
    bool p_torsion_free = true;
    if (p > 0) {
        auto q = quotient_structure(top->lattice().basis(), base->lattice());
        for (const auto& dinv : q.invariant_factors)
            if (dinv % p == 0) p_torsion_free = false;
    }
    f.tame = p == 0 || p_torsion_free;
    if (p > 0) {
        auto q = quotient_structure(top->lattice().basis(), base->lattice());
        bool pgroup = true;
        Int o = q.order;
        while (o > 1) {
            if (o % p != 0) {
                pgroup = false;
                break;
            }
            o /= p;
        }
        f.purely_wild = f.residue_degree == 1 && pgroup && f.total > 1;
    }
    return f;
}

// --------------------------------------------------------------------------
// norm and Hilbert 90

GradedElement graded_norm(const GradedEmbedding& ext, const GradedAut& sigma,
                          const GradedElement& x) {
    auto flags = classify_extension(ext);
    if (sigma.order(flags.total + 1) != flags.total)
        throw domain_error("graded_norm: generator order does not match the extension degree");
    GradedElement prod = ext.top()->one();
    GradedElement y = x;
    for (Int i = 0; i < flags.total; ++i) {
        prod = prod * y;
        y = sigma.apply(y);
    }
    if (!ext.in_image(prod)) throw domain_error("graded_norm: norm landed outside the base field");
    return ext.section(prod);
}

namespace {

Int mult_order(const FieldElem& u) {
    if (u.is_zero()) throw domain_error("order of zero");
    FieldElem x = u;
    Int n = 1;
    while (!x.is_one()) {
        x = x * u;
        ++n;
        if (n > 100000) throw domain_error("order computation overflow");
    }
    return n;
}

}  // namespace

GradedElement hilbert90_witness(const GradedEmbedding& ext, const GradedAut& sigma,
                                const GradedElement& x) {
    const auto& top = ext.top();
    if (!x.is_homogeneous() || x.is_zero())
        throw domain_error("hilbert90_witness: x must be a nonzero homogeneous element");
    GradedElement n = graded_norm(ext, sigma, x);
    if (!n.is_one()) throw domain_error("hilbert90_witness: norm is not 1");
    if (!grade_is_zero(x.grade())) throw internal_error("norm-1 homogeneous element with nonzero grade");
    FieldElem x0 = x.lead_coeff();
    const FieldPtr& k0 = top->f0();

    // candidate exponents: symbol scalars are roots of unity, so scan one
    // period per coordinate
    std::vector<Int> period;
    GradedAut id = GradedAut::identity(top);
    for (int i = 0; i < top->rank(); ++i) {
        GExp e(static_cast<std::size_t>(top->rank()), 0);
        e[static_cast<std::size_t>(i)] = 1;
        GradedElement s = top->monomial_exp(e, k0->one());
        GradedElement im = sigma.apply(s);
        period.push_back(mult_order(im.lead_coeff()));
    }
    std::vector<GExp> candidates;
    GExp w(static_cast<std::size_t>(top->rank()), 0);
    while (true) {
        candidates.push_back(w);
        int i = 0;
        while (i < top->rank() && Int(w[static_cast<std::size_t>(i)] + 1) == period[static_cast<std::size_t>(i)]) {
            w[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
        if (i == top->rank()) break;
        ++w[static_cast<std::size_t>(i)];
    }
    std::sort(candidates.begin(), candidates.end(), [&](const GExp& a, const GExp& b) {
        return grade_lt(top->grade_of_exp(a), top->grade_of_exp(b));
    });

    for (const auto& cand : candidates) {
        // solve sigma0(a) * (u_w * x0) = a on K0, exactly
        FieldElem uw = k0->one();
        GradedElement scand = top->monomial_exp(cand, k0->one());
        uw = sigma.apply(scand).lead_coeff();
        FieldElem cfac = uw * x0;
        FieldElem a = k0->zero();
        bool found = false;
        if (k0->finite()) {
            // GF(p)-linear kernel of a -> sigma0(a)*cfac - a
            std::int64_t p = k0->p();
            int dim = k0->degree();
            std::vector<std::vector<std::int64_t>> mat(static_cast<std::size_t>(dim),
                                                       std::vector<std::int64_t>(static_cast<std::size_t>(dim), 0));
            for (int cidx = 0; cidx < dim; ++cidx) {
                std::vector<std::int64_t> basis(static_cast<std::size_t>(dim), 0);
                basis[static_cast<std::size_t>(cidx)] = 1;
                FieldElem bb = k0->from_coeffs(basis);
                FieldElem img = sigma.apply_res(bb) * cfac - bb;
                for (int r = 0; r < dim; ++r)
                    mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(cidx)] =
                        img.coeffs()[static_cast<std::size_t>(r)];
            }
            // kernel via gaussian elimination
            std::vector<int> pivcol;
            int rr = 0;
            std::vector<std::vector<std::int64_t>> m2 = mat;
            std::vector<int> pivot_row_of_col(static_cast<std::size_t>(dim), -1);
            for (int c = 0; c < dim && rr < dim; ++c) {
                int pr = -1;
                for (int r = rr; r < dim; ++r)
                    if (m2[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] % p != 0) {
                        pr = r;
                        break;
                    }
                if (pr < 0) continue;
                std::swap(m2[static_cast<std::size_t>(pr)], m2[static_cast<std::size_t>(rr)]);
                // normalize row
                std::int64_t lead = m2[static_cast<std::size_t>(rr)][static_cast<std::size_t>(c)] % p;
                if (lead < 0) lead += p;
                std::int64_t li = 1;
                for (std::int64_t t = 1; t < p; ++t)
                    if ((lead * t) % p == 1) li = t;
                for (auto& v : m2[static_cast<std::size_t>(rr)]) v = ((v % p) * li % p + p) % p;
                for (int r = 0; r < dim; ++r) {
                    if (r == rr) continue;
                    std::int64_t fmul = m2[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] % p;
                    if (fmul == 0) continue;
                    for (int cc = 0; cc < dim; ++cc)
                        m2[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] =
                            (((m2[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -
                               fmul * m2[static_cast<std::size_t>(rr)][static_cast<std::size_t>(cc)]) %
                              p) +
                             p) %
                            p;
                }
                pivot_row_of_col[static_cast<std::size_t>(c)] = rr;
                ++rr;
            }
            // a free column yields a kernel vector
            for (int c = 0; c < dim && !found; ++c) {
                if (pivot_row_of_col[static_cast<std::size_t>(c)] >= 0) continue;
                std::vector<std::int64_t> vec(static_cast<std::size_t>(dim), 0);
                vec[static_cast<std::size_t>(c)] = 1;
                for (int cc = 0; cc < dim; ++cc) {
                    int prow = pivot_row_of_col[static_cast<std::size_t>(cc)];
                    if (prow < 0) continue;
                    vec[static_cast<std::size_t>(cc)] =
                        ((-m2[static_cast<std::size_t>(prow)][static_cast<std::size_t>(c)]) % p + p) % p;
                }
                a = k0->from_coeffs(vec);
                found = !a.is_zero();
            }
        } else {
            // rationals: sigma0 is the identity, solve a*(cfac - 1) = 0
            if (cfac.is_one()) {
                a = k0->one();
                found = true;
            }
        }
        if (!found) continue;
        GradedElement y = top->monomial_exp(cand, a);
        if ((x * sigma.apply(y)) == y) return y;
        throw internal_error("hilbert90_witness: kernel vector failed verification");
    }
    throw domain_error("hilbert90_witness: no homogeneous witness in the search window");
}

// --------------------------------------------------------------------------
// root extensions

namespace {

// arithmetic in A = F[X]/(g), g monic
struct QuotientRing {
    GPoly g;
    GDescPtr d;

    GPoly reduce(const GPoly& a) const { return upoly_mod(a, g); }
    GPoly mul(const GPoly& a, const GPoly& b) const { return reduce(upoly_mul(a, b)); }
    GPoly pow(GPoly base, Int e) const {
        GPoly r(std::vector<GradedElement>{d->one()});
        if (e < 0) throw internal_error("QuotientRing::pow negative");
        while (e > 0) {
            if ((e & 1) != 0) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    GPoly x_inverse() const {
        // g monic with unit constant term: X^{-1} = -a0^{-1} (X^{n-1} + a_{n-1} X^{n-2} + ... + a_1)
        GradedElement s = (-g.c[0]).inv();
        std::vector<GradedElement> c;
        for (std::size_t i = 1; i < g.c.size(); ++i) c.push_back(s * g.c[i]);
        return GPoly(std::move(c));
    }
};

}  // namespace

RootExtension build_root_extension_graded(const GDescPtr& base, const GPoly& g) {
    if (g.degree() < 1) throw domain_error("root extension needs degree >= 1");
    if (!g.lead().is_one()) throw domain_error("root extension needs a monic polynomial");
    if (g.c[0].is_zero()) throw domain_error("root extension needs a nonzero constant term");
    auto lam_opt = is_homogenizable(g);
    if (!lam_opt) throw domain_error("root extension needs a homogenizable polynomial");
    Grade lam = *lam_opt;
    const FieldPtr& f0 = base->f0();

    Int e = ramification_order(lam, base->lattice());
    std::int64_t ei = static_cast<std::int64_t>(e);
    int n = g.degree();
    if (n % ei != 0) throw internal_error("root extension: degree not divisible by ram order");
    int dd = n / static_cast<int>(ei);
    FPoly down = descend_homogenizable(g, lam);

    // residue growth K0 and the distinguished root rho of `down` in K0
    FieldPtr k0;
    FieldElem rho;
    if (dd == 1) {
        k0 = f0;
        rho = -down.c[0];
    } else if (!f0->finite()) {
        throw domain_error("residue growth over QQ is not supported");
    } else {
        if (!poly_irreducible(down)) throw domain_error("root extension: polynomial is reducible");
        if (f0->kind() == Field::Kind::Prime) {
            std::vector<std::int64_t> mod;
            for (const auto& c : down.c) mod.push_back(c.coeffs()[0]);
            k0 = Field::extension(f0->p(), mod);
            rho = k0->generator();
        } else {
            k0 = Field::extension_canonical(f0->p(), f0->degree() * dd);
            FieldEmbedding emb0 = FieldEmbedding::find(f0, k0);
            std::vector<FieldElem> dc;
            for (const auto& c : down.c) dc.push_back(emb0.apply(c));
            auto roots = poly_roots(FPoly(std::move(dc)));
            if (roots.empty()) throw internal_error("root extension: no residue root found");
            rho = roots[0].first;
        }
    }
    FieldEmbedding res_emb = FieldEmbedding::find(f0, k0);

    Lattice lat_k = Lattice::span(base->lattice(), {lam});
    GDescPtr top = GradedField::make(k0, lat_k);

    // A = F[X]/(g)
    QuotientRing A{g, base};
    GPoly x(std::vector<GradedElement>{base->zero(), base->one()});
    GPoly xinv = A.x_inverse();
    GradedElement u = base->monomial(grade_scale(lam, Rat(e)), f0->one());

    // grade-0 readout: sum_j c_j rho^j from the x^{je} components
    auto readout = [&](const GPoly& w) -> FieldElem {
        FieldElem acc = k0->zero();
        FieldElem rpow = k0->one();
        GradedElement upow = base->one();
        for (int j = 0; j * ei <= w.degree(); ++j) {
            const GradedElement& cj = w.c[static_cast<std::size_t>(j * ei)];
            if (!cj.is_zero()) {
                GradedElement c0 = cj * upow;  // grade 0
                if (!c0.is_homogeneous() || !grade_is_zero(c0.grade()))
                    throw internal_error("readout: component not of grade zero");
                acc = acc + res_emb.apply(c0.lead_coeff()) * rpow;
            }
            rpow = rpow * rho;
            upow = upow * u;
        }
        for (int i = 0; i <= w.degree(); ++i)
            if (i % ei != 0 && !w.c[static_cast<std::size_t>(i)].is_zero())
                throw internal_error("readout: support off the grade-zero slice");
        return acc;
    };

    // decompose each new basis vector as c*lambda + (base lattice)
    int m = base->rank();
    std::vector<GPoly> s, sinv;
    for (int i = 0; i < m; ++i) {
        const Grade& delta = lat_k.basis()[static_cast<std::size_t>(i)];
        std::int64_t ci = -1;
        std::vector<Int> coords;
        for (std::int64_t c = 0; c < ei; ++c) {
            Grade rest = grade_sub(delta, grade_scale(lam, Rat(c)));
            auto k = base->lattice().coords(rest);
            if (k) {
                ci = c;
                coords = *k;
                break;
            }
        }
        if (ci < 0) throw internal_error("root extension: basis vector not in F + Z*lambda");
        GExp nexp;
        for (const auto& kk : coords) nexp.push_back(static_cast<std::int64_t>(kk));
        GradedElement mono = base->monomial_exp(nexp, f0->one());
        GExp nneg = nexp;
        for (auto& v : nneg) v = -v;
        GradedElement mono_inv = base->monomial_exp(nneg, f0->one());
        s.push_back(A.mul(A.pow(x, ci), GPoly(std::vector<GradedElement>{mono})));
        sinv.push_back(A.mul(A.pow(xinv, ci), GPoly(std::vector<GradedElement>{mono_inv})));
    }

    auto s_power_product = [&](const std::vector<Int>& k, bool invert) -> GPoly {
        GPoly acc(std::vector<GradedElement>{base->one()});
        for (std::size_t i = 0; i < k.size(); ++i) {
            Int kk = invert ? -k[i] : k[i];
            const GPoly& b = kk >= 0 ? s[i] : sinv[i];
            acc = A.mul(acc, A.pow(b, kk >= 0 ? kk : -kk));
        }
        return acc;
    };

    // embedding of the base basis monomials
    std::vector<std::pair<GExp, FieldElem>> sym;
    for (int j = 0; j < m; ++j) {
        const Grade& beta = base->lattice().basis()[static_cast<std::size_t>(j)];
        auto w = lat_k.coords(beta);
        if (!w) throw internal_error("root extension: base lattice not inside top lattice");
        GPoly val = A.mul(GPoly(std::vector<GradedElement>{base->monomial(beta, f0->one())}),
                          s_power_product(*w, true));
        FieldElem tau = readout(val);
        GExp wexp;
        for (const auto& kk : *w) wexp.push_back(static_cast<std::int64_t>(kk));
        sym.emplace_back(wexp, tau);
    }
    GradedEmbedding emb = GradedEmbedding::make(base, top, res_emb, std::move(sym));

    // designated root in top coordinates
    auto v = lat_k.coords(lam);
    if (!v) throw internal_error("root extension: lambda not in top lattice");
    FieldElem chi = readout(A.mul(x, s_power_product(*v, true)));
    GExp vexp;
    for (const auto& kk : *v) vexp.push_back(static_cast<std::int64_t>(kk));
    GradedElement xtop = top->monomial_exp(vexp, chi);

    // certification: the embedded minimal polynomial kills the root
    GPoly gtop = emb.apply(g);
    GradedElement val = top->zero();
    for (std::size_t i = gtop.c.size(); i-- > 0;) val = val * xtop + gtop.c[i];
    if (!val.is_zero()) throw internal_error("root extension: designated root fails its polynomial");

    RootExtension re;
    re.emb = std::move(emb);
    re.x = std::move(xtop);
    re.minpoly = g;
    re.descended = std::move(down);
    re.lambda = lam;
    re.ram = e;
    re.residue_deg = dd;
    return re;
}

namespace {

// rho and the embedded grade-(e*lambda) base monomial, in top coordinates
std::pair<GradedElement, GradedElement> rho_in_top(const RootExtension& re) {
    const auto& top = re.emb.top();
    GradedElement u_img =
        re.emb.apply(re.emb.base()->monomial(grade_scale(re.lambda, Rat(re.ram)), re.emb.base()->f0()->one()));
    GradedElement rho_elem = re.x.pow(static_cast<std::int64_t>(re.ram)) * u_img.inv();
    if (!rho_elem.is_homogeneous() || !grade_is_zero(rho_elem.grade()))
        throw internal_error("rho_in_top: not grade zero");
    (void)top;
    return {rho_elem, u_img};
}

// the grade-preserving automorphism fixing the embedded base and sending the
// designated root to y (a homogeneous element of the same grade)
GradedAut aut_sending_root(const RootExtension& re, const GradedElement& y) {
    const auto& top = re.emb.top();
    const FieldPtr& k0 = top->f0();
    if (!y.is_homogeneous() || y.is_zero() || grade_cmp(y.grade(), re.lambda) != 0)
        throw domain_error("aut_sending_root: target must be homogeneous of the root grade");

    auto [rho_elem, u_img] = rho_in_top(re);
    FieldElem rho = rho_elem.lead_coeff();
    GradedElement rho2_elem = y.pow(static_cast<std::int64_t>(re.ram)) * u_img.inv();
    FieldElem rho2 = rho2_elem.lead_coeff();

    // residue part: a Frobenius power over the base residue field with rho -> rho2
    FieldElem res_img = k0->generator();
    bool res_found = false;
    if (!k0->finite()) {
        if (!(rho == rho2)) throw domain_error("aut_sending_root: no residue automorphism over QQ");
        res_found = true;
    } else {
        Int qsub = int_pow(Int(k0->p()), static_cast<std::uint64_t>(re.emb.base()->f0()->degree()));
        FieldElem probe = rho;
        FieldElem gen_img = k0->generator();
        for (Int t = 0; t < re.residue_deg; ++t) {
            if (probe == rho2) {
                res_found = true;
                res_img = gen_img;
                break;
            }
            probe = probe.pow(qsub);
            gen_img = gen_img.pow(qsub);
        }
    }
    if (!res_found) throw domain_error("aut_sending_root: residue images are not conjugate");
    auto res_apply = [&](const FieldElem& c) {
        if (k0->kind() != Field::Kind::Extension) return c;
        FieldElem r = k0->zero();
        for (std::size_t i = c.coeffs().size(); i-- > 0;) r = r * res_img + k0->from_int(c.coeffs()[i]);
        return r;
    };

    // symbol scalars from the multiplicative constraints on the generators of
    // the exponent lattice
    int m = top->rank();
    IntMat rows;
    std::vector<FieldElem> targets;
    for (int j = 0; j < m; ++j) {
        const auto& [wexp, tau] = re.emb.sym()[static_cast<std::size_t>(j)];
        std::vector<Int> row;
        for (auto vv : wexp) row.push_back(vv);
        rows.push_back(std::move(row));
        targets.push_back(tau * res_apply(tau).inv());
    }
    {
        const auto& [vexp, chi] = *re.x.terms().begin();
        std::vector<Int> row;
        for (auto vv : vexp) row.push_back(vv);
        rows.push_back(std::move(row));
        targets.push_back(y.lead_coeff() * res_apply(chi).inv());
    }
    std::vector<FieldElem> symscale;
    for (int i = 0; i < m; ++i) {
        std::vector<Int> ei(static_cast<std::size_t>(m), 0);
        ei[static_cast<std::size_t>(i)] = 1;
        auto z = solve_integer_combination(rows, ei);
        if (!z) throw internal_error("aut_sending_root: exponents do not generate the lattice");
        FieldElem ui = k0->one();
        for (std::size_t t = 0; t < z->size(); ++t) ui = ui * targets[t].pow((*z)[t]);
        symscale.push_back(ui);
    }
    GradedAut sigma = GradedAut::make(top, res_img, std::move(symscale));

    // verification: fixes the embedded base and maps x to y
    for (int j = 0; j < m; ++j) {
        GradedElement bimg = re.emb.apply(
            re.emb.base()->monomial(re.emb.base()->lattice().basis()[static_cast<std::size_t>(j)],
                                    re.emb.base()->f0()->one()));
        if (!(sigma.apply(bimg) == bimg)) throw internal_error("aut_sending_root: base not fixed");
    }
    GradedElement gen0 = top->constant(re.emb.res().apply(re.emb.base()->f0()->generator()));
    if (!(sigma.apply(gen0) == gen0)) throw internal_error("aut_sending_root: base residue not fixed");
    if (!(sigma.apply(re.x) == y)) throw internal_error("aut_sending_root: root image mismatch");
    return sigma;
}

}  // namespace

std::vector<std::pair<GradedElement, GradedAut>> root_conjugates(const RootExtension& re) {
    const auto& top = re.emb.top();
    GPoly gtop = re.emb.apply(re.minpoly);
    std::vector<std::pair<GradedElement, GradedAut>> out;
    if (!top->f0()->finite()) {
        // scan the few homogeneous candidates c*x with c rational would be
        // unbounded; only x itself and -x are checked over QQ
        for (int sgn : {1, -1}) {
            GradedElement cand = sgn == 1 ? re.x : -re.x;
            GradedElement val = top->zero();
            for (std::size_t i = gtop.c.size(); i-- > 0;) val = val * cand + gtop.c[i];
            if (val.is_zero()) out.emplace_back(cand, aut_sending_root(re, cand));
        }
        return out;
    }
    for (const auto& c : top->f0()->elements()) {
        if (c.is_zero()) continue;
        GradedElement cand = top->monomial(re.lambda, c);
        GradedElement val = top->zero();
        for (std::size_t i = gtop.c.size(); i-- > 0;) val = val * cand + gtop.c[i];
        if (val.is_zero()) out.emplace_back(cand, aut_sending_root(re, cand));
    }
    return out;
}

// --------------------------------------------------------------------------
// Kummer and Artin-Schreier

namespace {

FieldElem primitive_root_of_unity(const FieldPtr& f0, Int n) {
    if (!f0->finite()) {
        if (n == 1) return f0->one();
        if (n == 2) return -f0->one();
        throw domain_error("QQ contains no primitive " + n.str() + "-th roots of unity");
    }
    if ((f0->cardinality() - 1) % n != 0)
        throw domain_error(f0->to_string() + " contains no primitive " + n.str() + "-th roots of unity");
    for (const auto& x : f0->elements()) {
        if (x.is_zero()) continue;
        if (!(x.pow(n) == f0->one())) continue;
        bool primitive = true;
        for (Int r = 2; r <= n; ++r) {
            if (n % r != 0) continue;
            bool rprime = true;
            for (Int t = 2; t * t <= r; ++t)
                if (r % t == 0) rprime = false;
            if (!rprime) continue;
            if (x.pow(n / r) == f0->one()) primitive = false;
        }
        if (primitive) return x;
    }
    throw internal_error("no primitive root of unity found");
}

}  // namespace

KummerResult kummer_recognize(const GDescPtr& f, const GradedElement& a, Int n) {
    if (n < 1) throw domain_error("kummer_recognize: n must be positive");
    std::int64_t p = f->f0()->characteristic();
    if (p > 0 && n % p == 0)
        throw domain_error("kummer_recognize: characteristic divides n");
    if (!a.is_homogeneous() || a.is_zero())
        throw domain_error("kummer_recognize: a must be a homogeneous unit");
    FieldElem zeta_n = primitive_root_of_unity(f->f0(), n);

    // X^n - a
    std::vector<GradedElement> c(static_cast<std::size_t>(n) + 1, f->zero());
    c[0] = -a;
    c.back() = f->one();
    GPoly poly(std::move(c));
    auto fac = homog_factor(poly);
    const GPoly& g = fac.parts[0].first;
    Int m = g.degree();
    // factors of X^n - a over a field with enough roots of unity are X^m - b
    for (int i = 1; i < g.degree(); ++i)
        if (!g.c[static_cast<std::size_t>(i)].is_zero())
            throw internal_error("kummer_recognize: factor is not of radical shape");

    KummerResult out;
    out.m = m;
    out.ext = build_root_extension_graded(f, g);
    FieldElem zeta_m = zeta_n.pow(n / m);
    out.zeta = zeta_m;
    GradedElement y = out.ext.x.scale(out.ext.emb.res().apply(zeta_m));
    out.sigma = aut_sending_root(out.ext, y);
    if (out.sigma.order(m + 1) != m)
        throw internal_error("kummer_recognize: generator order mismatch");
    return out;
}

ArtinSchreierResult artin_schreier_p(const GDescPtr& f, const FieldElem& a) {
    std::int64_t p = f->f0()->characteristic();
    if (p == 0) throw domain_error("artin_schreier_p needs positive characteristic");
    if (!a.field()->same_as(*f->f0())) throw domain_error("artin_schreier_p: a must lie in F0");
    // X^p - X - a over F0
    std::vector<FieldElem> c(static_cast<std::size_t>(p) + 1, f->f0()->zero());
    c[0] = -a;
    c[1] = -f->f0()->one();
    c.back() = f->f0()->one();
    FPoly down(std::move(c));
    auto roots = poly_roots(down);
    ArtinSchreierResult res;
    if (!roots.empty()) {
        res.splits = true;
        return res;
    }
    std::vector<GradedElement> gc(static_cast<std::size_t>(p) + 1, f->zero());
    gc[0] = f->constant(-a);
    gc[1] = f->constant(-f->f0()->one());
    gc.back() = f->one();
    GPoly g(std::move(gc));
    res.ext = build_root_extension_graded(f, g);
    GradedElement y = res.ext->x + res.ext->emb.top()->one();
    res.sigma = aut_sending_root(*res.ext, y);
    if (res.sigma->order(Int(p) + 1) != p) throw internal_error("artin_schreier_p: order mismatch");
    return res;
}

}  // namespace grval
