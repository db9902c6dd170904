#include "grval/graded.hpp"

#include <algorithm>

namespace grval {

// --------------------------------------------------------------------------
// GradedField

GDescPtr GradedField::make(FieldPtr f0, Lattice lattice) {
    auto d = std::make_shared<GradedField>();
    d->f0_ = std::move(f0);
    d->rank_ = lattice.rank();
    d->lattice_ = std::move(lattice);
    // build-time sanity on the monomial algebra: neutral grade and
    // associativity of exponent addition on basis triples
    auto one = d->one();
    for (int i = 0; i < d->rank_; ++i) {
        GExp ei(static_cast<std::size_t>(d->rank_), 0);
        ei[static_cast<std::size_t>(i)] = 1;
        auto xi = d->monomial_exp(ei, d->f0_->one());
        if (!((xi * one) == xi && (one * xi) == xi))
            throw internal_error("graded field: unit law failed");
        for (int j = 0; j < d->rank_; ++j) {
            GExp ej(static_cast<std::size_t>(d->rank_), 0);
            ej[static_cast<std::size_t>(j)] = 1;
            auto xj = d->monomial_exp(ej, d->f0_->one());
            if (!((xi * xj) == (xj * xi))) throw internal_error("graded field: commutativity failed");
            for (int k = 0; k < d->rank_; ++k) {
                GExp ek(static_cast<std::size_t>(d->rank_), 0);
                ek[static_cast<std::size_t>(k)] = 1;
                auto xk = d->monomial_exp(ek, d->f0_->one());
                if (!(((xi * xj) * xk) == (xi * (xj * xk))))
                    throw internal_error("graded field: cocycle condition failed");
            }
        }
    }
    return d;
}

Grade GradedField::grade_of_exp(const GExp& e) const {
    if (static_cast<int>(e.size()) != rank_) throw domain_error("exponent rank mismatch");
    Grade g = grade_zero(rank_);
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) g = grade_add(g, grade_scale(lattice_.basis()[i], Rat(e[i])));
    return g;
}

GExp GradedField::exp_of_grade(const Grade& g) const {
    auto k = lattice_.coords(g);
    if (!k) throw domain_error("grade " + grade_to_string(g) + " is not in the support lattice");
    GExp e;
    for (const auto& x : *k) e.push_back(static_cast<std::int64_t>(x));
    return e;
}

GradedElement GradedField::zero() const {
    GradedElement x;
    x.d_ = shared_from_this();
    return x;
}

GradedElement GradedField::one() const { return constant(f0_->one()); }

GradedElement GradedField::constant(const FieldElem& c) const {
    return monomial_exp(GExp(static_cast<std::size_t>(rank_), 0), c);
}

GradedElement GradedField::monomial_exp(const GExp& e, const FieldElem& c) const {
    if (!c.field()->same_as(*f0_)) throw domain_error("coefficient from wrong residue field");
    if (static_cast<int>(e.size()) != rank_) throw domain_error("exponent rank mismatch");
    GradedElement x;
    x.d_ = shared_from_this();
    if (!c.is_zero()) x.sup_.emplace(e, c);
    return x;
}

GradedElement GradedField::monomial(const Grade& g, const FieldElem& c) const {
    return monomial_exp(exp_of_grade(g), c);
}

std::string GradedField::to_string() const {
    std::string s = f0_->to_string() + "[";
    for (std::size_t i = 0; i < lattice_.basis().size(); ++i) {
        if (i) s += ", ";
        s += "<" + grade_to_string(lattice_.basis()[i]) + ">";
    }
    return s + "]";
}

bool GradedField::same_as(const GradedField& o) const {
    return rank_ == o.rank_ && f0_->same_as(*o.f0_) && lattice_ == o.lattice_;
}

// --------------------------------------------------------------------------
// GradedElement

bool GradedElement::is_one() const {
    if (sup_.size() != 1) return false;
    const auto& [e, c] = *sup_.begin();
    return c.is_one() && std::all_of(e.begin(), e.end(), [](std::int64_t v) { return v == 0; });
}

Grade GradedElement::grade() const {
    if (sup_.size() != 1) throw domain_error("grade of a non-homogeneous or zero element");
    return d_->grade_of_exp(sup_.begin()->first);
}

FieldElem GradedElement::lead_coeff() const {
    if (sup_.empty()) throw domain_error("coefficient of zero");
    return sup_.begin()->second;
}

GradedElement GradedElement::operator+(const GradedElement& o) const {
    if (!d_->same_as(*o.d_)) throw domain_error("mixed graded fields");
    GradedElement r = *this;
    for (const auto& [e, c] : o.sup_) {
        auto it = r.sup_.find(e);
        if (it == r.sup_.end()) {
            r.sup_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) r.sup_.erase(it);
        }
    }
    return r;
}

GradedElement GradedElement::operator-() const {
    GradedElement r = *this;
    for (auto& [e, c] : r.sup_) c = -c;
    return r;
}

GradedElement GradedElement::operator-(const GradedElement& o) const { return *this + (-o); }

GradedElement GradedElement::operator*(const GradedElement& o) const {
    if (!d_->same_as(*o.d_)) throw domain_error("mixed graded fields");
    GradedElement r;
    r.d_ = d_;
    for (const auto& [e1, c1] : sup_)
        for (const auto& [e2, c2] : o.sup_) {
            FieldElem c = c1 * c2;
            if (c.is_zero()) continue;
            GExp e(e1.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
            auto it = r.sup_.find(e);
            if (it == r.sup_.end()) {
                r.sup_.emplace(std::move(e), c);
            } else {
                it->second = it->second + c;
                if (it->second.is_zero()) r.sup_.erase(it);
            }
        }
    return r;
}

GradedElement GradedElement::scale(const FieldElem& c) const {
    GradedElement r;
    r.d_ = d_;
    if (c.is_zero()) return r;
    r.sup_ = sup_;
    for (auto& [e, x] : r.sup_) x = x * c;
    for (auto it = r.sup_.begin(); it != r.sup_.end();)
        it = it->second.is_zero() ? r.sup_.erase(it) : std::next(it);
    return r;
}

GradedElement GradedElement::inv() const {
    if (sup_.size() != 1)
        throw domain_error("only nonzero homogeneous graded elements are invertible");
    const auto& [e, c] = *sup_.begin();
    GExp ne(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
    return d_->monomial_exp(ne, c.inv());
}

GradedElement GradedElement::pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    GradedElement r = d_->one(), b = *this;
    std::uint64_t k = static_cast<std::uint64_t>(e);
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

bool GradedElement::operator==(const GradedElement& o) const {
    if (!d_->same_as(*o.d_)) return false;
    return sup_ == o.sup_;
}

std::string GradedElement::to_string() const {
    if (sup_.empty()) return "0";
    // print by ascending grade
    std::vector<std::pair<Grade, const FieldElem*>> items;
    for (const auto& [e, c] : sup_) items.emplace_back(d_->grade_of_exp(e), &c);
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return grade_lt(a.first, b.first); });
    std::string s;
    for (const auto& [g, c] : items) {
        if (!s.empty()) s += " + ";
        std::string cs = c->to_string();
        bool paren = cs.find('+') != std::string::npos;
        s += (paren ? "(" + cs + ")" : cs) + "*<";
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (i) s += ", ";
            s += rat_to_string(g[i]);
        }
        s += ">";
    }
    return s;
}

GPoly gpoly_from_elems(std::vector<GradedElement> c) { return GPoly(std::move(c)); }

std::string gpoly_to_string(const GPoly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string s;
    for (std::size_t i = p.c.size(); i-- > 0;) {
        if (p.c[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + p.c[i].to_string() + ")";
        if (i >= 1) {
            s += "*" + var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

// --------------------------------------------------------------------------
// associated graded field

GDescPtr associated_graded(const SeriesFieldPtr& e) {
    return GradedField::make(e->residue(), e->value_lattice());
}

GradedElement residue_image(const GDescPtr& ge, const SeriesElement& x) {
    auto v = x.valuation();  // throws when indeterminate
    if (!v) throw domain_error("residue image of zero");
    return ge->monomial(*v, x.leading_coeff());
}

GradedElement graded_transport(const GradedElement& x, const GDescPtr& target) {
    if (x.desc()->same_as(*target)) return x;
    if (!x.desc()->f0()->same_as(*target->f0()))
        throw domain_error("graded_transport: residue fields differ");
    GradedElement r = target->zero();
    for (const auto& [e, c] : x.terms())
        r = r + target->monomial(x.desc()->grade_of_exp(e), c);
    return r;
}

GPoly graded_transport(const GPoly& p, const GDescPtr& target) {
    GPoly r;
    for (const auto& c : p.c) r.c.push_back(graded_transport(c, target));
    r.normalize();
    return r;
}

// --------------------------------------------------------------------------
// homogenizable polynomials

std::optional<Grade> is_homogenizable(const GPoly& f) {
    if (f.is_zero()) throw domain_error("is_homogenizable: zero polynomial");
    const auto& d = f.c[0].desc();
    std::vector<std::pair<std::size_t, Grade>> nz;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i].is_zero()) continue;
        if (!f.c[i].is_homogeneous()) return std::nullopt;
        nz.emplace_back(i, f.c[i].grade());
    }
    if (nz.size() <= 1) return grade_zero(d->rank());
    // lambda = (gr(a_i) - gr(a_j)) / (j - i) from the first two terms
    const auto& [i0, g0] = nz[0];
    const auto& [i1, g1] = nz[1];
    Grade lam = grade_scale(grade_sub(g0, g1), Rat(1, static_cast<std::int64_t>(i1 - i0)));
    Grade target = grade_add(g0, grade_scale(lam, Rat(static_cast<std::int64_t>(i0))));
    for (const auto& [i, g] : nz)
        if (grade_cmp(grade_add(g, grade_scale(lam, Rat(static_cast<std::int64_t>(i)))), target) != 0)
            return std::nullopt;
    return lam;
}

FPoly descend_homogenizable(const GPoly& f, const Grade& lambda) {
    const auto& d = f.c[0].desc();
    if (!f.lead().is_one()) throw domain_error("descend: polynomial must be monic");
    if (f.c[0].is_zero()) throw domain_error("descend: zero constant term");
    Int e = ramification_order(lambda, d->lattice());
    std::int64_t ei = static_cast<std::int64_t>(e);
    int n = f.degree();
    if (n % ei != 0) throw internal_error("descend: degree not divisible by ram order");
    GradedElement u = d->monomial(grade_scale(lambda, Rat(e)), d->f0()->one());
    int dd = n / static_cast<int>(ei);
    std::vector<FieldElem> out;
    for (int j = 0; j <= dd; ++j) {
        const GradedElement& a = f.c[static_cast<std::size_t>(j * ei)];
        if (a.is_zero()) {
            out.push_back(d->f0()->zero());
            continue;
        }
        GradedElement c = a * u.pow(-(dd - j));
        if (!c.is_homogeneous() || !grade_is_zero(c.grade()))
            throw internal_error("descend: coefficient did not land in grade zero");
        out.push_back(c.lead_coeff());
    }
    // exponents not divisible by e must vanish
    for (int i = 0; i <= n; ++i)
        if (i % ei != 0 && !f.c[static_cast<std::size_t>(i)].is_zero())
            throw internal_error("descend: support violates the congruence constraint");
    return FPoly(std::move(out));
}

GPoly lift_descended(const GDescPtr& d, const FPoly& q, const Grade& lambda) {
    Int e = ramification_order(lambda, d->lattice());
    std::int64_t ei = static_cast<std::int64_t>(e);
    GradedElement u = d->monomial(grade_scale(lambda, Rat(e)), d->f0()->one());
    int dq = q.degree();
    std::vector<GradedElement> out(static_cast<std::size_t>(dq) * ei + 1, d->zero());
    for (int i = 0; i <= dq; ++i) {
        if (q.c[static_cast<std::size_t>(i)].is_zero()) continue;
        out[static_cast<std::size_t>(i) * ei] =
            u.pow(dq - i).scale(q.c[static_cast<std::size_t>(i)]);
    }
    return GPoly(std::move(out));
}

namespace {

bool gpoly_less(const GPoly& a, const GPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return gpoly_to_string(a) < gpoly_to_string(b);
}

// rational root stripping + quadratic discriminants; enough for the QQ uses
// in scope (Kummer with n <= 2), errors otherwise
std::vector<std::pair<FPoly, int>> factor_over_q(const FPoly& f) {
    std::vector<std::pair<FPoly, int>> parts;
    FPoly rem = f;
    const FieldPtr& qq = f.c[0].field();
    // rational roots: scale to integer coefficients, candidates p/q with
    // p | c0, q | lead
    while (rem.degree() >= 1) {
        if (rem.degree() == 1) {
            parts.emplace_back(upoly_monic(rem), 1);
            rem = fpoly_const(qq->one());
            break;
        }
        if (rem.c[0].is_zero()) {
            parts.emplace_back(fpoly_x(qq), 1);
            rem.c.erase(rem.c.begin());
            continue;
        }
        Int den = 1;
        for (const auto& c : rem.c) den = int_lcm(den, rat_den(c.rational()));
        Int c0 = rat_num(rem.c[0].rational() * Rat(den));
        Int cl = rat_num(rem.lead().rational() * Rat(den));
        bool found = false;
        for (Int pnum = 1; pnum <= abs(c0) && !found; ++pnum) {
            if (abs(c0) % pnum != 0) continue;
            for (Int pden = 1; pden <= abs(cl) && !found; ++pden) {
                if (abs(cl) % pden != 0) continue;
                for (int sign : {1, -1}) {
                    FieldElem cand = qq->from_rat(Rat(sign * pnum, pden));
                    if (upoly_eval(rem, cand).is_zero()) {
                        FPoly lin(std::vector<FieldElem>{-cand, qq->one()});
                        parts.emplace_back(lin, 1);
                        rem = upoly_divrem(rem, lin).first;
                        found = true;
                        break;
                    }
                }
            }
        }
        if (found) continue;
        if (rem.degree() == 2) {
            FieldElem a = rem.c[2], b = rem.c[1], c = rem.c[0];
            Rat disc = (b * b - qq->from_int(4) * a * c).rational();
            if (rat_sqrt(disc)) throw internal_error("rootless quadratic with square discriminant");
            parts.emplace_back(upoly_monic(rem), 1);
            rem = fpoly_const(qq->one());
            break;
        }
        throw domain_error("factorization over QQ beyond rational roots and quadratics");
    }
    // merge duplicates
    std::vector<std::pair<FPoly, int>> merged;
    for (auto& [g, m] : parts) {
        bool hit = false;
        for (auto& [h, mm] : merged)
            if (upoly_eq(g, h)) {
                mm += m;
                hit = true;
            }
        if (!hit) merged.emplace_back(g, m);
    }
    return merged;
}

}  // namespace

HomogFactors homog_factor(const GPoly& f) {
    if (f.is_zero()) throw domain_error("homog_factor: zero polynomial");
    const auto& d = f.c[0].desc();
    auto lam = is_homogenizable(f);
    if (!lam) throw domain_error("homog_factor: polynomial is not homogenizable");

    HomogFactors res;
    res.unit = f.lead();
    GPoly monic = upoly_scale(f, f.lead().inv());
    int xpow = 0;
    while (monic.degree() > 0 && monic.c[0].is_zero()) {
        monic.c.erase(monic.c.begin());
        ++xpow;
    }
    if (xpow > 0) {
        GPoly x(std::vector<GradedElement>{d->zero(), d->one()});
        res.parts.emplace_back(x, xpow);
    }
    if (monic.degree() >= 1) {
        FPoly down = descend_homogenizable(monic, *lam);
        std::vector<std::pair<FPoly, int>> dparts;
        if (d->f0()->finite()) {
            auto fac = poly_factor(down);
            dparts = fac.parts;
        } else {
            dparts = factor_over_q(down);
        }
        Int e = ramification_order(*lam, d->lattice());
        for (auto& [q, m] : dparts) {
            GPoly lifted = lift_descended(d, q, *lam);
            auto check_lam = is_homogenizable(lifted);
            if (!check_lam) throw internal_error("homog_factor: lifted factor not homogenizable");
            if (lifted.degree() % static_cast<std::int64_t>(e) != 0)
                throw internal_error("homog_factor: factor degree violates ramification order");
            res.parts.emplace_back(std::move(lifted), m);
        }
    }
    std::sort(res.parts.begin(), res.parts.end(),
              [](const auto& a, const auto& b) { return gpoly_less(a.first, b.first); });
    // round-trip certification
    GPoly prod(std::vector<GradedElement>{res.unit});
    for (const auto& [g, m] : res.parts)
        for (int i = 0; i < m; ++i) prod = upoly_mul(prod, g);
    if (!upoly_eq(prod, f)) throw internal_error("homog_factor: product check failed");
    return res;
}

}  // namespace grval
