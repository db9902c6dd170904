#include "grval/crossed.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace grval {

// --------------------------------------------------------------------------
// NTower

NTowerPtr NTower::finite(std::int64_t p, int ndeg, int edeg) {
    if (edeg < 1 || ndeg % edeg != 0) throw domain_error("NTower: E0 degree must divide N0 degree");
    auto t = std::make_shared<NTower>();
    t->kind_ = Kind::Finite;
    t->n0_ = ndeg == 1 ? Field::prime(p) : Field::extension_canonical(p, ndeg);
    t->edeg_ = edeg;
    return t;
}

NTowerPtr NTower::multiquad(std::vector<std::int64_t> d) {
    if (d.empty()) throw domain_error("NTower: multiquad tower needs at least one generator");
    // pairwise products of subsets must be non-squares
    for (std::uint32_t mask = 1; mask < (1u << d.size()); ++mask) {
        Int prod = 1;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (mask & (1u << i)) prod *= d[i];
        if (rat_sqrt(Rat(prod))) throw domain_error("NTower: generators are not square-independent");
    }
    auto t = std::make_shared<NTower>();
    t->kind_ = Kind::MultiQuad;
    t->d_ = std::move(d);
    t->edeg_ = 1;
    return t;
}

Int NTower::n_over_e() const {
    if (kind_ == Kind::Finite) return n0_->degree() / edeg_;
    return int_pow(Int(2), d_.size());
}

NElem NTower::zero() const {
    NElem x;
    x.finite = kind_ == Kind::Finite;
    if (x.finite) x.fe = n0_->zero();
    return x;
}

NElem NTower::one() const { return from_int(1); }

NElem NTower::from_int(std::int64_t n) const {
    NElem x = zero();
    if (x.finite)
        x.fe = n0_->from_int(n);
    else if (n != 0)
        x.mq[0] = Rat(n);
    return x;
}

NElem NTower::add(const NElem& a, const NElem& b) const {
    NElem x = a;
    if (a.finite) {
        x.fe = a.fe + b.fe;
        return x;
    }
    for (const auto& [m, c] : b.mq) {
        auto it = x.mq.find(m);
        if (it == x.mq.end()) {
            x.mq.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) x.mq.erase(it);
        }
    }
    return x;
}

NElem NTower::neg(const NElem& a) const {
    NElem x = a;
    if (a.finite) {
        x.fe = -a.fe;
    } else {
        for (auto& [m, c] : x.mq) c = -c;
    }
    return x;
}

NElem NTower::sub(const NElem& a, const NElem& b) const { return add(a, neg(b)); }

NElem NTower::mul(const NElem& a, const NElem& b) const {
    NElem x = zero();
    if (a.finite) {
        x.fe = a.fe * b.fe;
        return x;
    }
    for (const auto& [m1, c1] : a.mq)
        for (const auto& [m2, c2] : b.mq) {
            // sqrt(d_i)^2 = d_i on the overlap
            Rat c = c1 * c2;
            std::uint32_t common = m1 & m2;
            for (std::size_t i = 0; i < d_.size(); ++i)
                if (common & (1u << i)) c *= d_[i];
            std::uint32_t m = m1 ^ m2;
            auto it = x.mq.find(m);
            if (it == x.mq.end()) {
                if (c != 0) x.mq.emplace(m, c);
            } else {
                it->second += c;
                if (it->second == 0) x.mq.erase(it);
            }
        }
    return x;
}

bool NTower::is_zero(const NElem& a) const { return a.finite ? a.fe.is_zero() : a.mq.empty(); }

bool NTower::is_one(const NElem& a) const { return eq(a, one()); }

bool NTower::eq(const NElem& a, const NElem& b) const {
    if (a.finite != b.finite) return false;
    return a.finite ? a.fe == b.fe : a.mq == b.mq;
}

NElem NTower::inv(const NElem& a) const {
    if (is_zero(a)) throw domain_error("division by zero in N0");
    if (a.finite) {
        NElem x = a;
        x.fe = a.fe.inv();
        return x;
    }
    // multiply by all nontrivial conjugates; the norm is rational
    NElem numer = one();
    for (std::uint32_t s = 1; s < (1u << d_.size()); ++s) {
        NAut aut;
        aut.flips = s;
        numer = mul(numer, apply(aut, a));
    }
    NElem norm = mul(a, numer);
    if (norm.mq.size() != 1 || norm.mq.begin()->first != 0)
        throw internal_error("multiquad norm is not rational");
    Rat nval = norm.mq.begin()->second;
    NElem x = numer;
    for (auto& [m, c] : x.mq) c /= nval;
    return x;
}

NElem NTower::pow(const NElem& a, Int e) const {
    if (e < 0) return pow(inv(a), -e);
    NElem r = one(), b = a;
    while (e > 0) {
        if ((e & 1) != 0) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

NAut NTower::identity_aut() const { return NAut{}; }

NAut NTower::compose(const NAut& a, const NAut& b) const {
    NAut r;
    if (kind_ == Kind::Finite) {
        r.frob = (a.frob + b.frob) % n0_->degree();
    } else {
        r.flips = a.flips ^ b.flips;
    }
    return r;
}

NAut NTower::inverse(const NAut& a) const {
    NAut r;
    if (kind_ == Kind::Finite)
        r.frob = (n0_->degree() - a.frob % n0_->degree()) % n0_->degree();
    else
        r.flips = a.flips;
    return r;
}

NAut NTower::pow_aut(const NAut& a, std::int64_t e) const {
    NAut r;
    if (kind_ == Kind::Finite) {
        std::int64_t k = n0_->degree();
        std::int64_t v = (a.frob % k) * (e % k) % k;
        if (v < 0) v += k;
        r.frob = static_cast<int>(v);
    } else {
        r.flips = (e % 2 == 0) ? 0 : a.flips;
    }
    return r;
}

bool NTower::aut_eq(const NAut& a, const NAut& b) const {
    return kind_ == Kind::Finite ? (a.frob % n0_->degree() + n0_->degree()) % n0_->degree() ==
                                       (b.frob % n0_->degree() + n0_->degree()) % n0_->degree()
                                 : a.flips == b.flips;
}

Int NTower::aut_order(const NAut& a) const {
    NAut x = a;
    Int n = 1;
    while (!aut_eq(x, identity_aut())) {
        x = compose(x, a);
        ++n;
        if (n > 1000) throw domain_error("automorphism order overflow");
    }
    return n;
}

NElem NTower::apply(const NAut& s, const NElem& x) const {
    if (kind_ == Kind::Finite) {
        NElem r = x;
        r.fe = x.fe.pow(int_pow(Int(n0_->p()), static_cast<std::uint64_t>(
                                                   ((s.frob % n0_->degree()) + n0_->degree()) %
                                                   n0_->degree())));
        return r;
    }
    NElem r = zero();
    for (const auto& [m, c] : x.mq) {
        int flipped = 0;
        for (std::size_t i = 0; i < d_.size(); ++i)
            if ((m & (1u << i)) && (s.flips & (1u << i))) ++flipped;
        Rat cc = (flipped % 2 == 0) ? c : -c;
        r.mq[m] = cc;
    }
    return r;
}

std::vector<NAut> NTower::galois_group() const {
    std::vector<NAut> out;
    if (kind_ == Kind::Finite) {
        for (int t = 0; t < n0_->degree() / edeg_; ++t) {
            NAut a;
            a.frob = t * edeg_;
            out.push_back(a);
        }
    } else {
        for (std::uint32_t s = 0; s < (1u << d_.size()); ++s) {
            NAut a;
            a.flips = s;
            out.push_back(a);
        }
    }
    return out;
}

bool NTower::in_e0(const NElem& x) const {
    for (const auto& s : galois_group())
        if (!eq(apply(s, x), x)) return false;
    return true;
}

std::vector<NElem> NTower::e0_span_basis() const {
    std::vector<NElem> out;
    if (kind_ == Kind::Finite) {
        // GF(p)-basis of E0 = GF(p^edeg) inside N0: powers of a sub-generator
        // found as a normal... take the fixed-field basis by scanning elements
        // is expensive; use powers of gen^((q-1)/(p^edeg-1)) which generates E0*
        Int q = n0_->cardinality();
        Int esize = int_pow(Int(n0_->p()), static_cast<std::uint64_t>(edeg_));
        FieldElem g0 = n0_->generator();
        if (n0_->kind() == Field::Kind::Prime) {
            out.push_back(one());
            return out;
        }
        FieldElem egen = g0.pow((q - 1) / (esize - 1));
        FieldElem pw = n0_->one();
        for (int i = 0; i < edeg_; ++i) {
            NElem e;
            e.finite = true;
            e.fe = pw;
            out.push_back(e);
            pw = pw * egen;
        }
    } else {
        out.push_back(one());
    }
    return out;
}

int NTower::coord_dim() const {
    if (kind_ == Kind::Finite) return n0_->degree();
    return 1 << d_.size();
}

std::vector<Rat> NTower::coords(const NElem& x) const {
    std::vector<Rat> v(static_cast<std::size_t>(coord_dim()), Rat(0));
    if (kind_ == Kind::Finite) {
        for (std::size_t i = 0; i < x.fe.coeffs().size(); ++i) v[i] = Rat(x.fe.coeffs()[i]);
    } else {
        for (const auto& [m, c] : x.mq) v[m] = c;
    }
    return v;
}

NElem NTower::from_coords(const std::vector<Rat>& v) const {
    NElem x = zero();
    if (kind_ == Kind::Finite) {
        std::vector<std::int64_t> c;
        for (const auto& r : v) {
            if (!is_integer(r)) throw domain_error("finite tower coordinates must be integers");
            c.push_back(static_cast<std::int64_t>(rat_num(r)));
        }
        x.fe = n0_->from_coeffs(std::move(c));
    } else {
        for (std::size_t m = 0; m < v.size(); ++m)
            if (v[m] != 0) x.mq[static_cast<std::uint32_t>(m)] = v[m];
    }
    return x;
}

std::string NTower::print(const NElem& x) const {
    if (kind_ == Kind::Finite) return x.fe.to_string();
    if (x.mq.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : x.mq) {
        if (!s.empty()) s += " + ";
        std::string cs = rat_to_string(c);
        s += "(" + cs + ")";
        for (std::size_t i = 0; i < d_.size(); ++i)
            if (m & (1u << i)) s += "*sqrt" + std::to_string(d_[i]);
    }
    return s;
}

namespace {

std::string strip_ws(const std::string& s) {
    std::string r;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) r += c;
    return r;
}

}  // namespace

NElem NTower::parse(const std::string& input) const {
    std::string s = strip_ws(input);
    if (s.empty()) throw domain_error("empty N0 element");
    NElem acc = zero();
    std::size_t pos = 0;
    int sign = 1;
    if (s[0] == '+' || s[0] == '-') {
        sign = s[0] == '-' ? -1 : 1;
        pos = 1;
    }
    while (pos <= s.size()) {
        std::size_t next = pos;
        int depth = 0;
        while (next < s.size() && (depth > 0 || (s[next] != '+' && s[next] != '-'))) {
            if (s[next] == '(') ++depth;
            if (s[next] == ')') --depth;
            ++next;
        }
        std::string term = s.substr(pos, next - pos);
        if (term.empty()) throw domain_error("malformed N0 element: '" + input + "'");
        // term: factors separated by '*'
        NElem val = from_int(sign);
        std::size_t tpos = 0;
        while (tpos < term.size()) {
            std::size_t star = term.find('*', tpos);
            std::string fac = term.substr(tpos, star == std::string::npos ? std::string::npos : star - tpos);
            if (!fac.empty() && fac.front() == '(' && fac.back() == ')') fac = fac.substr(1, fac.size() - 2);
            if (fac.rfind("sqrt", 0) == 0) {
                if (kind_ != Kind::MultiQuad) throw domain_error("sqrt factor in a finite tower");
                std::int64_t dv = std::stoll(fac.substr(4));
                bool found = false;
                for (std::size_t i = 0; i < d_.size(); ++i)
                    if (d_[i] == dv) {
                        NElem root = zero();
                        root.mq[1u << i] = 1;
                        val = mul(val, root);
                        found = true;
                    }
                if (!found) throw domain_error("unknown generator '" + fac + "'");
            } else if (fac.rfind("g", 0) == 0 && kind_ == Kind::Finite) {
                // g or g^k
                Int e = 1;
                if (fac.size() > 1) {
                    if (fac[1] != '^') throw domain_error("malformed factor '" + fac + "'");
                    e = Int(fac.substr(2));
                }
                NElem gen = zero();
                gen.fe = n0_->generator();
                val = mul(val, pow(gen, e));
            } else {
                val = mul(val, [&] {
                    NElem c = zero();
                    if (kind_ == Kind::Finite)
                        c.fe = n0_->from_rat(rat_from_string(fac));
                    else
                        c.mq[0] = rat_from_string(fac);
                    return c;
                }());
            }
            if (star == std::string::npos) break;
            tpos = star + 1;
        }
        acc = add(acc, val);
        if (next >= s.size()) break;
        sign = s[next] == '-' ? -1 : 1;
        pos = next + 1;
    }
    return acc;
}

std::string NTower::to_string() const {
    if (kind_ == Kind::Finite) {
        std::string e0 = edeg_ == 1 ? "GF(" + std::to_string(n0_->p()) + ")"
                                    : "GF(" + std::to_string(n0_->p()) + "^" + std::to_string(edeg_) + ")";
        return n0_->to_string() + "/" + e0;
    }
    std::string s = "QQ(";
    for (std::size_t i = 0; i < d_.size(); ++i) {
        if (i) s += ",";
        s += "sqrt" + std::to_string(d_[i]);
    }
    return s + ")/QQ";
}

// --------------------------------------------------------------------------
// CrossedProduct

Grade CrossedProduct::grade_of(const Wexp& w) const {
    Grade g = grade_zero(m_);
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != 0) g = grade_add(g, grade_scale(data_.gamma[i], Rat(w[i])));
    return g;
}

Lattice CrossedProduct::gamma_b() const {
    std::vector<HullVector> rows = data_.gamma;
    Lattice zf = Lattice::standard(m_);
    for (const auto& row : zf.basis()) rows.push_back(row);
    return Lattice::from_basis(std::move(rows));
}

Lattice CrossedProduct::gamma_f() const { return Lattice::standard(m_); }

NAut CrossedProduct::sigma_pow(const Wexp& w) const {
    NAut s = data_.tower->identity_aut();
    for (std::size_t i = 0; i < w.size(); ++i)
        s = data_.tower->compose(s, data_.tower->pow_aut(data_.sigma[i], w[i]));
    return s;
}

// z_k^a z_i = c * z_i z_k^a
static NElem pass_single(const NTower& t, const std::vector<std::vector<NElem>>& u,
                         const std::vector<NAut>& sigma, int k, std::int64_t a, int i) {
    NElem c = t.one();
    if (a >= 0) {
        for (std::int64_t s = 0; s < a; ++s)
            c = t.mul(c, t.apply(t.pow_aut(sigma[static_cast<std::size_t>(k)], s),
                                 u[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]));
    } else {
        for (std::int64_t s = 1; s <= -a; ++s)
            c = t.mul(c, t.inv(t.apply(t.pow_aut(sigma[static_cast<std::size_t>(k)], -s),
                                       u[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)])));
    }
    return c;
}

// z_k^a z_i^b = c * z_i^b z_k^a
static NElem pass_power(const NTower& t, const std::vector<std::vector<NElem>>& u,
                        const std::vector<NAut>& sigma, int k, std::int64_t a, int i, std::int64_t b) {
    NElem base = pass_single(t, u, sigma, k, a, i);
    NElem c = t.one();
    if (b >= 0) {
        for (std::int64_t s = 0; s < b; ++s)
            c = t.mul(c, t.apply(t.pow_aut(sigma[static_cast<std::size_t>(i)], s), base));
    } else {
        for (std::int64_t s = 1; s <= -b; ++s)
            c = t.mul(c, t.inv(t.apply(t.pow_aut(sigma[static_cast<std::size_t>(i)], -s), base)));
    }
    return c;
}

NElem CrossedProduct::reorder_coeff(const Wexp& w, const Wexp& x) const {
    const NTower& t = *data_.tower;
    // z^w z^x: move each z_i^{x_i} (i ascending) left past z_k^{w_k}, k > i;
    // the produced coefficient crosses z_1^{w_1+x_1}..z_i^{w_i} on its way to
    // the front
    NElem coeff = t.one();
    for (int i = 0; i < m_; ++i) {
        if (x[static_cast<std::size_t>(i)] == 0) continue;
        NElem local = t.one();
        for (int k = m_ - 1; k > i; --k) {
            if (w[static_cast<std::size_t>(k)] == 0) continue;
            local = t.mul(local, pass_power(t, data_.u, data_.sigma, k, w[static_cast<std::size_t>(k)],
                                            i, x[static_cast<std::size_t>(i)]));
        }
        // conjugate past the left part: z_1^{w1+x1} ... z_{i-1}^{w_{i-1}+x_{i-1}} z_i^{w_i}
        NAut left = t.identity_aut();
        for (int j = 0; j < i; ++j)
            left = t.compose(left, t.pow_aut(data_.sigma[static_cast<std::size_t>(j)],
                                             w[static_cast<std::size_t>(j)] + x[static_cast<std::size_t>(j)]));
        left = t.compose(left, t.pow_aut(data_.sigma[static_cast<std::size_t>(i)],
                                         w[static_cast<std::size_t>(i)]));
        coeff = t.mul(coeff, t.apply(left, local));
    }
    return coeff;
}

AlgebraElement CrossedProduct::zero() const { return {}; }

AlgebraElement CrossedProduct::one() const { return coeff(data_.tower->one()); }

AlgebraElement CrossedProduct::coeff(const NElem& c) const {
    return monomial(c, Wexp(static_cast<std::size_t>(m_), 0));
}

AlgebraElement CrossedProduct::z(int i) const {
    Wexp w(static_cast<std::size_t>(m_), 0);
    w[static_cast<std::size_t>(i)] = 1;
    return monomial(data_.tower->one(), w);
}

AlgebraElement CrossedProduct::monomial(const NElem& c, const Wexp& w) const {
    AlgebraElement a;
    if (static_cast<int>(w.size()) != m_) throw domain_error("bad exponent vector");
    if (!data_.tower->is_zero(c)) a.terms.emplace(w, c);
    return a;
}

AlgebraElement CrossedProduct::y(int i) const {
    Wexp w(static_cast<std::size_t>(m_), 0);
    w[static_cast<std::size_t>(i)] = data_.r[static_cast<std::size_t>(i)];
    return monomial(data_.tower->inv(data_.b[static_cast<std::size_t>(i)]), w);
}

AlgebraElement CrossedProduct::add(const AlgebraElement& a, const AlgebraElement& b) const {
    AlgebraElement r = a;
    const NTower& t = *data_.tower;
    for (const auto& [w, c] : b.terms) {
        auto it = r.terms.find(w);
        if (it == r.terms.end()) {
            r.terms.emplace(w, c);
        } else {
            it->second = t.add(it->second, c);
            if (t.is_zero(it->second)) r.terms.erase(it);
        }
    }
    return r;
}

AlgebraElement CrossedProduct::sub(const AlgebraElement& a, const AlgebraElement& b) const {
    AlgebraElement nb = b;
    for (auto& [w, c] : nb.terms) c = data_.tower->neg(c);
    return add(a, nb);
}

AlgebraElement CrossedProduct::mul(const AlgebraElement& a, const AlgebraElement& b) const {
    AlgebraElement r;
    const NTower& t = *data_.tower;
    for (const auto& [w, c] : a.terms)
        for (const auto& [x, d] : b.terms) {
            NElem cc = t.mul(t.mul(c, t.apply(sigma_pow(w), d)), reorder_coeff(w, x));
            Wexp wx(w.size());
            for (std::size_t i = 0; i < w.size(); ++i) wx[i] = w[i] + x[i];
            auto it = r.terms.find(wx);
            if (it == r.terms.end()) {
                if (!t.is_zero(cc)) r.terms.emplace(std::move(wx), cc);
            } else {
                it->second = t.add(it->second, cc);
                if (t.is_zero(it->second)) r.terms.erase(it);
            }
        }
    return r;
}

AlgebraElement CrossedProduct::mono_inverse(const AlgebraElement& a) const {
    if (a.terms.size() != 1) throw domain_error("mono_inverse needs a single term");
    const auto& [w, c] = *a.terms.begin();
    const NTower& t = *data_.tower;
    Wexp nw(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) nw[i] = -w[i];
    // (x z^{-w})(c z^w) = x sigma^{-w}(c) R(-w,w) = 1
    NElem x = t.inv(t.mul(t.apply(sigma_pow(nw), c), reorder_coeff(nw, w)));
    AlgebraElement r = monomial(x, nw);
    if (!eq(mul(r, a), one()) || !eq(mul(a, r), one()))
        throw internal_error("mono_inverse verification failed");
    return r;
}

bool CrossedProduct::eq(const AlgebraElement& a, const AlgebraElement& b) const {
    if (a.terms.size() != b.terms.size()) return false;
    auto it = b.terms.begin();
    for (const auto& [w, c] : a.terms) {
        if (w != it->first || !data_.tower->eq(c, it->second)) return false;
        ++it;
    }
    return true;
}

bool CrossedProduct::is_central(const AlgebraElement& a) const {
    const NTower& t = *data_.tower;
    for (int i = 0; i < m_; ++i) {
        AlgebraElement zi = z(i);
        if (!eq(mul(a, zi), mul(zi, a))) return false;
    }
    // against a residue generator and a sample unit
    NElem g = t.is_finite() ? [&] {
        NElem e = t.zero();
        e.fe = t.n0()->generator();
        return e;
    }()
                            : [&] {
                                  NElem e = t.zero();
                                  e.mq[1] = 1;
                                  return e;
                              }();
    AlgebraElement cg = coeff(g);
    return eq(mul(a, cg), mul(cg, a));
}

std::shared_ptr<const CrossedProduct> CrossedProduct::build(CrossedProductData data) {
    auto cp = std::make_shared<CrossedProduct>();
    CrossedProduct& c = const_cast<CrossedProduct&>(*cp);
    c.m_ = static_cast<int>(data.r.size());
    if (data.sigma.size() != data.r.size() || data.b.size() != data.r.size())
        throw domain_error("crossed product: inconsistent data sizes");
    if (data.u.size() != data.r.size()) throw domain_error("crossed product: U must be m x m");
    for (const auto& row : data.u)
        if (row.size() != data.r.size()) throw domain_error("crossed product: U must be m x m");
    const NTower& t = *data.tower;

    // grade defaults gamma_i = e_i / r_i
    if (data.gamma.empty()) {
        for (int i = 0; i < c.m_; ++i) {
            Grade g = grade_zero(c.m_);
            g[static_cast<std::size_t>(i)] = Rat(1, data.r[static_cast<std::size_t>(i)]);
            data.gamma.push_back(std::move(g));
        }
    }
    if (static_cast<int>(data.gamma.size()) != c.m_)
        throw domain_error("crossed product: need one grade per generator");
    {
        RatMat gm;
        for (const auto& g : data.gamma) gm.push_back(g);
        if (mat_det(gm) == 0) throw domain_error("crossed product: grades must be independent");
    }
    for (int i = 0; i < c.m_; ++i) {
        Grade gi = grade_scale(data.gamma[static_cast<std::size_t>(i)],
                               Rat(data.r[static_cast<std::size_t>(i)]));
        for (const auto& comp : gi)
            if (!is_integer(comp))
                throw domain_error("crossed product: r_i * gamma_i must be integral");
    }

    // group structure: orders and direct-sum decomposition
    Int prod = 1;
    for (std::size_t i = 0; i < data.r.size(); ++i) {
        if (data.r[i] < 1) throw domain_error("crossed product: orders must be positive");
        if (t.aut_order(data.sigma[i]) != data.r[i])
            throw domain_error("crossed product: sigma_i does not have order r_i");
        prod *= data.r[i];
    }
    if (prod != t.n_over_e())
        throw domain_error("crossed product: |G| must equal [N0:E0]");
    {
        std::vector<NAut> seen;
        Wexp w(data.r.size(), 0);
        while (true) {
            NAut s = t.identity_aut();
            for (std::size_t i = 0; i < w.size(); ++i)
                s = t.compose(s, t.pow_aut(data.sigma[i], w[i]));
            for (const auto& other : seen)
                if (t.aut_eq(s, other))
                    throw domain_error("crossed product: the sigma_i do not give a direct sum");
            seen.push_back(s);
            std::size_t i = 0;
            while (i < w.size() && w[i] + 1 == data.r[i]) w[i++] = 0;
            if (i == w.size()) break;
            ++w[i];
        }
    }

    // U-table shape
    for (std::size_t i = 0; i < data.u.size(); ++i) {
        if (!t.is_one(data.u[i][i])) throw domain_error("crossed product: u_{ii} must be 1");
        for (std::size_t j = 0; j < data.u.size(); ++j) {
            if (t.is_zero(data.u[i][j])) throw domain_error("crossed product: u entries must be units");
            if (!t.eq(data.u[j][i], t.inv(data.u[i][j])))
                throw domain_error("crossed product: u_{ji} must equal u_{ij}^{-1}");
        }
    }

    c.data_ = std::move(data);

    // associativity on basis triples: z_i, z_j, z_k and a residue generator
    std::vector<AlgebraElement> probes;
    for (int i = 0; i < c.m_; ++i) probes.push_back(c.z(i));
    {
        NElem g = t.is_finite() ? [&] {
            NElem e = t.zero();
            e.fe = t.n0()->generator();
            return e;
        }()
                                : [&] {
                                      NElem e = t.zero();
                                      e.mq[1] = 1;
                                      return e;
                                  }();
        probes.push_back(c.coeff(g));
        // one negative-exponent probe
        Wexp w(static_cast<std::size_t>(c.m_), 0);
        w[0] = -1;
        probes.push_back(c.monomial(t.one(), w));
    }
    for (const auto& a : probes)
        for (const auto& b2 : probes)
            for (const auto& d2 : probes)
                if (!c.eq(c.mul(c.mul(a, b2), d2), c.mul(a, c.mul(b2, d2))))
                    throw domain_error("crossed product: associativity check failed");

    // centrality of y_i = b_i^{-1} z_i^{r_i} (the b-compatibility conditions)
    for (int i = 0; i < c.m_; ++i)
        if (!c.is_central(c.y(i)))
            throw domain_error("crossed product: y_" + std::to_string(i + 1) +
                               " = b_i^{-1} z_i^{r_i} is not central (incompatible U/b data)");
    return cp;
}

NAut CrossedProduct::theta_of_grade(const Grade& g) const {
    auto k = gamma_b().coords(g);
    if (!k) throw domain_error("theta: grade is not in Gamma_B");
    // gamma_b basis rows are HNF-combinations; recover an exponent w with
    // grade_of(w) == g by solving over the gamma matrix
    RatMat gm;
    for (const auto& row : data_.gamma) gm.push_back(row);
    auto x = solve_row(gm, g);
    Wexp w;
    for (const auto& xi : x) {
        if (!is_integer(xi)) throw domain_error("theta: grade is not a z-monomial grade");
        w.push_back(static_cast<std::int64_t>(rat_num(xi)));
    }
    // conjugation by z^w on a residue generator, matched against the group
    const NTower& t = *data_.tower;
    AlgebraElement mono = monomial(t.one(), w);
    AlgebraElement mono_inv = mono_inverse(mono);
    for (const auto& cand : t.galois_group()) {
        bool ok = true;
        std::vector<NElem> probes;
        if (t.is_finite()) {
            NElem e = t.zero();
            e.fe = t.n0()->generator();
            probes.push_back(e);
        } else {
            for (std::size_t i = 0; i < t.dlist().size(); ++i) {
                NElem e = t.zero();
                e.mq[1u << i] = 1;
                probes.push_back(e);
            }
        }
        for (const auto& pr : probes) {
            AlgebraElement conj = mul(mul(mono, coeff(pr)), mono_inv);
            if (!eq(conj, coeff(t.apply(cand, pr)))) {
                ok = false;
                break;
            }
        }
        if (ok) return cand;
    }
    throw internal_error("theta: conjugation did not match any Galois element");
}

bool CrossedProduct::theta_is_isomorphism() const {
    const NTower& t = *data_.tower;
    // injectivity on Gamma_B/Gamma_F and image size
    std::vector<NAut> images;
    Wexp w(static_cast<std::size_t>(m_), 0);
    while (true) {
        NAut s = theta_of_grade(grade_of(w));
        for (const auto& other : images)
            if (t.aut_eq(s, other)) return false;
        images.push_back(s);
        std::size_t i = 0;
        while (i < w.size() && w[i] + 1 == data_.r[i]) w[i++] = 0;
        if (i == w.size()) break;
        ++w[i];
    }
    return static_cast<Int>(images.size()) == t.n_over_e();
}

ClassifyReport CrossedProduct::classify(const std::vector<NElem>& ramified_witness_coeffs) const {
    ClassifyReport rep;
    const NTower& t = *data_.tower;
    rep.residue_dim = t.n_over_e();  // B0 = N0 once grades are independent
    Lattice gb = gamma_b();
    rep.lattice_index = gb.index_over(gamma_f());
    auto q = quotient_structure(gb.basis(), gamma_f());
    rep.gamma_quotient = q.invariant_factors;
    // independent dimension count: one z-monomial class per residue of the
    // exponent lattice mod (r_i), each carrying a copy of N0
    Int count = 1;
    for (auto ri : data_.r) count *= ri;
    rep.dim_over_f = count * t.n_over_e();
    rep.fundamental_equality = rep.dim_over_f == rep.residue_dim * rep.lattice_index;
    rep.semiramified = rep.residue_dim == rep.lattice_index;
    rep.inertially_split = rep.semiramified;  // N0 F is an inertial maximal subfield
    // totally ramified maximal subfield search among monomial candidates
    std::vector<NElem> witness = ramified_witness_coeffs;
    if (witness.empty()) {
        witness.push_back(t.one());
        witness.push_back(t.neg(t.one()));
        if (t.is_finite()) {
            NElem g = t.zero();
            g.fe = t.n0()->generator();
            witness.push_back(g);
        } else {
            for (std::uint32_t mk = 1; mk < (1u << t.dlist().size()); ++mk) {
                NElem e = t.zero();
                e.mq[mk] = 1;
                witness.push_back(e);
                e.mq[mk] = -1;
                witness.push_back(e);
            }
        }
    }
    // candidate generators: coset representatives of Gamma_B/Gamma_F on the
    // z-exponents, one per cyclic factor; search pairs/tuples built from the
    // sigma-base exponents
    std::vector<Wexp> reps;
    {
        Wexp w(static_cast<std::size_t>(m_), 0);
        while (true) {
            bool nonzero = std::any_of(w.begin(), w.end(), [](std::int64_t v) { return v != 0; });
            if (nonzero) reps.push_back(w);
            std::size_t i = 0;
            while (i < w.size() && w[i] + 1 == data_.r[i]) w[i++] = 0;
            if (i == w.size()) break;
            ++w[i];
        }
    }
    int needed = static_cast<int>(rep.gamma_quotient.size());
    if (needed == 0) {
        rep.nicely_semiramified = rep.semiramified;
        return rep;
    }
    // depth-first search for `needed` commuting monomials c*z^w whose powers
    // land in the center and whose grades generate Gamma_B/Gamma_F
    std::vector<std::pair<Wexp, NElem>> chosen;
    std::vector<std::pair<Wexp, std::string>> found;
    std::function<bool(std::size_t)> dfs = [&](std::size_t idx) -> bool {
        if (static_cast<int>(chosen.size()) == needed) {
            // grades must generate the full quotient
            std::vector<HullVector> gens;
            for (const auto& [w, cc] : chosen) {
                (void)cc;
                gens.push_back(grade_of(w));
            }
            auto qq = quotient_structure(gens, gamma_f());
            if (qq.order != rep.lattice_index) return false;
            for (const auto& [w, cc] : chosen)
                found.emplace_back(w, t.print(cc));
            return true;
        }
        for (std::size_t ri = idx; ri < reps.size(); ++ri) {
            for (const auto& cc : witness) {
                if (t.is_zero(cc)) continue;
                AlgebraElement cand = monomial(cc, reps[ri]);
                // power lands in the center
                Int ord = ramification_order(grade_of(reps[ri]), gamma_f());
                AlgebraElement pw = one();
                for (Int s = 0; s < ord; ++s) pw = mul(pw, cand);
                if (!is_central(pw)) continue;
                bool commutes = true;
                for (const auto& [w0, c0] : chosen) {
                    AlgebraElement other = monomial(c0, w0);
                    if (!eq(mul(cand, other), mul(other, cand))) {
                        commutes = false;
                        break;
                    }
                }
                if (!commutes) continue;
                chosen.emplace_back(reps[ri], cc);
                if (dfs(ri + 1)) return true;
                chosen.pop_back();
            }
        }
        return false;
    };
    rep.nicely_semiramified = rep.semiramified && dfs(0);
    if (rep.nicely_semiramified) rep.ramified_subfield = found;
    return rep;
}

DecResult CrossedProduct::dec_witness_search(const std::vector<NElem>& witness_set) const {
    DecResult res;
    const NTower& t = *data_.tower;
    if (witness_set.empty()) throw domain_error("dec_witness_search: empty witness set");
    if (m_ < 2) {
        // no commutators: trivially decomposable
        res.decomposable = true;
        res.witness.assign(static_cast<std::size_t>(m_), t.one());
        res.witness_verified = true;
        return res;
    }
    std::vector<std::size_t> idx(static_cast<std::size_t>(m_), 0);
    while (true) {
        ++res.searched;
        std::vector<NElem> a;
        bool zero = false;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            a.push_back(witness_set[idx[i]]);
            if (t.is_zero(a.back())) zero = true;
        }
        if (!zero) {
            bool all_trivial = true;
            for (int i = 0; i < m_ && all_trivial; ++i)
                for (int j = i + 1; j < m_ && all_trivial; ++j) {
                    NElem ui = data_.u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    NElem lhs = t.mul(ui, t.mul(t.apply(data_.sigma[static_cast<std::size_t>(i)],
                                                        a[static_cast<std::size_t>(j)]),
                                                t.inv(a[static_cast<std::size_t>(j)])));
                    NElem rhs = t.mul(t.apply(data_.sigma[static_cast<std::size_t>(j)],
                                              a[static_cast<std::size_t>(i)]),
                                      t.inv(a[static_cast<std::size_t>(i)]));
                    if (!t.eq(lhs, rhs)) all_trivial = false;
                }
            if (all_trivial) {
                res.decomposable = true;
                res.witness = a;
                // independent verification through the algebra product
                res.witness_verified = true;
                for (int i = 0; i < m_ && res.witness_verified; ++i)
                    for (int j = i + 1; j < m_ && res.witness_verified; ++j) {
                        AlgebraElement zi = mul(coeff(a[static_cast<std::size_t>(i)]), z(i));
                        AlgebraElement zj = mul(coeff(a[static_cast<std::size_t>(j)]), z(j));
                        AlgebraElement comm = mul(mul(zi, zj),
                                                  mul(mono_inverse(zi), mono_inverse(zj)));
                        if (!eq(comm, one())) res.witness_verified = false;
                    }
                if (!res.witness_verified)
                    throw internal_error("dec_witness_search: witness failed re-verification");
                return res;
            }
        }
        std::size_t i = 0;
        while (i < idx.size() && idx[i] + 1 == witness_set.size()) idx[i++] = 0;
        if (i == idx.size()) break;
        ++idx[i];
    }
    return res;
}

SubfieldReport CrossedProduct::verify_subfield(const std::vector<AlgebraElement>& generators) const {
    const NTower& t = *data_.tower;
    SubfieldReport rep;
    rep.commutes = true;
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i + 1; j < generators.size(); ++j)
            if (!eq(mul(generators[i], generators[j]), mul(generators[j], generators[i])))
                rep.commutes = false;
    if (!rep.commutes) throw domain_error("verify_subfield: generators do not commute");

    // span closure over E0 per residue class of the exponents mod (r_i)
    auto reduce = [&](const Wexp& w) {
        Wexp k(w.size());
        Wexp red(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::int64_t r = data_.r[i];
            std::int64_t m = ((w[i] % r) + r) % r;
            red[i] = m;
            k[i] = (w[i] - m) / r;
        }
        return std::make_pair(red, k);
    };
    // move a term c z^w into canonical class coordinates: c z^w = c' * (central Y^k) z^red;
    // only the class and the adjusted coefficient matter for the span
    auto class_coeff = [&](const Wexp& w, const NElem& c) {
        auto [red, k] = reduce(w);
        // z^w = R * z^red * prod y_i^{k_i} * (b-powers ...): compute the exact factor by
        // dividing by the central part
        AlgebraElement cent = one();
        for (int i = 0; i < m_; ++i) {
            std::int64_t ki = k[static_cast<std::size_t>(i)];
            AlgebraElement yi = y(i);
            AlgebraElement f = ki >= 0 ? yi : mono_inverse(yi);
            for (std::int64_t s = 0; s < (ki >= 0 ? ki : -ki); ++s) cent = mul(cent, f);
        }
        AlgebraElement val = monomial(c, w);
        AlgebraElement base = mul(cent, monomial(t.one(), red));
        AlgebraElement q = mul(val, mono_inverse(base));
        if (q.terms.size() != 1) throw internal_error("class_coeff: non-monomial quotient");
        const auto& [wq, cq] = *q.terms.begin();
        for (auto vv : wq)
            if (vv != 0) throw internal_error("class_coeff: quotient has nonzero exponent");
        return std::make_pair(red, cq);
    };

    // E0-subspaces per class, with prime-field (resp. Q-) coordinates
    std::map<Wexp, std::vector<NElem>> spans;
    auto span_contains = [&](const std::vector<NElem>& sp, const NElem& v) {
        // coordinates over GF(p) resp. Q with E0-multiples expanded
        std::vector<std::vector<Rat>> rows;
        for (const auto& s : sp)
            for (const auto& e0b : t.e0_span_basis()) rows.push_back(t.coords(t.mul(e0b, s)));
        std::vector<Rat> target = t.coords(v);
        // gaussian elimination over Q resp. GF(p) -- over Q exact; finite
        // coords are integers mod p
        std::size_t dim = target.size();
        std::int64_t p = t.is_finite() ? t.n0()->p() : 0;
        auto normalize = [&](Rat x) {
            if (p == 0) return x;
            Int v2 = floor_mod(rat_num(x), Int(p));
            return Rat(v2);
        };
        std::vector<std::vector<Rat>> mat = rows;
        std::vector<Rat> rhs = target;
        std::vector<int> pivot_col;
        std::size_t rr = 0;
        for (std::size_t c2 = 0; c2 < dim; ++c2) {
            std::size_t pr = mat.size();
            for (std::size_t r2 = rr; r2 < mat.size(); ++r2)
                if (normalize(mat[r2][c2]) != 0) {
                    pr = r2;
                    break;
                }
            if (pr == mat.size()) continue;
            std::swap(mat[pr], mat[rr]);
            Rat inv;
            if (p == 0) {
                inv = Rat(1) / mat[rr][c2];
            } else {
                std::int64_t a = static_cast<std::int64_t>(rat_num(normalize(mat[rr][c2])));
                std::int64_t t2 = 1;
                for (std::int64_t x2 = 1; x2 < p; ++x2)
                    if ((a * x2) % p == 1) t2 = x2;
                inv = Rat(t2);
            }
            for (auto& x2 : mat[rr]) x2 = normalize(x2 * inv);
            for (std::size_t r2 = 0; r2 < mat.size(); ++r2) {
                if (r2 == rr) continue;
                Rat f = normalize(mat[r2][c2]);
                if (f == 0) continue;
                for (std::size_t cc = 0; cc < dim; ++cc)
                    mat[r2][cc] = normalize(mat[r2][cc] - f * mat[rr][cc]);
            }
            pivot_col.push_back(static_cast<int>(c2));
            ++rr;
            if (rr == mat.size()) break;
        }
        // reduce the target against the echelon rows
        for (std::size_t r2 = 0; r2 < rr; ++r2) {
            Rat f = normalize(rhs[static_cast<std::size_t>(pivot_col[r2])]);
            if (f == 0) continue;
            for (std::size_t cc = 0; cc < dim; ++cc)
                rhs[cc] = normalize(rhs[cc] - f * mat[r2][cc]);
        }
        return std::all_of(rhs.begin(), rhs.end(), [&](const Rat& x) { return normalize(x) == 0; });
    };
    auto span_add = [&](std::vector<NElem>& sp, const NElem& v) {
        if (t.is_zero(v) || span_contains(sp, v)) return false;
        sp.push_back(v);
        return true;
    };

    // seed: center (class 0 gets E0) plus the generators' terms
    {
        Wexp zero_w(static_cast<std::size_t>(m_), 0);
        spans[zero_w].push_back(t.one());
        for (const auto& g : generators)
            for (const auto& [w, c] : g.terms) {
                auto [red, cq] = class_coeff(w, c);
                span_add(spans[red], cq);
            }
    }
    // closure under products
    bool changed = true;
    int rounds = 0;
    while (changed) {
        changed = false;
        if (++rounds > 64) throw internal_error("verify_subfield: closure did not stabilize");
        std::vector<std::pair<Wexp, NElem>> items;
        for (const auto& [w, sp] : spans)
            for (const auto& v : sp) items.emplace_back(w, v);
        for (const auto& [w1, v1] : items)
            for (const auto& [w2, v2] : items) {
                AlgebraElement prod = mul(monomial(v1, w1), monomial(v2, w2));
                for (const auto& [wp, cp] : prod.terms) {
                    auto [red, cq] = class_coeff(wp, cp);
                    if (span_add(spans[red], cq)) changed = true;
                }
            }
    }

    Int e0dim_of_n0 = t.n_over_e();
    (void)e0dim_of_n0;
    Int dim = 0;
    std::vector<HullVector> grade_gens;
    for (const auto& [w, sp] : spans) {
        // dimension over E0 = (prime-field dimension) / [E0 : prime field]
        std::vector<std::vector<Rat>> rows;
        for (const auto& s : sp)
            for (const auto& e0b : t.e0_span_basis()) rows.push_back(t.coords(t.mul(e0b, s)));
        // rank over GF(p) resp. Q
        std::int64_t p = t.is_finite() ? t.n0()->p() : 0;
        auto normalize = [&](Rat x) {
            if (p == 0) return x;
            return Rat(floor_mod(rat_num(x), Int(p)));
        };
        std::size_t rank = 0;
        std::vector<std::vector<Rat>> mat = rows;
        std::size_t cdim = mat.empty() ? 0 : mat[0].size();
        std::size_t rr = 0;
        for (std::size_t c2 = 0; c2 < cdim && rr < mat.size(); ++c2) {
            std::size_t pr = mat.size();
            for (std::size_t r2 = rr; r2 < mat.size(); ++r2)
                if (normalize(mat[r2][c2]) != 0) {
                    pr = r2;
                    break;
                }
            if (pr == mat.size()) continue;
            std::swap(mat[pr], mat[rr]);
            for (std::size_t r2 = rr + 1; r2 < mat.size(); ++r2) {
                Rat f = normalize(mat[r2][c2]);
                if (f == 0) continue;
                Rat ratio;
                if (p == 0) {
                    ratio = f / mat[rr][c2];
                } else {
                    std::int64_t a = static_cast<std::int64_t>(rat_num(normalize(mat[rr][c2])));
                    std::int64_t inv = 1;
                    for (std::int64_t x2 = 1; x2 < p; ++x2)
                        if ((a * x2) % p == 1) inv = x2;
                    ratio = normalize(f * Rat(inv));
                }
                for (std::size_t cc = 0; cc < cdim; ++cc)
                    mat[r2][cc] = normalize(mat[r2][cc] - ratio * mat[rr][cc]);
            }
            ++rr;
            ++rank;
        }
        Int e0sz = static_cast<Int>(t.e0_span_basis().size());
        if (Int(rank) % e0sz != 0) throw internal_error("verify_subfield: span is not an E0-space");
        Int d_over_e0 = Int(rank) / e0sz;
        dim += d_over_e0;
        if (d_over_e0 > 0) {
            bool zero_class = std::all_of(w.begin(), w.end(), [](std::int64_t x) { return x == 0; });
            if (!zero_class) grade_gens.push_back(grade_of(w));
            if (zero_class) rep.residue_dim = d_over_e0;
        }
    }
    rep.dimension = dim;
    Lattice gs = grade_gens.empty() ? gamma_f() : Lattice::span(gamma_f(), grade_gens);
    rep.lattice_index = gs.index_over(gamma_f());
    rep.fundamental_equality = rep.dimension == rep.residue_dim * rep.lattice_index;
    rep.totally_ramified = rep.dimension == rep.lattice_index;
    rep.inertial = rep.dimension == rep.residue_dim;
    Int degB = 1;
    for (auto ri : data_.r) degB *= ri;
    rep.maximal = rep.dimension == degB;

    // generator orders: least n with g^n central (monomial generators only)
    bool kummer_ok = true;
    std::vector<Int> orders;
    for (const auto& g : generators) {
        if (g.terms.size() != 1) {
            kummer_ok = false;
            continue;
        }
        AlgebraElement pw = g;
        Int n = 1;
        while (!is_central(pw) && n <= rep.dimension + 1) {
            pw = mul(pw, g);
            ++n;
        }
        orders.push_back(n);
        if (t.is_finite()) {
            Int q0 = int_pow(Int(t.n0()->p()), static_cast<std::uint64_t>(t.e0_degree()));
            if ((q0 - 1) % n != 0) kummer_ok = false;  // need the n-th roots of unity in E0
        } else {
            if (n > 2) kummer_ok = false;
        }
    }
    rep.generator_orders = orders;
    Int prod_orders = 1;
    for (const auto& n : orders) prod_orders *= n;
    if (kummer_ok && !orders.empty() && prod_orders == rep.dimension) {
        std::vector<Int> inv = orders;
        std::sort(inv.begin(), inv.end());
        // normalize to a divisibility chain
        for (std::size_t i = 0; i + 1 < inv.size(); ++i)
            for (std::size_t j = i + 1; j < inv.size(); ++j)
                if (inv[j] % inv[i] != 0) {
                    Int g2 = int_gcd(inv[i], inv[j]);
                    Int l2 = inv[i] / g2 * inv[j];
                    inv[i] = g2;
                    inv[j] = l2;
                }
        std::sort(inv.begin(), inv.end());
        std::vector<Int> nz;
        for (const auto& x : inv)
            if (x > 1) nz.push_back(x);
        rep.kummer_group = nz;
    }
    return rep;
}

std::string CrossedProduct::print(const AlgebraElement& a) const {
    if (a.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : a.terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << data_.tower->print(c) << ")";
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] != 0) {
                os << "*z" << (i + 1);
                if (w[i] != 1) os << "^" << w[i];
            }
    }
    return os.str();
}

}  // namespace grval
