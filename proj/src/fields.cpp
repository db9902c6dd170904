#include "grval/fields.hpp"

#include <algorithm>

namespace grval {

// --------------------------------------------------------------------------
// GF(p)[x] helpers on raw coefficient vectors (low-to-high, entries in [0,p))

namespace {

using PVec = std::vector<std::int64_t>;

std::int64_t mod_p(std::int64_t a, std::int64_t p) {
    std::int64_t r = a % p;
    return r < 0 ? r + p : r;
}

std::int64_t inv_mod_p(std::int64_t a, std::int64_t p) {
    a = mod_p(a, p);
    if (a == 0) throw domain_error("division by zero in GF(p)");
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return mod_p(t, p);
}

void ptrim(PVec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

PVec psub(const PVec& a, const PVec& b, std::int64_t p) {
    PVec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::int64_t x = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
        r[i] = mod_p(x, p);
    }
    ptrim(r);
    return r;
}

PVec pmul(const PVec& a, const PVec& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    PVec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod_p(r[i + j] + a[i] * b[j], p);
    ptrim(r);
    return r;
}

PVec pmod(PVec a, const PVec& m, std::int64_t p) {
    if (m.empty()) throw domain_error("polynomial mod by zero");
    ptrim(a);
    std::int64_t li = inv_mod_p(m.back(), p);
    while (a.size() >= m.size()) {
        std::int64_t f = mod_p(a.back() * li, p);
        if (f != 0) {
            std::size_t off = a.size() - m.size();
            for (std::size_t i = 0; i < m.size(); ++i) a[off + i] = mod_p(a[off + i] - f * m[i], p);
        }
        a.pop_back();
        ptrim(a);
        if (a.size() < m.size()) break;
    }
    return a;
}

PVec pgcd(PVec a, PVec b, std::int64_t p) {
    while (!b.empty()) {
        PVec r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::int64_t li = inv_mod_p(a.back(), p);
        for (auto& x : a) x = mod_p(x * li, p);
    }
    return a;
}

PVec ppowmod(PVec base, Int e, const PVec& m, std::int64_t p) {
    PVec r{1};
    base = pmod(std::move(base), m, p);
    while (e > 0) {
        if ((e & 1) != 0) r = pmod(pmul(r, base, p), m, p);
        base = pmod(pmul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

// extended euclid: returns g monic with g = s*a + t*b (only s needed here)
PVec pinv_mod(const PVec& a, const PVec& m, std::int64_t p) {
    PVec r0 = m, r1 = pmod(a, m, p);
    ptrim(r1);
    PVec s0{}, s1{1};
    while (!r1.empty()) {
        // quotient of r0 by r1
        PVec q;
        {
            PVec rem = r0;
            std::int64_t li = inv_mod_p(r1.back(), p);
            if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
            while (rem.size() >= r1.size() && !rem.empty()) {
                std::int64_t f = mod_p(rem.back() * li, p);
                std::size_t off = rem.size() - r1.size();
                q[off] = f;
                for (std::size_t i = 0; i < r1.size(); ++i)
                    rem[off + i] = mod_p(rem[off + i] - f * r1[i], p);
                ptrim(rem);
            }
        }
        PVec r2 = psub(r0, pmul(q, r1, p), p);
        PVec s2 = psub(s0, pmul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) throw domain_error("inverse of non-unit residue");
    std::int64_t li = inv_mod_p(r0[0], p);
    PVec s = s0;
    for (auto& x : s) x = mod_p(x * li, p);
    return pmod(std::move(s), m, p);
}

bool is_prime_i64(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// irreducibility over GF(p): x^(p^k) == x mod f, and x^(p^(k/r)) != x for
// prime divisors r of k
bool irreducible_mod_p(const PVec& f, std::int64_t p) {
    if (f.size() < 2) return false;
    int k = static_cast<int>(f.size()) - 1;
    PVec x{0, 1};
    PVec xq = ppowmod(x, int_pow(Int(p), static_cast<std::uint64_t>(k)), f, p);
    if (psub(xq, x, p) != PVec{}) return false;
    for (int r = 2; r <= k; ++r) {
        if (k % r != 0 || !is_prime_i64(r)) continue;
        PVec xe = ppowmod(x, int_pow(Int(p), static_cast<std::uint64_t>(k / r)), f, p);
        PVec g = pgcd(psub(xe, x, p), f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace

// --------------------------------------------------------------------------
// Field

FieldPtr Field::prime(std::int64_t p) {
    if (!is_prime_i64(p)) throw domain_error(std::to_string(p) + " is not a prime");
    auto f = std::make_shared<Field>();
    f->kind_ = Kind::Prime;
    f->p_ = p;
    f->deg_ = 1;
    return f;
}

FieldPtr Field::extension(std::int64_t p, std::vector<std::int64_t> modulus) {
    if (!is_prime_i64(p)) throw domain_error(std::to_string(p) + " is not a prime");
    for (auto& c : modulus) c = mod_p(c, p);
    ptrim(modulus);
    if (modulus.size() < 3) throw domain_error("extension modulus must have degree >= 2");
    if (modulus.back() != 1) throw domain_error("extension modulus must be monic");
    if (!irreducible_mod_p(modulus, p))
        throw domain_error("extension modulus is reducible over GF(" + std::to_string(p) + ")");
    auto f = std::make_shared<Field>();
    f->kind_ = Kind::Extension;
    f->p_ = p;
    f->deg_ = static_cast<int>(modulus.size()) - 1;
    f->mod_ = std::move(modulus);
    return f;
}

FieldPtr Field::extension_canonical(std::int64_t p, int k) {
    if (k == 1) return prime(p);
    // scan monic degree-k polynomials in lexicographic coefficient order
    PVec c(static_cast<std::size_t>(k) + 1, 0);
    c.back() = 1;
    while (true) {
        if (irreducible_mod_p(c, p)) return extension(p, c);
        int i = 0;
        while (i < k && c[static_cast<std::size_t>(i)] == p - 1) c[static_cast<std::size_t>(i++)] = 0;
        if (i == k) throw internal_error("no irreducible polynomial found");
        ++c[static_cast<std::size_t>(i)];
    }
}

FieldPtr Field::rationals() {
    auto f = std::make_shared<Field>();
    f->kind_ = Kind::Rationals;
    return f;
}

Int Field::cardinality() const {
    if (!finite()) throw domain_error("cardinality of an infinite field");
    return int_pow(Int(p_), static_cast<std::uint64_t>(deg_));
}

FieldElem Field::zero() const {
    FieldElem e;
    e.f_ = shared_from_this();
    if (finite()) e.c_.assign(static_cast<std::size_t>(deg_), 0);
    return e;
}

FieldElem Field::one() const { return from_int(1); }

FieldElem Field::from_int(const Int& n) const {
    FieldElem e;
    e.f_ = shared_from_this();
    if (kind_ == Kind::Rationals) {
        e.q_ = Rat(n);
    } else {
        e.c_.assign(static_cast<std::size_t>(deg_), 0);
        e.c_[0] = static_cast<std::int64_t>(floor_mod(n, Int(p_)));
    }
    return e;
}

FieldElem Field::from_rat(const Rat& r) const {
    if (kind_ == Kind::Rationals) {
        FieldElem e;
        e.f_ = shared_from_this();
        e.q_ = r;
        return e;
    }
    // a/b with b prime to p
    FieldElem num = from_int(rat_num(r));
    FieldElem den = from_int(rat_den(r));
    return num / den;
}

FieldElem Field::from_coeffs(std::vector<std::int64_t> c) const {
    if (!finite()) throw domain_error("coefficient construction on QQ");
    for (auto& x : c) x = mod_p(x, p_);
    ptrim(c);
    if (static_cast<int>(c.size()) > deg_) {
        if (kind_ == Kind::Prime) throw domain_error("coefficient vector too long");
        c = pmod(std::move(c), mod_, p_);
    }
    c.resize(static_cast<std::size_t>(deg_), 0);
    FieldElem e;
    e.f_ = shared_from_this();
    e.c_ = std::move(c);
    return e;
}

FieldElem Field::generator() const {
    if (kind_ == Kind::Extension) return from_coeffs({0, 1});
    return one();
}

std::vector<FieldElem> Field::elements() const {
    if (!finite()) throw domain_error("enumeration of QQ");
    std::vector<FieldElem> out;
    PVec c(static_cast<std::size_t>(deg_), 0);
    while (true) {
        out.push_back(from_coeffs(c));
        int i = 0;
        while (i < deg_ && c[static_cast<std::size_t>(i)] == p_ - 1) c[static_cast<std::size_t>(i++)] = 0;
        if (i == deg_) break;
        ++c[static_cast<std::size_t>(i)];
    }
    return out;
}

std::string Field::to_string() const {
    switch (kind_) {
        case Kind::Rationals:
            return "QQ";
        case Kind::Prime:
            return "GF(" + std::to_string(p_) + ")";
        case Kind::Extension: {
            std::string m;
            for (int i = deg_; i >= 0; --i) {
                std::int64_t c = mod_[static_cast<std::size_t>(i)];
                if (c == 0) continue;
                if (!m.empty()) m += "+";
                if (i == 0) {
                    m += std::to_string(c);
                } else {
                    if (c != 1) m += std::to_string(c) + "*";
                    m += i == 1 ? "X" : "X^" + std::to_string(i);
                }
            }
            return "GF(" + std::to_string(p_) + "^" + std::to_string(deg_) + "; m=" + m + ")";
        }
    }
    return "?";
}

bool Field::same_as(const Field& o) const {
    return kind_ == o.kind_ && p_ == o.p_ && deg_ == o.deg_ && mod_ == o.mod_;
}

// --------------------------------------------------------------------------
// FieldElem

namespace {
void check_same(const FieldElem& a, const FieldElem& b) {
    if (!a.field() || !b.field()) throw domain_error("uninitialized field element");
    if (!a.field()->same_as(*b.field())) throw domain_error("mixed-field arithmetic");
}
}  // namespace

bool FieldElem::is_zero() const {
    if (!f_) throw domain_error("uninitialized field element");
    if (f_->kind() == Field::Kind::Rationals) return q_ == 0;
    return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x == 0; });
}

bool FieldElem::is_one() const { return *this == f_->one(); }

FieldElem FieldElem::operator+(const FieldElem& o) const {
    check_same(*this, o);
    FieldElem r = *this;
    if (f_->kind() == Field::Kind::Rationals) {
        r.q_ += o.q_;
    } else {
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = mod_p(c_[i] + o.c_[i], f_->p());
    }
    return r;
}

FieldElem FieldElem::operator-(const FieldElem& o) const { return *this + (-o); }

FieldElem FieldElem::operator-() const {
    FieldElem r = *this;
    if (f_->kind() == Field::Kind::Rationals) {
        r.q_ = -q_;
    } else {
        for (auto& x : r.c_) x = mod_p(-x, f_->p());
    }
    return r;
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    check_same(*this, o);
    if (f_->kind() == Field::Kind::Rationals) {
        FieldElem r = *this;
        r.q_ *= o.q_;
        return r;
    }
    PVec prod = pmul(c_, o.c_, f_->p());
    if (f_->kind() == Field::Kind::Extension) prod = pmod(std::move(prod), f_->modulus(), f_->p());
    FieldElem r = *this;
    ptrim(prod);
    prod.resize(c_.size(), 0);
    r.c_ = std::move(prod);
    return r;
}

FieldElem FieldElem::inv() const {
    if (is_zero()) throw domain_error("division by zero");
    if (f_->kind() == Field::Kind::Rationals) {
        FieldElem r = *this;
        r.q_ = Rat(1) / q_;
        return r;
    }
    FieldElem r = *this;
    if (f_->kind() == Field::Kind::Prime) {
        r.c_[0] = inv_mod_p(c_[0], f_->p());
    } else {
        PVec s = pinv_mod(c_, f_->modulus(), f_->p());
        s.resize(c_.size(), 0);
        r.c_ = std::move(s);
    }
    return r;
}

FieldElem FieldElem::pow(Int e) const {
    if (e < 0) return inv().pow(-e);
    FieldElem base = *this, r = f_->one();
    while (e > 0) {
        if ((e & 1) != 0) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

bool FieldElem::operator==(const FieldElem& o) const {
    check_same(*this, o);
    if (f_->kind() == Field::Kind::Rationals) return q_ == o.q_;
    return c_ == o.c_;
}

bool FieldElem::operator<(const FieldElem& o) const {
    check_same(*this, o);
    if (f_->kind() == Field::Kind::Rationals) return q_ < o.q_;
    for (std::size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

FieldElem FieldElem::frobenius() const {
    if (!f_->finite()) throw domain_error("frobenius on QQ");
    return pow(Int(f_->p()));
}

std::string FieldElem::to_string() const {
    if (!f_) return "?";
    if (f_->kind() == Field::Kind::Rationals) return rat_to_string(q_);
    if (f_->kind() == Field::Kind::Prime) return std::to_string(c_[0]);
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0) {
            s += std::to_string(c_[i]);
        } else {
            if (c_[i] != 1) s += std::to_string(c_[i]) + "*";
            s += i == 1 ? "g" : "g^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

std::vector<FieldElem> frobenius_orbit(const FieldElem& a) {
    if (!a.field() || !a.field()->finite()) throw domain_error("frobenius_orbit needs a finite field");
    std::vector<FieldElem> orbit{a};
    FieldElem x = a.frobenius();
    while (!(x == a)) {
        orbit.push_back(x);
        x = x.frobenius();
    }
    return orbit;
}

// --------------------------------------------------------------------------
// FieldEmbedding

FieldEmbedding FieldEmbedding::identity(const FieldPtr& f) {
    FieldEmbedding e;
    e.src_ = f;
    e.dst_ = f;
    e.gen_image_ = f->generator();
    return e;
}

FieldEmbedding FieldEmbedding::find(const FieldPtr& src, const FieldPtr& dst) {
    if (src->same_as(*dst)) return identity(src);
    if (!src->finite() || !dst->finite() || src->p() != dst->p() ||
        dst->degree() % src->degree() != 0)
        throw domain_error("no embedding " + src->to_string() + " -> " + dst->to_string());
    FieldEmbedding e;
    e.src_ = src;
    e.dst_ = dst;
    if (src->kind() == Field::Kind::Prime) {
        e.gen_image_ = dst->one();
        return e;
    }
    // first root of the source modulus in dst, in element order
    for (const auto& x : dst->elements()) {
        FieldElem v = dst->zero();
        for (std::size_t i = src->modulus().size(); i-- > 0;)
            v = v * x + dst->from_int(src->modulus()[i]);
        if (v.is_zero()) {
            e.gen_image_ = x;
            return e;
        }
    }
    throw internal_error("embedding root not found");
}

FieldEmbedding FieldEmbedding::explicit_map(const FieldPtr& src, const FieldPtr& dst,
                                            FieldElem gen_image) {
    FieldEmbedding e;
    e.src_ = src;
    e.dst_ = dst;
    e.gen_image_ = std::move(gen_image);
    if (src->kind() == Field::Kind::Extension) {
        FieldElem v = dst->zero();
        for (std::size_t i = src->modulus().size(); i-- > 0;)
            v = v * e.gen_image_ + dst->from_int(src->modulus()[i]);
        if (!v.is_zero()) throw domain_error("explicit_map: image is not a modulus root");
    }
    return e;
}

FieldElem FieldEmbedding::apply(const FieldElem& a) const {
    if (!a.field()->same_as(*src_)) throw domain_error("embedding applied to wrong field");
    if (src_->same_as(*dst_)) return a;
    FieldElem r = dst_->zero();
    for (std::size_t i = a.coeffs().size(); i-- > 0;)
        r = r * gen_image_ + dst_->from_int(a.coeffs()[i]);
    return r;
}

bool FieldEmbedding::contains(const FieldElem& b) const {
    if (src_->same_as(*dst_)) return true;
    // the image is the fixed field of x -> x^(p^deg(src))
    Int q = int_pow(Int(src_->p()), static_cast<std::uint64_t>(src_->degree()));
    return b.pow(q) == b;
}

FieldElem FieldEmbedding::section(const FieldElem& b) const {
    if (src_->same_as(*dst_)) return b;
    // solve sum_i c_i * gen_image^i = b over GF(p) coordinates
    std::int64_t p = src_->p();
    int n = src_->degree(), m = dst_->degree();
    std::vector<std::vector<std::int64_t>> cols;
    FieldElem pw = dst_->one();
    for (int i = 0; i < n; ++i) {
        cols.push_back(pw.coeffs());
        pw = pw * gen_image_;
    }
    // gaussian elimination on the m x n system
    std::vector<std::vector<std::int64_t>> aug(static_cast<std::size_t>(m),
                                               std::vector<std::int64_t>(static_cast<std::size_t>(n) + 1, 0));
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c) aug[r][c] = cols[c][static_cast<std::size_t>(r)];
        aug[r][static_cast<std::size_t>(n)] = b.coeffs()[static_cast<std::size_t>(r)];
    }
    std::vector<int> pivot_of_col(static_cast<std::size_t>(n), -1);
    int rr = 0;
    for (int c = 0; c < n && rr < m; ++c) {
        int pr = -1;
        for (int r = rr; r < m; ++r)
            if (aug[r][static_cast<std::size_t>(c)] != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(aug[static_cast<std::size_t>(pr)], aug[static_cast<std::size_t>(rr)]);
        std::int64_t li = inv_mod_p(aug[static_cast<std::size_t>(rr)][static_cast<std::size_t>(c)], p);
        for (auto& x : aug[static_cast<std::size_t>(rr)]) x = mod_p(x * li, p);
        for (int r = 0; r < m; ++r) {
            if (r == rr) continue;
            std::int64_t f = aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (f == 0) continue;
            for (int cc = 0; cc <= n; ++cc)
                aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] = mod_p(
                    aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -
                        f * aug[static_cast<std::size_t>(rr)][static_cast<std::size_t>(cc)],
                    p);
        }
        pivot_of_col[static_cast<std::size_t>(c)] = rr;
        ++rr;
    }
    for (int r = rr; r < m; ++r)
        if (aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(n)] != 0)
            throw domain_error("element not in embedded subfield");
    std::vector<std::int64_t> out(static_cast<std::size_t>(n), 0);
    for (int c = 0; c < n; ++c)
        if (pivot_of_col[static_cast<std::size_t>(c)] >= 0)
            out[static_cast<std::size_t>(c)] =
                aug[static_cast<std::size_t>(pivot_of_col[static_cast<std::size_t>(c)])]
                   [static_cast<std::size_t>(n)];
    return src_->from_coeffs(out);
}

}  // namespace grval
