#include "grval/poly.hpp"

#include <algorithm>
#include <random>

namespace grval {

FPoly fpoly_from_coeffs(const FieldPtr& f, std::vector<FieldElem> c) {
    for (const auto& x : c)
        if (!x.field()->same_as(*f)) throw domain_error("coefficient from wrong field");
    return FPoly(std::move(c));
}

FPoly fpoly_from_ints(const FieldPtr& f, const std::vector<std::int64_t>& c) {
    std::vector<FieldElem> v;
    v.reserve(c.size());
    for (auto x : c) v.push_back(f->from_int(x));
    return FPoly(std::move(v));
}

FPoly fpoly_x(const FieldPtr& f) { return fpoly_from_ints(f, {0, 1}); }

FPoly fpoly_const(const FieldElem& a) { return FPoly(std::vector<FieldElem>{a}); }

FPoly fpoly_zero(const FieldPtr&) { return FPoly{}; }

std::string fpoly_to_string(const FPoly& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::string s;
    for (std::size_t i = a.c.size(); i-- > 0;) {
        if (a.c[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        std::string cs = a.c[i].to_string();
        bool needs_parens = cs.find('+') != std::string::npos || cs.find(' ') != std::string::npos;
        if (i == 0) {
            s += needs_parens ? "(" + cs + ")" : cs;
        } else {
            if (!a.c[i].is_one()) s += (needs_parens ? "(" + cs + ")" : cs) + "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

namespace {

FieldPtr field_of(const FPoly& f) {
    if (f.is_zero()) throw domain_error("factorization of the zero polynomial");
    return f.c[0].field();
}

// f monic with f' == 0 over GF(q), q = p^k: f = g(x^p); returns the p-th root
// (coefficientwise c -> c^(q/p), exponents divided by p).
FPoly pth_root(const FPoly& f) {
    const FieldPtr& k = f.c[0].field();
    std::int64_t p = k->p();
    Int q = k->cardinality();
    Int e = q / p;
    std::vector<FieldElem> out;
    for (std::size_t i = 0; i < f.c.size(); i += static_cast<std::size_t>(p))
        out.push_back(f.c[i].pow(e));
    return FPoly(std::move(out));
}

// squarefree decomposition of a monic f: list of (g_i squarefree monic, mult)
std::vector<std::pair<FPoly, int>> squarefree(const FPoly& f, int mult) {
    std::vector<std::pair<FPoly, int>> out;
    if (f.degree() <= 0) return out;
    const FieldPtr& k = field_of(f);
    FPoly d = upoly_derivative(f, k->one());
    if (d.is_zero()) {
        // pure p-th power
        auto sub = squarefree(pth_root(f), mult * static_cast<int>(k->p()));
        out.insert(out.end(), sub.begin(), sub.end());
        return out;
    }
    FPoly g = upoly_gcd(f, d);
    FPoly w = upoly_divrem(f, g).first;  // product of squarefree part
    int i = 1;
    while (w.degree() > 0) {
        FPoly y = upoly_gcd(w, g);
        FPoly piece = upoly_divrem(w, y).first;  // factors of multiplicity exactly i
        if (piece.degree() > 0) out.emplace_back(upoly_monic(piece), mult * i);
        g = upoly_divrem(g, y).first;
        w = std::move(y);
        ++i;
    }
    if (g.degree() > 0) {
        auto sub = squarefree(pth_root(g), mult * static_cast<int>(k->p()));
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

std::uint64_t poly_hash(const FPoly& f) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (const auto& c : f.c) {
        for (auto x : c.coeffs()) mix(static_cast<std::uint64_t>(x) + 0x9e37);
    }
    mix(static_cast<std::uint64_t>(f.degree() + 7));
    return h;
}

FPoly random_poly_below(const FieldPtr& k, int deg, std::mt19937_64& rng) {
    std::vector<FieldElem> c;
    std::uniform_int_distribution<std::int64_t> d(0, k->p() - 1);
    for (int i = 0; i < deg; ++i) {
        std::vector<std::int64_t> v(static_cast<std::size_t>(k->degree()));
        for (auto& x : v) x = d(rng);
        c.push_back(k->from_coeffs(v));
    }
    return FPoly(std::move(c));
}

// equal-degree splitting: f monic squarefree, all irreducible factors of
// degree d; appends them to out
void equal_degree(const FPoly& f, int d, std::vector<FPoly>& out, std::mt19937_64& rng) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    const FieldPtr& k = field_of(f);
    Int q = k->cardinality();
    FPoly split;
    while (true) {
        FPoly r = random_poly_below(k, f.degree(), rng);
        if (r.degree() < 1) continue;
        FPoly g = upoly_gcd(r, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            split = g;
            break;
        }
        if (k->p() == 2) {
            // trace map sum r^(2^i), i < d*k over GF(2)
            FPoly t = upoly_mod(r, f);
            FPoly acc = t;
            int steps = d * k->degree();
            for (int i = 1; i < steps; ++i) {
                t = upoly_mod(upoly_mul(t, t), f);
                acc = upoly_add(acc, t);
            }
            FPoly g2 = upoly_gcd(acc, f);
            if (g2.degree() > 0 && g2.degree() < f.degree()) {
                split = g2;
                break;
            }
        } else {
            Int e = (int_pow(q, static_cast<std::uint64_t>(d)) - 1) / 2;
            FPoly w = upoly_pow_mod(r, e, f);
            w = upoly_sub(w, fpoly_const(k->one()));
            FPoly g2 = upoly_gcd(w, f);
            if (g2.degree() > 0 && g2.degree() < f.degree()) {
                split = g2;
                break;
            }
        }
    }
    equal_degree(split, d, out, rng);
    equal_degree(upoly_divrem(f, split).first, d, out, rng);
}

bool fpoly_less(const FPoly& a, const FPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.c.size(); i-- > 0;) {
        if (a.c[i] == b.c[i]) continue;
        return a.c[i] < b.c[i];
    }
    return false;
}

}  // namespace

FactorUnit poly_factor(const FPoly& f) {
    if (f.is_zero()) throw domain_error("factorization of the zero polynomial");
    const FieldPtr& k = field_of(f);
    if (!k->finite()) throw domain_error("factorization is only available over finite fields");
    FactorUnit res;
    res.unit = f.lead();
    FPoly monic = upoly_monic(f);
    // strip powers of X up front so gcd-based passes see a nonzero constant term
    int xpow = 0;
    while (monic.degree() > 0 && monic.c[0].is_zero()) {
        monic.c.erase(monic.c.begin());
        ++xpow;
    }
    if (xpow > 0) res.parts.emplace_back(fpoly_x(k), xpow);
    std::mt19937_64 rng(poly_hash(f));
    for (auto& [sf, mult] : squarefree(monic, 1)) {
        // distinct-degree pass
        FPoly rem = sf;
        FPoly x = fpoly_x(k);
        FPoly h = x;
        int d = 0;
        while (rem.degree() > 0) {
            ++d;
            if (2 * d > rem.degree()) {
                res.parts.emplace_back(rem, mult);
                break;
            }
            h = upoly_pow_mod(h, k->cardinality(), rem);
            FPoly g = upoly_gcd(upoly_sub(h, x), rem);
            if (g.degree() > 0) {
                std::vector<FPoly> pieces;
                equal_degree(g, d, pieces, rng);
                for (auto& piece : pieces) res.parts.emplace_back(piece, mult);
                rem = upoly_divrem(rem, g).first;
                h = upoly_mod(h, rem);
            }
        }
    }
    std::sort(res.parts.begin(), res.parts.end(),
              [](const auto& a, const auto& b) { return fpoly_less(a.first, b.first); });
    // certify the product identity
    FPoly check = fpoly_const(res.unit);
    for (const auto& [g, m] : res.parts)
        for (int i = 0; i < m; ++i) check = upoly_mul(check, g);
    if (!upoly_eq(check, f)) throw internal_error("poly_factor: product check failed");
    // tiny fields: certify low-degree factors by direct root absence
    if (k->cardinality() <= 64) {
        for (const auto& [g, m] : res.parts) {
            (void)m;
            if (g.degree() < 2 || g.degree() > 3) continue;
            for (const auto& a : k->elements())
                if (upoly_eval(g, a).is_zero())
                    throw internal_error("poly_factor: reported irreducible factor has a root");
        }
    }
    return res;
}

std::vector<std::pair<FieldElem, int>> poly_roots(const FPoly& f) {
    std::vector<std::pair<FieldElem, int>> out;
    for (const auto& [g, m] : poly_factor(f).parts)
        if (g.degree() == 1) out.emplace_back(-g.c[0] * g.c[1].inv(), m);
    return out;
}

bool poly_irreducible(const FPoly& f) {
    if (f.degree() <= 0) return false;
    auto fac = poly_factor(f);
    return fac.parts.size() == 1 && fac.parts[0].second == 1;
}

FieldElem fpoly_resultant(const FPoly& a, const FPoly& b) {
    const FieldPtr& k = field_of(a);
    if (a.is_zero() || b.is_zero()) return k->zero();
    FPoly f = a, g = b;
    FieldElem res = k->one();
    while (g.degree() > 0) {
        FPoly r = upoly_mod(f, g);
        if (r.is_zero()) return k->zero();
        // res(f,g) = (-1)^(deg f * deg g) * lc(g)^(deg f - deg r) * res(g,r)
        FieldElem sign = (f.degree() * g.degree()) % 2 == 1 ? -k->one() : k->one();
        res = res * sign * g.lead().pow(f.degree() - r.degree());
        f = std::move(g);
        g = std::move(r);
    }
    return res * g.lead().pow(f.degree());
}

}  // namespace grval
