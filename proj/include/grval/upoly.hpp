// Dense univariate polynomials over any exact coefficient ring that provides
// value-semantic +, -, *, unary -, is_zero(), and (where division is used)
// inv(). Coefficients are stored low-to-high with a nonzero leading term.
#pragma once

#include "grval/numeric.hpp"

#include <utility>
#include <vector>

namespace grval {

template <class K>
struct UPoly {
    std::vector<K> c;

    UPoly() = default;
    explicit UPoly(std::vector<K> coeffs) : c(std::move(coeffs)) { normalize(); }

    void normalize() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const K& lead() const {
        if (c.empty()) throw domain_error("leading coefficient of zero polynomial");
        return c.back();
    }
    K at(std::size_t i, const K& zero) const { return i < c.size() ? c[i] : zero; }
};

template <class K>
UPoly<K> upoly_add(const UPoly<K>& a, const UPoly<K>& b) {
    UPoly<K> r;
    std::size_t n = std::max(a.c.size(), b.c.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (i < a.c.size() && i < b.c.size())
            r.c.push_back(a.c[i] + b.c[i]);
        else if (i < a.c.size())
            r.c.push_back(a.c[i]);
        else
            r.c.push_back(b.c[i]);
    }
    r.normalize();
    return r;
}

template <class K>
UPoly<K> upoly_neg(const UPoly<K>& a) {
    UPoly<K> r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

template <class K>
UPoly<K> upoly_sub(const UPoly<K>& a, const UPoly<K>& b) {
    return upoly_add(a, upoly_neg(b));
}

template <class K>
UPoly<K> upoly_mul(const UPoly<K>& a, const UPoly<K>& b) {
    UPoly<K> r;
    if (a.is_zero() || b.is_zero()) return r;
    K zero = a.c[0] - a.c[0];
    r.c.assign(a.c.size() + b.c.size() - 1, zero);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
    r.normalize();
    return r;
}

template <class K>
UPoly<K> upoly_scale(const UPoly<K>& a, const K& s) {
    UPoly<K> r = a;
    for (auto& x : r.c) x = x * s;
    r.normalize();
    return r;
}

// division with remainder; the divisor's leading coefficient must be a unit
template <class K>
std::pair<UPoly<K>, UPoly<K>> upoly_divrem(const UPoly<K>& a, const UPoly<K>& b) {
    if (b.is_zero()) throw domain_error("polynomial division by zero");
    UPoly<K> rem = a, quo;
    if (a.degree() < b.degree()) return {quo, rem};
    K li = b.lead().inv();
    K zero = b.lead() - b.lead();
    quo.c.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, zero);
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        K f = rem.lead() * li;
        std::size_t off = static_cast<std::size_t>(rem.degree() - b.degree());
        quo.c[off] = quo.c[off] + f;
        for (std::size_t i = 0; i < b.c.size(); ++i)
            rem.c[off + i] = rem.c[off + i] - f * b.c[i];
        rem.normalize();
    }
    quo.normalize();
    return {quo, rem};
}

template <class K>
UPoly<K> upoly_mod(const UPoly<K>& a, const UPoly<K>& b) {
    return upoly_divrem(a, b).second;
}

template <class K>
UPoly<K> upoly_monic(const UPoly<K>& a) {
    if (a.is_zero()) return a;
    return upoly_scale(a, a.lead().inv());
}

template <class K>
UPoly<K> upoly_gcd(UPoly<K> a, UPoly<K> b) {
    while (!b.is_zero()) {
        UPoly<K> r = upoly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return upoly_monic(a);
}

// returns (g, s, t) with g = gcd = s*a + t*b, g monic
template <class K>
std::tuple<UPoly<K>, UPoly<K>, UPoly<K>> upoly_xgcd(UPoly<K> a, UPoly<K> b) {
    UPoly<K> s0, s1, t0, t1;
    if (!a.is_zero()) {
        K one = a.lead() * a.lead().inv();
        s0.c = {one};
    } else if (!b.is_zero()) {
        K one = b.lead() * b.lead().inv();
        t1.c = {one};
        s1 = s0;
    }
    if (!b.is_zero()) {
        K one = b.lead() * b.lead().inv();
        t1.c = {one};
    }
    while (!b.is_zero()) {
        auto [q, r] = upoly_divrem(a, b);
        UPoly<K> s2 = upoly_sub(s0, upoly_mul(q, s1));
        UPoly<K> t2 = upoly_sub(t0, upoly_mul(q, t1));
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (a.is_zero()) return {a, s0, t0};
    K li = a.lead().inv();
    return {upoly_scale(a, li), upoly_scale(s0, li), upoly_scale(t0, li)};
}

template <class K>
K upoly_eval(const UPoly<K>& a, const K& x) {
    K r = x - x;  // zero of the right ring
    for (std::size_t i = a.c.size(); i-- > 0;) r = r * x + a.c[i];
    return r;
}

template <class K>
UPoly<K> upoly_derivative(const UPoly<K>& a, const K& one) {
    UPoly<K> r;
    for (std::size_t i = 1; i < a.c.size(); ++i) {
        K n = one - one;
        for (std::size_t j = 0; j < i; ++j) n = n + one;
        r.c.push_back(a.c[i] * n);
    }
    r.normalize();
    return r;
}

template <class K>
UPoly<K> upoly_pow_mod(UPoly<K> base, Int e, const UPoly<K>& m) {
    UPoly<K> r;
    r.c = {m.lead() * m.lead().inv()};  // one
    base = upoly_mod(base, m);
    while (e > 0) {
        if ((e & 1) != 0) r = upoly_mod(upoly_mul(r, base), m);
        base = upoly_mod(upoly_mul(base, base), m);
        e >>= 1;
    }
    return r;
}

template <class K>
bool upoly_eq(const UPoly<K>& a, const UPoly<K>& b) {
    if (a.c.size() != b.c.size()) return false;
    for (std::size_t i = 0; i < a.c.size(); ++i)
        if (!(a.c[i] == b.c[i])) return false;
    return true;
}

}  // namespace grval
