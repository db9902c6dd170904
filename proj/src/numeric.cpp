#include "grval/numeric.hpp"

#include <sstream>

namespace grval {

Int int_gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Int int_lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    Int g = int_gcd(a, b);
    Int l = (a / g) * b;
    return l < 0 ? Int(-l) : l;
}

Int int_pow(Int base, std::uint64_t e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

Int floor_div(const Int& a, const Int& b) {
    if (b == 0) throw domain_error("floor_div: division by zero");
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
    return q;
}

Int floor_mod(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

Rat rat_pow(const Rat& base, std::int64_t e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (base == 0) throw domain_error("rat_pow: zero to negative power");
        return Rat(1) / rat_pow(base, -e);
    }
    Rat r = 1, b = base;
    std::uint64_t k = static_cast<std::uint64_t>(e);
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

std::optional<Rat> rat_sqrt(const Rat& r) {
    if (r < 0) return std::nullopt;
    Int n = rat_num(r), d = rat_den(r);
    Int sn = sqrt(n), sd = sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rat(sn, sd);
}

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << rat_num(r);
    if (rat_den(r) != 1) os << "/" << rat_den(r);
    return os.str();
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw domain_error("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::exception&) {
        throw domain_error("malformed rational: '" + s + "'");
    }
}

int grade_cmp(const Grade& a, const Grade& b) {
    if (a.size() != b.size()) throw domain_error("grade rank mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    return 0;
}

bool grade_lt(const Grade& a, const Grade& b) { return grade_cmp(a, b) < 0; }

Grade grade_add(const Grade& a, const Grade& b) {
    if (a.size() != b.size()) throw domain_error("grade rank mismatch");
    Grade r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Grade grade_sub(const Grade& a, const Grade& b) {
    if (a.size() != b.size()) throw domain_error("grade rank mismatch");
    Grade r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Grade grade_neg(const Grade& a) {
    Grade r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

Grade grade_scale(const Grade& a, const Rat& s) {
    Grade r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

Grade grade_zero(int rank) { return Grade(static_cast<std::size_t>(rank), Rat(0)); }

bool grade_is_zero(const Grade& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

Grade grade_cwmin(const Grade& a, const Grade& b) {
    if (a.size() != b.size()) throw domain_error("grade rank mismatch");
    Grade r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] < b[i] ? a[i] : b[i];
    return r;
}

bool grade_cw_lt(const Grade& a, const Grade& b) {
    if (a.size() != b.size()) throw domain_error("grade rank mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] < b[i])) return false;
    return true;
}

std::string grade_to_string(const Grade& g) {
    std::string s = "(";
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) s += ", ";
        s += rat_to_string(g[i]);
    }
    return s + ")";
}

Rat mat_det(RatMat m) {
    std::size_t n = m.size();
    Rat det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rat inv = Rat(1) / m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rat f = m[r][col] * inv;
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

std::vector<Rat> solve_row(const RatMat& basis, const std::vector<Rat>& v) {
    // Transposed Gaussian elimination: find x with sum_i x_i * basis_i = v.
    std::size_t n = basis.size();
    if (n == 0 || basis[0].size() != n || v.size() != n)
        throw domain_error("solve_row: shape mismatch");
    RatMat aug(n, std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[j][i] = basis[i][j];
        aug[i][n] = v[i];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && aug[piv][col] == 0) ++piv;
        if (piv == n) throw domain_error("solve_row: singular basis");
        std::swap(aug[piv], aug[col]);
        Rat inv = Rat(1) / aug[col][col];
        for (auto& x : aug[col]) x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || aug[r][col] == 0) continue;
            Rat f = aug[r][col];
            for (std::size_t c = col; c <= n; ++c) aug[r][c] -= f * aug[col][c];
        }
    }
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
    return x;
}

}  // namespace grval
