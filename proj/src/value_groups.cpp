#include "grval/value_groups.hpp"

#include <algorithm>

namespace grval {

Ordering lex_compare(const ValueVector& a, const ValueVector& b) {
    if (!a.top && !b.top && a.c.size() != b.c.size())
        throw domain_error("lex_compare: rank mismatch");
    if (a.top && b.top) return Ordering::Equal;
    if (a.top) return Ordering::Greater;
    if (b.top) return Ordering::Less;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] < b.c[i]) return Ordering::Less;
        if (a.c[i] > b.c[i]) return Ordering::Greater;
    }
    return Ordering::Equal;
}

ValueVector vv_add(const ValueVector& a, const ValueVector& b) {
    if (!a.top && !b.top && a.c.size() != b.c.size())
        throw domain_error("vv_add: rank mismatch");
    if (a.top || b.top) return ValueVector::infinity(a.top ? b.rank() : a.rank());
    ValueVector r;
    r.c.resize(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

std::string vv_to_string(const ValueVector& v) {
    if (v.top) return "inf";
    std::string s = "(";
    for (std::size_t i = 0; i < v.c.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(v.c[i]);
    }
    return s + ")";
}

// --------------------------------------------------------------------------
// Integer normal forms

IntMat hermite_normal_form(IntMat m) {
    if (m.empty()) return m;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t pr = 0;
    for (std::size_t pc = 0; pc < cols && pr < rows; ++pc) {
        // Euclid down the column until one nonzero entry remains at pr.
        while (true) {
            std::size_t best = rows;
            for (std::size_t r = pr; r < rows; ++r)
                if (m[r][pc] != 0 && (best == rows || abs(m[r][pc]) < abs(m[best][pc]))) best = r;
            if (best == rows) break;  // column is zero below
            std::swap(m[pr], m[best]);
            bool clear = true;
            for (std::size_t r = pr + 1; r < rows; ++r) {
                if (m[r][pc] == 0) continue;
                Int q = floor_div(m[r][pc], m[pr][pc]);
                for (std::size_t c = 0; c < cols; ++c) m[r][c] -= q * m[pr][c];
                if (m[r][pc] != 0) clear = false;
            }
            if (clear) break;
        }
        if (m[pr][pc] == 0) continue;
        if (m[pr][pc] < 0)
            for (std::size_t c = 0; c < cols; ++c) m[pr][c] = -m[pr][c];
        // reduce entries above the pivot
        for (std::size_t r = 0; r < pr; ++r) {
            Int q = floor_div(m[r][pc], m[pr][pc]);
            if (q == 0) continue;
            for (std::size_t c = 0; c < cols; ++c) m[r][c] -= q * m[pr][c];
        }
        ++pr;
    }
    m.resize(pr);  // drop zero rows
    return m;
}

std::pair<IntMat, IntMat> hermite_with_transform(IntMat m) {
    std::size_t rows = m.size();
    IntMat u(rows, std::vector<Int>(rows, 0));
    for (std::size_t i = 0; i < rows; ++i) u[i][i] = 1;
    if (m.empty()) return {m, u};
    std::size_t cols = m[0].size();
    std::size_t pr = 0;
    for (std::size_t pc = 0; pc < cols && pr < rows; ++pc) {
        while (true) {
            std::size_t best = rows;
            for (std::size_t r = pr; r < rows; ++r)
                if (m[r][pc] != 0 && (best == rows || abs(m[r][pc]) < abs(m[best][pc]))) best = r;
            if (best == rows) break;
            std::swap(m[pr], m[best]);
            std::swap(u[pr], u[best]);
            bool clear = true;
            for (std::size_t r = pr + 1; r < rows; ++r) {
                if (m[r][pc] == 0) continue;
                Int q = floor_div(m[r][pc], m[pr][pc]);
                for (std::size_t c = 0; c < cols; ++c) m[r][c] -= q * m[pr][c];
                for (std::size_t c = 0; c < rows; ++c) u[r][c] -= q * u[pr][c];
                if (m[r][pc] != 0) clear = false;
            }
            if (clear) break;
        }
        if (m[pr][pc] == 0) continue;
        if (m[pr][pc] < 0) {
            for (std::size_t c = 0; c < cols; ++c) m[pr][c] = -m[pr][c];
            for (std::size_t c = 0; c < rows; ++c) u[pr][c] = -u[pr][c];
        }
        for (std::size_t r = 0; r < pr; ++r) {
            Int q = floor_div(m[r][pc], m[pr][pc]);
            if (q == 0) continue;
            for (std::size_t c = 0; c < cols; ++c) m[r][c] -= q * m[pr][c];
            for (std::size_t c = 0; c < rows; ++c) u[r][c] -= q * u[pr][c];
        }
        ++pr;
    }
    return {m, u};
}

std::optional<std::vector<Int>> solve_integer_combination(const IntMat& rows,
                                                          const std::vector<Int>& target) {
    auto [h, u] = hermite_with_transform(rows);
    std::size_t nr = rows.size();
    if (nr == 0) return std::nullopt;
    std::size_t nc = rows[0].size();
    // solve y * h = target by forward substitution over the echelon rows
    std::vector<Int> y(nr, 0), rem = target;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        if (h[r].empty() || h[r][c] == 0) {
            bool zero_row = std::all_of(h[r].begin(), h[r].end(), [](const Int& x) { return x == 0; });
            if (zero_row) break;
            continue;
        }
        if (rem[c] % h[r][c] != 0) {
            if (rem[c] != 0) return std::nullopt;
            ++r;
            continue;
        }
        Int q = rem[c] / h[r][c];
        y[r] = q;
        for (std::size_t cc = 0; cc < nc; ++cc) rem[cc] -= q * h[r][cc];
        ++r;
    }
    for (const auto& x : rem)
        if (x != 0) return std::nullopt;
    // z = y * u
    std::vector<Int> z(nr, 0);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nr; ++j) z[j] += y[i] * u[i][j];
    // verify
    std::vector<Int> chk(nc, 0);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t c = 0; c < nc; ++c) chk[c] += z[i] * rows[i][c];
    if (chk != target) return std::nullopt;
    return z;
}

std::vector<Int> smith_invariant_factors(IntMat m) {
    if (m.empty() || m[0].empty()) return {};
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t n = std::min(rows, cols);
    std::vector<Int> diag;
    std::size_t t = 0;
    while (t < n) {
        // find a nonzero pivot in the remaining block
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows && pi == rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m[i][j] != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == rows) break;
        std::swap(m[t], m[pi]);
        for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);
        // clear row and column t
        bool again = true;
        while (again) {
            again = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                if (m[t][t] == 0 || (m[i][t] % m[t][t]) != 0) {
                    // reduce by euclid; may need a swap
                    Int q = m[t][t] == 0 ? Int(0) : floor_div(m[i][t], m[t][t]);
                    for (std::size_t c = t; c < cols; ++c) m[i][c] -= q * m[t][c];
                    if (m[i][t] != 0) std::swap(m[t], m[i]);
                    again = true;
                } else {
                    Int q = m[i][t] / m[t][t];
                    for (std::size_t c = t; c < cols; ++c) m[i][c] -= q * m[t][c];
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                if (m[t][t] == 0 || (m[t][j] % m[t][t]) != 0) {
                    Int q = m[t][t] == 0 ? Int(0) : floor_div(m[t][j], m[t][t]);
                    for (std::size_t r = t; r < rows; ++r) m[r][j] -= q * m[r][t];
                    if (m[t][j] != 0)
                        for (std::size_t r = t; r < rows; ++r) std::swap(m[r][t], m[r][j]);
                    again = true;
                } else {
                    Int q = m[t][j] / m[t][t];
                    for (std::size_t r = t; r < rows; ++r) m[r][j] -= q * m[r][t];
                }
            }
        }
        if (m[t][t] < 0)
            for (std::size_t c = t; c < cols; ++c) m[t][c] = -m[t][c];
        diag.push_back(m[t][t]);
        ++t;
    }
    // enforce divisibility chain
    for (std::size_t i = 0; i + 1 < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j)
            if (diag[j] % diag[i] != 0) {
                Int g = int_gcd(diag[i], diag[j]);
                Int l = diag[i] / g * diag[j];
                diag[i] = g;
                diag[j] = l;
            }
    std::sort(diag.begin(), diag.end());
    std::vector<Int> out;
    for (auto& d : diag)
        if (d > 1) out.push_back(d);
    return out;
}

// --------------------------------------------------------------------------
// Lattices

Lattice Lattice::standard(int rank) {
    Lattice l;
    l.rank_ = rank;
    for (int i = 0; i < rank; ++i) {
        HullVector e(static_cast<std::size_t>(rank), Rat(0));
        e[static_cast<std::size_t>(i)] = 1;
        l.basis_.push_back(std::move(e));
    }
    return l;
}

Lattice Lattice::from_basis(std::vector<HullVector> rows) {
    if (rows.empty()) throw domain_error("Lattice: empty basis");
    std::size_t rank = rows[0].size();
    Int den = 1;
    for (const auto& r : rows) {
        if (r.size() != rank) throw domain_error("Lattice: ragged basis");
        for (const auto& x : r) den = int_lcm(den, rat_den(x));
    }
    IntMat im;
    for (const auto& r : rows) {
        std::vector<Int> row(rank);
        for (std::size_t j = 0; j < rank; ++j) row[j] = rat_num(r[j] * Rat(den));
        im.push_back(std::move(row));
    }
    im = hermite_normal_form(std::move(im));
    if (im.size() != rank) throw domain_error("Lattice: basis does not have full rank");
    Lattice l;
    l.rank_ = static_cast<int>(rank);
    for (const auto& r : im) {
        HullVector h(rank);
        for (std::size_t j = 0; j < rank; ++j) h[j] = Rat(r[j], den);
        l.basis_.push_back(std::move(h));
    }
    return l;
}

Lattice Lattice::span(const Lattice& base, const std::vector<HullVector>& extra) {
    std::vector<HullVector> rows = base.basis_;
    rows.insert(rows.end(), extra.begin(), extra.end());
    return from_basis(std::move(rows));
}

std::vector<Rat> Lattice::rational_coords(const HullVector& h) const {
    if (static_cast<int>(h.size()) != rank_) throw domain_error("Lattice: rank mismatch");
    RatMat b;
    for (const auto& r : basis_) b.push_back(r);
    return solve_row(b, h);
}

std::optional<std::vector<Int>> Lattice::coords(const HullVector& h) const {
    auto q = rational_coords(h);
    std::vector<Int> k(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (!is_integer(q[i])) return std::nullopt;
        k[i] = rat_num(q[i]);
    }
    return k;
}

bool Lattice::contains(const HullVector& h) const { return coords(h).has_value(); }

HullVector Lattice::from_coords(const std::vector<Int>& k) const {
    HullVector h(static_cast<std::size_t>(rank_), Rat(0));
    for (std::size_t i = 0; i < k.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j) h[j] += Rat(k[i]) * basis_[i][j];
    return h;
}

Int Lattice::index_over(const Lattice& sub) const {
    RatMat mine, theirs;
    for (const auto& r : basis_) mine.push_back(r);
    for (const auto& r : sub.basis_) theirs.push_back(r);
    Rat idx = mat_det(theirs) / mat_det(mine);
    if (!is_integer(idx) || rat_num(idx) == 0)
        throw domain_error("index_over: not a finite-index sublattice");
    Int n = rat_num(idx);
    return n < 0 ? Int(-n) : n;
}

Int ramification_order(const HullVector& h, const Lattice& lattice) {
    auto q = lattice.rational_coords(h);
    Int e = 1;
    for (const auto& x : q) e = int_lcm(e, rat_den(x));
    return e;
}

FiniteQuotient quotient_structure(const std::vector<HullVector>& gens, const Lattice& lattice) {
    // (L + sum Z g_i)/L  ~  L' / L with L' the joint span; invariant factors of
    // the matrix expressing a basis of L in a basis of L'.
    Lattice big = gens.empty() ? lattice : Lattice::span(lattice, gens);
    IntMat rel;
    for (const auto& b : lattice.basis()) {
        auto k = big.coords(b);
        if (!k) throw internal_error("quotient_structure: sublattice coordinates not integral");
        rel.push_back(*k);
    }
    FiniteQuotient q;
    q.invariant_factors = smith_invariant_factors(std::move(rel));
    q.order = 1;
    for (const auto& d : q.invariant_factors) q.order *= d;
    q.rank = static_cast<int>(q.invariant_factors.size());
    q.exponent = q.invariant_factors.empty() ? Int(1) : q.invariant_factors.back();
    q.cyclic = q.rank <= 1;
    return q;
}

}  // namespace grval
