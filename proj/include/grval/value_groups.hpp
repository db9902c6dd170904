// Totally ordered value groups Z^m under lexicographic order, their divisible
// hulls Q^m, full-rank sublattices of Q^m, and invariant factors of finite
// quotients.
#pragma once

#include "grval/numeric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace grval {

// Element of Z^m extended by a maximal element Top (the value of 0).
struct ValueVector {
    bool top = false;
    std::vector<std::int64_t> c;

    static ValueVector infinity(int rank) {
        ValueVector v;
        v.top = true;
        v.c.assign(static_cast<std::size_t>(rank), 0);
        return v;
    }
    static ValueVector of(std::vector<std::int64_t> coords) {
        ValueVector v;
        v.c = std::move(coords);
        return v;
    }
    int rank() const { return static_cast<int>(c.size()); }
};

enum class Ordering { Less, Equal, Greater };

// Total lexicographic order, coordinate 0 dominant; Top exceeds everything.
Ordering lex_compare(const ValueVector& a, const ValueVector& b);
ValueVector vv_add(const ValueVector& a, const ValueVector& b);
std::string vv_to_string(const ValueVector& v);

using HullVector = Grade;  // exact rationals in Q^m

// Full-rank lattice in Q^m. Basis rows are kept in canonical Hermite normal
// form so two lattices are equal iff their stored bases are equal.
class Lattice {
  public:
    static Lattice standard(int rank);                       // Z^m
    static Lattice from_basis(std::vector<HullVector> rows); // rows must span rank-m
    static Lattice span(const Lattice& base, const std::vector<HullVector>& extra);

    int rank() const { return rank_; }
    const std::vector<HullVector>& basis() const { return basis_; }

    bool contains(const HullVector& h) const;
    // coordinates of h in the basis, when integral
    std::optional<std::vector<Int>> coords(const HullVector& h) const;
    std::vector<Rat> rational_coords(const HullVector& h) const;
    HullVector from_coords(const std::vector<Int>& k) const;

    // |this : sub| for sub a finite-index sublattice.
    Int index_over(const Lattice& sub) const;

    bool operator==(const Lattice& o) const { return rank_ == o.rank_ && basis_ == o.basis_; }

  private:
    int rank_ = 0;
    std::vector<HullVector> basis_;
};

// least e >= 1 with e*h in the lattice
Int ramification_order(const HullVector& h, const Lattice& lattice);

struct FiniteQuotient {
    std::vector<Int> invariant_factors;  // d_1 | d_2 | ... | d_r, all > 1
    Int order;
    int rank = 0;
    Int exponent;
    bool cyclic = false;
};

// Structure of (lattice + sum Z*gen_i) / lattice.
FiniteQuotient quotient_structure(const std::vector<HullVector>& gens, const Lattice& lattice);

// Integer matrix normal forms (rows are generators).
using IntMat = std::vector<std::vector<Int>>;
// Row-style Hermite normal form: returns a row basis of the row span,
// upper-echelon with positive pivots and reduced entries above pivots.
IntMat hermite_normal_form(IntMat m);
// Diagonal of the Smith normal form, nontrivial entries only (d_i | d_{i+1}).
std::vector<Int> smith_invariant_factors(IntMat m);

// Hermite form with the unimodular transform: returns (H, U) with H = U * m,
// H in row echelon (zero rows kept so U stays square).
std::pair<IntMat, IntMat> hermite_with_transform(IntMat m);

// integer solution z of z * rows = target, if one exists
std::optional<std::vector<Int>> solve_integer_combination(const IntMat& rows,
                                                          const std::vector<Int>& target);

}  // namespace grval
