// Polynomials over exact residue fields, with complete factorization over
// finite fields (squarefree + distinct-degree + equal-degree splitting,
// root enumeration as a cross-check for tiny fields).
#pragma once

#include "grval/fields.hpp"
#include "grval/upoly.hpp"

#include <string>
#include <vector>

namespace grval {

using FPoly = UPoly<FieldElem>;

FPoly fpoly_from_coeffs(const FieldPtr& f, std::vector<FieldElem> c);
FPoly fpoly_from_ints(const FieldPtr& f, const std::vector<std::int64_t>& c);
FPoly fpoly_x(const FieldPtr& f);
FPoly fpoly_const(const FieldElem& a);
FPoly fpoly_zero(const FieldPtr& f);

std::string fpoly_to_string(const FPoly& a, const std::string& var = "X");

struct FactorUnit {
    FieldElem unit;                            // leading coefficient
    std::vector<std::pair<FPoly, int>> parts;  // monic irreducible, multiplicity
};

// Complete factorization over a finite field. Factors come out sorted by
// (degree, coefficient order) and the certified product identity
//   unit * prod parts_i^{mult_i} == f
// is asserted before returning.
FactorUnit poly_factor(const FPoly& f);

// roots in the coefficient field, each listed once with multiplicity
std::vector<std::pair<FieldElem, int>> poly_roots(const FPoly& f);

bool poly_irreducible(const FPoly& f);

// resultant via the euclidean remainder chain
FieldElem fpoly_resultant(const FPoly& a, const FPoly& b);

}  // namespace grval
