// Newton polygons, the lambda-polynomial criterion, graded residue
// polynomials, monicization, quadratic Hensel lifting of coprime residue
// splits and of simple residue roots, slope splitting, and the valued-side
// extension builders.
#pragma once

#include "grval/graded_ext.hpp"
#include "grval/series.hpp"

#include <functional>

namespace grval {

struct NewtonData {
    // lower-hull vertices (i, v(a_i)), i ascending
    std::vector<std::pair<std::int64_t, Grade>> vertices;
    // per hull segment: lambda = -slope and its horizontal length, in vertex
    // order (lambda strictly decreasing)
    std::vector<std::pair<Grade, std::int64_t>> slopes;

    bool single_slope() const { return slopes.size() == 1; }
};

// requires a_0 * a_n != 0 and certain coefficient valuations
NewtonData newton_polygon(const SPoly& f);

struct LambdaPolynomial {
    SPoly f;
    Grade lambda;
    bool certified = false;
    GDescPtr ge;
    GPoly residue;  // f~^(lambda) over ge
};

// the valuation-inequality criterion; nullopt when some coefficient violates it
std::optional<LambdaPolynomial> is_lambda_polynomial(const SPoly& f);

inline const GPoly& residue_poly(const LambdaPolynomial& lp) {
    if (!lp.certified) throw domain_error("residue_poly: uncertified polynomial");
    return lp.residue;
}

struct Monicized {
    SPoly h;               // monic, integral coefficients, over eprime
    SeriesFieldPtr eprime; // ramified extension containing c
    SeriesElement c;       // v(c) = lambda
    SeriesElement lead;    // a_n transported to eprime
};

// h = f(cX)/(a_n c^n); by default c is the grade-lambda monomial of the
// minimal ramified extension containing it. The box controls the precision of
// the leading-coefficient inverse when a_n is not a monomial.
Monicized monicize(const LambdaPolynomial& lp, const Grade& workbox);
Monicized monicize(const LambdaPolynomial& lp, const SeriesFieldPtr& eprime, const SeriesElement& c,
                   const Grade& workbox);

// Th-style factor lift: split the residue as l * m with coprime descents and
// lift to f = g*h with residue_poly(g) = l and residue_poly(h) = m exactly.
// Coefficients of the results lie in the base field of f.
std::pair<LambdaPolynomial, LambdaPolynomial> hensel_factor(const LambdaPolynomial& lp,
                                                            const GPoly& l, const GPoly& m,
                                                            const Grade& workbox);

// Classical simple-root lifting at slope `lambda`: f must satisfy
// v(a_i) >= (n-i)*lambda + v(a_n), and bcoeff must be a simple root of the
// monicized residue (bcoeff = 0 lifts the positive-value root of a
// multi-slope polynomial). The result is returned to `workbox`.
SeriesElement hensel_root(const SPoly& f, const Grade& lambda, const FieldElem& bcoeff,
                          const Grade& workbox);
SeriesElement hensel_root(const LambdaPolynomial& lp, const GradedElement& b, const Grade& workbox);
SeriesElement hensel_root(const LambdaPolynomial& lp, const Grade& bgrade, const FieldElem& bcoeff,
                          const Grade& workbox);

// convenience: strip X^k, then split off one lambda-piece per Newton slope
struct SlopePiece {
    LambdaPolynomial piece;
    Grade lambda;
};
struct SlopeSplit {
    int x_power = 0;
    SeriesElement unit;  // overall leading coefficient
    std::vector<SlopePiece> pieces;
};
SlopeSplit slope_factor(const SPoly& f, const Grade& workbox);

// --------------------------------------------------------------------------
// valued extension builders

// A finite extension K/E presented inside an ambient iterated Laurent field.
// `gamma` and `residue` carry the true value group and residue field of K;
// the ambient lattice is the smallest per-variable refinement containing
// gamma.
struct ValuedExtension {
    SeriesFieldPtr base;
    SeriesFieldPtr ambient;
    Lattice gamma;
    FieldPtr residue;
    GDescPtr gk;                // canonical presentation of GK
    SeriesElement gen;          // designated generator a
    GradedElement gen_residue;  // a~ in the ambient graded field
    SPoly minpoly;              // over the ambient transport of base
    Int degree = 1;
};

// Fundamental-equality data of a valued extension record
struct ValuedDegrees {
    Int residue_degree;
    Int ram_index;
    Int total;
    bool defectless = true;
};
ValuedDegrees valued_degrees(const ValuedExtension& ve);
// inertial / totally ramified / tame / purely wild flags of a valued record
ExtensionFlags classify_valued(const ValuedExtension& ve);

// K = E[a] for an irreducible homogenizable g over GE with simple residue
// root; coefficient lifts default to exact monomial lifts
ValuedExtension build_root_extension(const SeriesFieldPtr& e, const GPoly& g, const Grade& workbox);

// K = E[b^(1/p^n)] in residue characteristic p; requires GE[a~] purely wild
// of dimension p^n
ValuedExtension build_purely_wild(const SeriesFieldPtr& e, const SeriesElement& b, int n,
                                  const Grade& workbox);

// iterated tame lifting: each step maps the current graded presentation to
// the minimal polynomial of the next generator
struct TameStepReport {
    GPoly minpoly;                      // over the graded field of the previous stage
    SeriesElement gen;                  // lifted valued generator
    std::vector<SeriesElement> conjugates;  // all roots of the step polynomial found in K
    std::vector<GradedElement> graded_conjugates;
    Int degree = 1;
};
struct TameCorrespondence {
    ValuedExtension ext;
    std::vector<TameStepReport> steps;
    bool galois = false;  // every step polynomial split in its stage
};
TameCorrespondence tame_correspond(const SeriesFieldPtr& e,
                                   const std::vector<std::function<GPoly(const GDescPtr&)>>& steps,
                                   const Grade& workbox);

}  // namespace grval
