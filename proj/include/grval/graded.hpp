// Graded fields in monomial presentation: F = F0-group algebra of a full-rank
// lattice in Q^m, every nonzero homogeneous element a unit. Elements are keyed
// by integer exponents relative to the canonical (HNF) lattice basis, so
// monomial multiplication is exponent addition; extensions carry their
// coefficient twists in the embedding maps (graded_ext.hpp).
#pragma once

#include "grval/fields.hpp"
#include "grval/poly.hpp"
#include "grval/series.hpp"
#include "grval/upoly.hpp"
#include "grval/value_groups.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace grval {

class GradedField;
using GDescPtr = std::shared_ptr<const GradedField>;

using GExp = std::vector<std::int64_t>;  // exponents w.r.t. the lattice basis

class GradedElement;

class GradedField : public std::enable_shared_from_this<GradedField> {
  public:
    static GDescPtr make(FieldPtr f0, Lattice lattice);

    const FieldPtr& f0() const { return f0_; }
    int rank() const { return rank_; }
    const Lattice& lattice() const { return lattice_; }

    Grade grade_of_exp(const GExp& e) const;
    GExp exp_of_grade(const Grade& g) const;  // throws if g is outside the lattice

    GradedElement zero() const;
    GradedElement one() const;
    GradedElement constant(const FieldElem& c) const;
    GradedElement monomial_exp(const GExp& e, const FieldElem& c) const;
    GradedElement monomial(const Grade& g, const FieldElem& c) const;

    std::string to_string() const;
    bool same_as(const GradedField& o) const;

  private:
    FieldPtr f0_;
    int rank_ = 0;
    Lattice lattice_;
};

class GradedElement {
  public:
    GradedElement() = default;

    const GDescPtr& desc() const { return d_; }
    const std::map<GExp, FieldElem>& terms() const { return sup_; }

    bool is_zero() const { return sup_.empty(); }
    bool is_one() const;
    bool is_homogeneous() const { return sup_.size() <= 1; }
    // grade of a nonzero homogeneous element
    Grade grade() const;
    FieldElem lead_coeff() const;

    GradedElement operator+(const GradedElement& o) const;
    GradedElement operator-(const GradedElement& o) const;
    GradedElement operator-() const;
    GradedElement operator*(const GradedElement& o) const;
    GradedElement scale(const FieldElem& c) const;
    GradedElement inv() const;  // homogeneous nonzero only
    GradedElement pow(std::int64_t e) const;
    bool operator==(const GradedElement& o) const;
    bool operator!=(const GradedElement& o) const { return !(*this == o); }

    std::string to_string() const;  // "3*<1/2> + 1*<2>"

  private:
    friend class GradedField;
    GDescPtr d_;
    std::map<GExp, FieldElem> sup_;
};

using GPoly = UPoly<GradedElement>;

GPoly gpoly_from_elems(std::vector<GradedElement> c);
std::string gpoly_to_string(const GPoly& p, const std::string& var = "X");

// the associated graded field of an iterated Laurent series field
GDescPtr associated_graded(const SeriesFieldPtr& e);
// leading-term image x~ in GE; requires a certain leading term
GradedElement residue_image(const GDescPtr& ge, const SeriesElement& x);

// unique lambda with gr(a_i) + i*lambda constant over nonzero coefficients;
// nullopt when no such lambda exists (a monomial c*X^k reports lambda = 0)
std::optional<Grade> is_homogenizable(const GPoly& f);

struct HomogFactors {
    GradedElement unit;
    std::vector<std::pair<GPoly, int>> parts;  // monic irreducible homogenizable, multiplicity
};

// Unique factorization of a lambda-homogenizable polynomial. The descended
// polynomial over F0 is factored and each factor lifted back; the product
// identity and the per-factor homogenizability are asserted before returning.
HomogFactors homog_factor(const GPoly& f);

// descend a monic lambda-homogenizable f with f(0) != 0 to F0[Y] via
// Y = X^e / u, u the grade-(e*lambda) monomial; inverse of the lift
FPoly descend_homogenizable(const GPoly& f, const Grade& lambda);
GPoly lift_descended(const GDescPtr& d, const FPoly& q, const Grade& lambda);

// re-key an element into a graded field whose lattice refines the source
// (same residue field); grades are preserved
GradedElement graded_transport(const GradedElement& x, const GDescPtr& target);
GPoly graded_transport(const GPoly& p, const GDescPtr& target);

}  // namespace grval
