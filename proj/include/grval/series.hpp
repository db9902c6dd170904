// Iterated Laurent series fields k((t_1))...((t_m)) over an exact residue
// field, with valuation into (1/e_1)Z x ... x (1/e_m)Z ordered
// lexicographically. Grade coordinate 0 belongs to the outermost variable
// (highest weight).
//
// Truncation model: an element stores its known terms plus a precision box P;
// coefficients at grades gamma with gamma_i < P_i for all i are known exactly,
// grades outside the box are unknown. Every element also carries a
// componentwise lower bound `lo` valid for known and unknown terms; precision
// propagates through products as P_xy = cwmin(P_x + lo_y, P_y + lo_x).
#pragma once

#include "grval/fields.hpp"
#include "grval/upoly.hpp"
#include "grval/value_groups.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace grval {

class SeriesField;
using SeriesFieldPtr = std::shared_ptr<const SeriesField>;

class SeriesElement;

class SeriesField : public std::enable_shared_from_this<SeriesField> {
  public:
    // variables listed innermost-first, as written "k((t1))((t2))"
    static SeriesFieldPtr make(FieldPtr residue, std::vector<std::string> vars);

    const FieldPtr& residue() const { return residue_; }
    int rank() const { return rank_; }
    // per-coordinate ramification denominator (value lattice (1/e_i)Z)
    const std::vector<std::int64_t>& denominators() const { return denom_; }
    // variable name of coordinate i (coordinate 0 = outermost)
    const std::string& var(int coord) const { return names_[static_cast<std::size_t>(coord)]; }
    int coord_of(const std::string& var) const;

    Lattice value_lattice() const;
    bool grade_in_lattice(const Grade& g) const;

    Grade default_precision() const;  // box (24, ..., 24), absolute grade units

    SeriesElement zero() const;
    SeriesElement one() const;
    SeriesElement from_residue(const FieldElem& c) const;
    SeriesElement monomial(const Grade& g, const FieldElem& c) const;
    SeriesElement from_terms(std::vector<std::pair<Grade, FieldElem>> terms) const;

    std::string to_string() const;
    bool same_as(const SeriesField& o) const;

  private:
    friend SeriesFieldPtr adjoin_ramified(const SeriesFieldPtr&, int, std::int64_t);
    friend SeriesFieldPtr make_inertial(const SeriesFieldPtr&, const FieldPtr&);
    FieldPtr residue_;
    int rank_ = 1;
    std::vector<std::int64_t> denom_;
    std::vector<std::string> names_;
};

// Composite extensions of a series field. Elements stay immutable.
SeriesFieldPtr adjoin_ramified(const SeriesFieldPtr& e, int coord, std::int64_t ram);
SeriesFieldPtr make_inertial(const SeriesFieldPtr& e, const FieldPtr& bigger_residue);
// re-interpret an element in a finer/larger field (lattice refines, residue embeds)
SeriesElement transport(const SeriesElement& x, const SeriesFieldPtr& target);
// opposite direction: move into a coarser lattice over the same residue field;
// every known term must lie in the target lattice
SeriesElement restrict_lattice(const SeriesElement& x, const SeriesFieldPtr& target);
// termwise p-th root in characteristic p (exponents divide by p, coefficients
// take their unique p-th root)
SeriesElement char_p_root(const SeriesElement& x, const SeriesFieldPtr& target);

class SeriesElement {
  public:
    SeriesElement() = default;

    const SeriesFieldPtr& field() const { return fld_; }
    const std::map<Grade, FieldElem, GradeLess>& terms() const { return sup_; }
    const std::optional<Grade>& precision() const { return prec_; }
    const std::optional<Grade>& low_bound() const { return lo_; }
    bool exact() const { return !prec_.has_value(); }

    // known-part-zero; exact zero iff also exact()
    bool is_zero() const { return sup_.empty(); }

    // least support grade; nullopt for certified zero; domain_error when the
    // truncation cannot certify the leading term
    std::optional<Grade> valuation() const;
    FieldElem leading_coeff() const;
    // lex-least grade the unknown region can reach; nullopt when exact
    std::optional<Grade> min_unknown() const;
    // all terms, known and unknown, certainly have grade >= bound (lex)
    bool certainly_at_or_above(const Grade& bound) const;

    SeriesElement operator+(const SeriesElement& o) const;
    SeriesElement operator-(const SeriesElement& o) const;
    SeriesElement operator-() const;
    SeriesElement operator*(const SeriesElement& o) const;
    SeriesElement scale(const FieldElem& c) const;
    SeriesElement inv() const;  // truncates at the field default when exact
    SeriesElement inv_to(const Grade& workbox) const;
    SeriesElement pow(std::int64_t e) const;

    SeriesElement truncated(const Grade& box) const;

    bool operator==(const SeriesElement& o) const;  // termwise, incl. precision

    std::string to_string() const;

  private:
    friend class SeriesField;
    friend SeriesElement transport(const SeriesElement&, const SeriesFieldPtr&);
    friend SeriesElement restrict_lattice(const SeriesElement&, const SeriesFieldPtr&);
    friend SeriesElement char_p_root(const SeriesElement&, const SeriesFieldPtr&);
    SeriesFieldPtr fld_;
    std::map<Grade, FieldElem, GradeLess> sup_;
    std::optional<Grade> prec_;  // nullopt = exact
    std::optional<Grade> lo_;    // nullopt = no terms at all (exact zero)

    void drop_outside_box();
    void recompute_lo_from_support();
};

// true when x and y coincide on every grade below box (and below both
// precision cutoffs)
bool agree_to_precision(const SeriesElement& x, const SeriesElement& y, const Grade& box);

using SPoly = UPoly<SeriesElement>;

SPoly spoly_from_ints(const SeriesFieldPtr& f, const std::vector<std::int64_t>& c);
std::string spoly_to_string(const SPoly& p, const std::string& var = "X");
SPoly spoly_transport(const SPoly& p, const SeriesFieldPtr& target);

// [K : E] data for composites of make_inertial/adjoin_ramified
struct ExtensionDegrees {
    Int residue_degree;
    Int ramification_index;
    Int total;  // product
};
ExtensionDegrees extension_degrees(const SeriesFieldPtr& base, const SeriesFieldPtr& top);

}  // namespace grval
