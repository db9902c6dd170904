// Abelian crossed products presented as semiramified graded division
// algebras: B = (+) N0 z_1^{w_1}...z_m^{w_m} over the central graded field
// F = E0[y_1^{+-1},...,y_m^{+-1}], with z_i c z_i^{-1} = sigma_i(c),
// z_i z_j = u_{ij} z_j z_i and z_i^{r_i} = b_i y_i.
#pragma once

#include "grval/fields.hpp"
#include "grval/value_groups.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace grval {

// Residue datum N0/E0 with abelian Galois group: either nested finite fields
// or a multiquadratic tower Q(sqrt(d_1),...,sqrt(d_k)) over Q.
class NTower;
using NTowerPtr = std::shared_ptr<const NTower>;

// element of N0
struct NElem {
    FieldElem fe;                   // finite backend
    std::map<std::uint32_t, Rat> mq;  // multiquad: basis mask -> rational
    bool finite = true;
};

// automorphism of N0 over E0
struct NAut {
    int frob = 0;             // finite: x -> x^(p^frob), absolute exponent
    std::uint32_t flips = 0;  // multiquad: sign flips on sqrt generators
};

class NTower : public std::enable_shared_from_this<NTower> {
  public:
    // N0 = GF(p^ndeg) over E0 = GF(p^edeg), edeg | ndeg
    static NTowerPtr finite(std::int64_t p, int ndeg, int edeg);
    // Q(sqrt(d_1), ..., sqrt(d_k)) over Q; the d_i must be multiplicatively
    // independent modulo squares (checked)
    static NTowerPtr multiquad(std::vector<std::int64_t> d);

    bool is_finite() const { return kind_ == Kind::Finite; }
    Int n_over_e() const;  // [N0 : E0]
    const FieldPtr& n0() const { return n0_; }
    int e0_degree() const { return edeg_; }
    const std::vector<std::int64_t>& dlist() const { return d_; }

    NElem zero() const;
    NElem one() const;
    NElem from_int(std::int64_t n) const;
    NElem add(const NElem& a, const NElem& b) const;
    NElem sub(const NElem& a, const NElem& b) const;
    NElem mul(const NElem& a, const NElem& b) const;
    NElem neg(const NElem& a) const;
    NElem inv(const NElem& a) const;
    NElem pow(const NElem& a, Int e) const;
    bool eq(const NElem& a, const NElem& b) const;
    bool is_zero(const NElem& a) const;
    bool is_one(const NElem& a) const;

    NAut identity_aut() const;
    NAut compose(const NAut& a, const NAut& b) const;
    NAut inverse(const NAut& a) const;
    NAut pow_aut(const NAut& a, std::int64_t e) const;
    bool aut_eq(const NAut& a, const NAut& b) const;
    Int aut_order(const NAut& a) const;
    NElem apply(const NAut& s, const NElem& x) const;

    bool in_e0(const NElem& x) const;  // fixed by the full Galois group

    // GF(p)- resp. Q-basis of the fixed field E0 inside N0
    std::vector<NElem> e0_span_basis() const;
    // prime-field (resp. Q-) coordinates of x in the canonical N0 basis
    std::vector<Rat> coords(const NElem& x) const;
    int coord_dim() const;
    NElem from_coords(const std::vector<Rat>& v) const;

    // all automorphisms of N0 over E0
    std::vector<NAut> galois_group() const;

    std::string print(const NElem& x) const;
    NElem parse(const std::string& s) const;
    std::string to_string() const;

  private:
    enum class Kind { Finite, MultiQuad } kind_ = Kind::Finite;
    FieldPtr n0_;
    int edeg_ = 1;
    std::vector<std::int64_t> d_;
};

struct CrossedProductData {
    NTowerPtr tower;
    std::vector<std::int64_t> r;        // invariant factors of G, orders of the sigma_i
    std::vector<NAut> sigma;            // base of G
    std::vector<std::vector<NElem>> u;  // m x m, u[i][i] = 1, u[j][i] = u[i][j]^{-1}
    std::vector<NElem> b;
    std::vector<Grade> gamma;           // grade of z_i; empty = default e_i / r_i
};

using Wexp = std::vector<std::int64_t>;  // exponents of z_1..z_m

struct AlgebraElement {
    std::map<Wexp, NElem> terms;
};

struct ClassifyReport {
    bool semiramified = false;
    bool inertially_split = false;
    bool nicely_semiramified = false;
    Int residue_dim;     // [B0 : F0]
    Int lattice_index;   // |Gamma_B : Gamma_F|
    Int dim_over_f;      // [B : F]
    bool fundamental_equality = false;
    std::vector<Int> gamma_quotient;  // invariant factors of Gamma_B/Gamma_F
    std::optional<std::vector<std::pair<Wexp, std::string>>> ramified_subfield;  // witness generators
};

struct DecResult {
    bool decomposable = false;
    std::vector<NElem> witness;  // a_1..a_m when found
    bool witness_verified = false;
    Int searched = 0;
};

struct SubfieldReport {
    bool commutes = false;
    Int dimension;           // [S : F]
    Int residue_dim;         // [S0 : E0]
    Int lattice_index;       // |Gamma_S : Gamma_F|
    bool fundamental_equality = false;
    bool totally_ramified = false;
    bool inertial = false;
    bool maximal = false;
    std::vector<Int> generator_orders;       // least n with g^n in the center
    std::optional<std::vector<Int>> kummer_group;  // invariant factors when recognized
};

class CrossedProduct {
  public:
    // validates the data: group structure, U-table symmetries, associativity
    // on basis triples, and centrality of the y_i = b_i^{-1} z_i^{r_i}
    static std::shared_ptr<const CrossedProduct> build(CrossedProductData data);

    int m() const { return m_; }
    int rank() const { return m_; }
    const CrossedProductData& data() const { return data_; }
    const NTowerPtr& tower() const { return data_.tower; }

    Grade grade_of(const Wexp& w) const;
    Lattice gamma_b() const;
    Lattice gamma_f() const;

    AlgebraElement zero() const;
    AlgebraElement one() const;
    AlgebraElement coeff(const NElem& c) const;
    AlgebraElement z(int i) const;
    AlgebraElement monomial(const NElem& c, const Wexp& w) const;
    AlgebraElement y(int i) const;  // central b_i^{-1} z_i^{r_i}

    AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) const;
    AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) const;
    AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const;
    // inverse of a single-term element
    AlgebraElement mono_inverse(const AlgebraElement& a) const;
    bool eq(const AlgebraElement& a, const AlgebraElement& b) const;
    bool is_central(const AlgebraElement& a) const;

    NAut sigma_pow(const Wexp& w) const;
    // theta on the class of a grade (must lie in Gamma_B); conjugation by a
    // grade-matching monomial, matched against the abstract group
    NAut theta_of_grade(const Grade& g) const;
    bool theta_is_isomorphism() const;

    ClassifyReport classify(const std::vector<NElem>& ramified_witness_coeffs = {}) const;
    DecResult dec_witness_search(const std::vector<NElem>& witness_set) const;
    SubfieldReport verify_subfield(const std::vector<AlgebraElement>& generators) const;

    std::string print(const AlgebraElement& a) const;

  private:
    CrossedProductData data_;
    int m_ = 0;
    // z^w z^x = reorder_coeff(w, x) * z^(w+x)
    NElem reorder_coeff(const Wexp& w, const Wexp& x) const;

    friend struct CrossedTestHook;
};

}  // namespace grval
