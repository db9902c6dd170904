// Graded field extensions: twisted monomial embeddings, grade-preserving
// automorphisms, inertial/ramified/tame/wild classification, norms and the
// graded Hilbert 90 witness, root extensions F[x]/(g) in monomial
// presentation, Kummer recognition and degree-p Artin-Schreier extensions.
#pragma once

#include "grval/graded.hpp"
#include "grval/poly.hpp"

namespace grval {

// Grade-preserving ring embedding base -> top. The residue field embeds via
// `res`; the j-th base lattice basis monomial maps to twist[j] * s^{exp[j]}
// in top coordinates.
class GradedEmbedding {
  public:
    static GradedEmbedding identity(const GDescPtr& d);
    static GradedEmbedding make(GDescPtr base, GDescPtr top, FieldEmbedding res,
                                std::vector<std::pair<GExp, FieldElem>> sym);
    static GradedEmbedding compose(const GradedEmbedding& inner, const GradedEmbedding& outer);

    const GDescPtr& base() const { return base_; }
    const GDescPtr& top() const { return top_; }
    const FieldEmbedding& res() const { return res_; }
    const std::vector<std::pair<GExp, FieldElem>>& sym() const { return sym_; }

    GradedElement apply(const GradedElement& x) const;
    GPoly apply(const GPoly& p) const;
    // twist coefficient and top exponent for a base grade
    std::pair<GExp, FieldElem> image_of_grade(const Grade& g) const;
    bool in_image(const GradedElement& y) const;
    GradedElement section(const GradedElement& y) const;  // throws if not in image

  private:
    GDescPtr base_, top_;
    FieldEmbedding res_ = FieldEmbedding::identity(Field::rationals());
    std::vector<std::pair<GExp, FieldElem>> sym_;
};

// Grade-preserving field automorphism: acts on F0 by generator image and
// rescales the i-th basis monomial by symscale[i].
class GradedAut {
  public:
    static GradedAut identity(const GDescPtr& d);
    static GradedAut make(GDescPtr d, FieldElem res_gen_image, std::vector<FieldElem> symscale);

    const GDescPtr& desc() const { return d_; }
    FieldElem apply_res(const FieldElem& c) const;
    GradedElement apply(const GradedElement& x) const;
    GPoly apply(const GPoly& p) const;
    GradedAut compose(const GradedAut& then) const;  // this followed by `then`
    GradedAut power(Int k) const;
    bool is_identity() const;
    Int order(Int cap = 256) const;

  private:
    GDescPtr d_;
    FieldElem res_gen_image_;
    std::vector<FieldElem> symscale_;
};

struct ExtensionFlags {
    Int residue_degree;
    Int ram_index;
    Int total;
    bool inertial = false;
    bool totally_ramified = false;
    bool tame = false;
    bool purely_wild = false;
};

ExtensionFlags classify_extension(const GradedEmbedding& ext);

// N_{L/F}(x) = prod sigma^i(x), pulled back to base coordinates
GradedElement graded_norm(const GradedEmbedding& ext, const GradedAut& sigma, const GradedElement& x);

// homogeneous y with x * sigma(y) = y, for homogeneous x with N(x) = 1;
// found by per-grade exact linear algebra, least grade first
GradedElement hilbert90_witness(const GradedEmbedding& ext, const GradedAut& sigma,
                                const GradedElement& x);

// F[x]/(g) for g monic irreducible lambda-homogenizable, presented as a
// monomial graded field with canonical lattice basis. `x` is the designated
// root in top coordinates.
struct RootExtension {
    GradedEmbedding emb;
    GradedElement x;
    GPoly minpoly;    // over base
    FPoly descended;  // irreducible over F0base
    Grade lambda;
    Int ram = 1;          // order of lambda in Delta/Gamma_base
    Int residue_deg = 1;  // [K0 : F0]
};

RootExtension build_root_extension_graded(const GDescPtr& base, const GPoly& g);

// All roots of the defining polynomial inside the extension, when it splits
// there (Galois case); each comes with the automorphism sending x to it.
std::vector<std::pair<GradedElement, GradedAut>> root_conjugates(const RootExtension& re);

struct KummerResult {
    Int m;  // [F[x] : F], divides n
    RootExtension ext;
    GradedAut sigma;  // sigma(x) = zeta * x
    FieldElem zeta;   // primitive m-th root of unity in F0
};

// F0 must contain a primitive n-th root of unity and char(F) must not divide n
KummerResult kummer_recognize(const GDescPtr& f, const GradedElement& a, Int n);

struct ArtinSchreierResult {
    bool splits = false;
    std::optional<RootExtension> ext;  // degree-p inertial cyclic when not split
    std::optional<GradedAut> sigma;    // x -> x + 1
};

// X^p - X - a over F0 with char(F0) = p
ArtinSchreierResult artin_schreier_p(const GDescPtr& f, const FieldElem& a);

}  // namespace grval
