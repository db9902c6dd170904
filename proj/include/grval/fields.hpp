// Exact residue-level fields: GF(p), GF(p^k) presented by an irreducible
// modulus, and Q. Elements are canonical (reduced residue polynomials,
// reduced fractions) and immutable.
#pragma once

#include "grval/numeric.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace grval {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class FieldElem;

class Field : public std::enable_shared_from_this<Field> {
  public:
    enum class Kind { Prime, Extension, Rationals };

    static FieldPtr prime(std::int64_t p);
    // GF(p^k) with explicit monic irreducible modulus (coefficients low-to-high,
    // length k+1); irreducibility is checked at construction.
    static FieldPtr extension(std::int64_t p, std::vector<std::int64_t> modulus);
    // GF(p^k) with the canonical modulus: the lexicographically smallest monic
    // irreducible of degree k over GF(p).
    static FieldPtr extension_canonical(std::int64_t p, int k);
    static FieldPtr rationals();

    Kind kind() const { return kind_; }
    bool finite() const { return kind_ != Kind::Rationals; }
    std::int64_t characteristic() const { return kind_ == Kind::Rationals ? 0 : p_; }
    std::int64_t p() const { return p_; }
    int degree() const { return deg_; }          // k, with q = p^k (1 for prime/Q)
    Int cardinality() const;                     // finite fields only
    const std::vector<std::int64_t>& modulus() const { return mod_; }

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_int(const Int& n) const;
    FieldElem from_rat(const Rat& r) const;      // rationals only
    // residue class with the given coefficient vector (low-to-high, mod p)
    FieldElem from_coeffs(std::vector<std::int64_t> c) const;
    FieldElem generator() const;                 // class of X in GF(p^k); 1 for prime/Q

    // all elements, ordered by coefficient tuples (finite fields only)
    std::vector<FieldElem> elements() const;

    std::string to_string() const;               // "GF(5)", "GF(2^2; m=...)", "QQ"
    bool same_as(const Field& o) const;

  private:
    friend class FieldElem;
    Kind kind_ = Kind::Rationals;
    std::int64_t p_ = 0;
    int deg_ = 1;
    std::vector<std::int64_t> mod_;  // monic, length deg_+1 (Extension only)
};

class FieldElem {
  public:
    FieldElem() = default;

    const FieldPtr& field() const { return f_; }
    bool is_zero() const;
    bool is_one() const;

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem inv() const;
    FieldElem operator/(const FieldElem& o) const { return *this * o.inv(); }
    FieldElem pow(Int e) const;
    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }
    // deterministic total order within one field (for canonical printing)
    bool operator<(const FieldElem& o) const;

    const std::vector<std::int64_t>& coeffs() const { return c_; }
    const Rat& rational() const { return q_; }

    // image under x -> x^p (identity on prime fields; error on Q)
    FieldElem frobenius() const;

    std::string to_string() const;  // "3", "g^2+1", "-7/2"

  private:
    friend class Field;
    FieldPtr f_;
    std::vector<std::int64_t> c_;  // finite fields: length deg, entries in [0,p)
    Rat q_;                        // rationals
};

// orbit of a under x -> x^p, starting at a (length divides k)
std::vector<FieldElem> frobenius_orbit(const FieldElem& a);

// Embedding of one finite field presentation into another: fixed image of the
// source generator. Constructed by root search of the source modulus.
class FieldEmbedding {
  public:
    // identity embedding
    static FieldEmbedding identity(const FieldPtr& f);
    // src and dst finite with same p, deg(src) | deg(dst)
    static FieldEmbedding find(const FieldPtr& src, const FieldPtr& dst);
    // embedding with a prescribed generator image (verified against the
    // source modulus)
    static FieldEmbedding explicit_map(const FieldPtr& src, const FieldPtr& dst, FieldElem gen_image);

    FieldElem apply(const FieldElem& a) const;
    const FieldPtr& src() const { return src_; }
    const FieldPtr& dst() const { return dst_; }
    // true if b lies in the image subfield
    bool contains(const FieldElem& b) const;
    // preimage in src (error if not in image)
    FieldElem section(const FieldElem& b) const;

  private:
    FieldPtr src_, dst_;
    FieldElem gen_image_;
};

}  // namespace grval
