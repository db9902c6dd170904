// Exact arithmetic primitives shared by all modules: arbitrary-precision
// integers/rationals, grade vectors in Q^m with lexicographic order, and a
// handful of small helpers.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace grval {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Domain-level failure (bad input, undefined operation). CLI maps these to
// exit code 2.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Violated internal invariant; never expected on valid inputs.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

Int int_gcd(Int a, Int b);
Int int_lcm(const Int& a, const Int& b);
Int int_pow(Int base, std::uint64_t e);

// floor division with remainder in [0, |b|)
Int floor_div(const Int& a, const Int& b);
Int floor_mod(const Int& a, const Int& b);

Rat rat_pow(const Rat& base, std::int64_t e);

// Exact square root test for rationals.
std::optional<Rat> rat_sqrt(const Rat& r);

std::string rat_to_string(const Rat& r);
// Parses "a", "-a/b". Throws domain_error on malformed input.
Rat rat_from_string(const std::string& s);

// ---------------------------------------------------------------------------
// Grades: vectors in Q^m ordered lexicographically, coordinate 0 dominant.

using Grade = std::vector<Rat>;

int grade_cmp(const Grade& a, const Grade& b);  // -1 / 0 / +1
bool grade_lt(const Grade& a, const Grade& b);

struct GradeLess {
    bool operator()(const Grade& a, const Grade& b) const { return grade_lt(a, b); }
};

Grade grade_add(const Grade& a, const Grade& b);
Grade grade_sub(const Grade& a, const Grade& b);
Grade grade_neg(const Grade& a);
Grade grade_scale(const Grade& a, const Rat& s);
Grade grade_zero(int rank);
bool grade_is_zero(const Grade& a);
// componentwise minimum
Grade grade_cwmin(const Grade& a, const Grade& b);
bool grade_cw_lt(const Grade& a, const Grade& b);  // a_i < b_i for all i

std::string grade_to_string(const Grade& g);

// ---------------------------------------------------------------------------
// Small dense exact linear algebra over Q (used for lattice coordinates).

using RatMat = std::vector<std::vector<Rat>>;

Rat mat_det(RatMat m);
// Solves x * M = v for a row vector x (M square nonsingular, rows = basis).
std::vector<Rat> solve_row(const RatMat& basis, const std::vector<Rat>& v);

}  // namespace grval
