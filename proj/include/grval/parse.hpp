// Recursive-descent parsers for the CLI input language: field specs,
// truncated series, polynomials in X over a series field, and graded
// polynomials with <grade> monomials. Errors carry line/column positions.
#pragma once

#include "grval/graded.hpp"
#include "grval/series.hpp"

#include <string>

namespace grval {

struct ParseError : domain_error {
    int line;
    int col;
    ParseError(const std::string& what, int l, int c)
        : domain_error(what + " (line " + std::to_string(l) + ", col " + std::to_string(c) + ")"),
          line(l),
          col(c) {}
};

// "QQ" | "GF(5)" | "GF(2^4)" | "GF(2^4; m=X^4+X+1)"
FieldPtr parse_residue_field(const std::string& text);

// residue field followed by Laurent variables: "GF(3)((t1))((t2))"
SeriesFieldPtr parse_series_field(const std::string& text);

// "1 + 2*t + t^3 + O(t^24)" over a given field; exponents may be rational:
// t^(1/2) (the field must contain the grade)
SeriesElement parse_series_elem(const std::string& text, const SeriesFieldPtr& field);

// "X^2 - t*X + 1 over GF(3)((t))"
struct ParsedPoly {
    SPoly poly;
    SeriesFieldPtr field;
};
ParsedPoly parse_poly(const std::string& text);

// graded coefficients written as sums of c*<g1, g2, ...>:
// "X^2 - 1*<1> over GF(3)((t))" parses over the associated graded field
struct ParsedGradedPoly {
    GPoly poly;
    GDescPtr desc;
    SeriesFieldPtr field;
};
ParsedGradedPoly parse_graded_poly(const std::string& text);

// graded element over a given descriptor: "3*<1/2> + 1*<2>"
GradedElement parse_graded_elem(const std::string& text, const GDescPtr& desc);

std::string print_graded_elem(const GradedElement& x);

}  // namespace grval
