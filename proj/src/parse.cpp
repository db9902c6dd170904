#include "grval/parse.hpp"

#include <cctype>

namespace grval {

namespace {

struct Tok {
    enum Kind { Num, Ident, Sym, End } kind = End;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Tok& peek() const { return tok_; }
    Tok take() {
        Tok t = tok_;
        advance();
        return t;
    }
    bool at_end() const { return tok_.kind == Tok::End; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, tok_.line, tok_.col);
    }
    bool is_sym(const std::string& s) const { return tok_.kind == Tok::Sym && tok_.text == s; }
    bool is_ident(const std::string& s) const { return tok_.kind == Tok::Ident && tok_.text == s; }
    void expect_sym(const std::string& s) {
        if (!is_sym(s)) fail("expected '" + s + "'");
        advance();
    }

  private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) bump();
        tok_ = Tok{};
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= s_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            tok_.kind = Tok::Num;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                tok_.text += s_[pos_];
                bump();
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            tok_.kind = Tok::Ident;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                tok_.text += s_[pos_];
                bump();
            }
            return;
        }
        tok_.kind = Tok::Sym;
        tok_.text = std::string(1, c);
        bump();
    }
    void bump() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string s_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Tok tok_;
};

Int parse_int_tok(Lexer& lx) {
    bool neg = false;
    if (lx.is_sym("-")) {
        neg = true;
        lx.take();
    }
    if (lx.peek().kind != Tok::Num) lx.fail("expected an integer");
    Int v(lx.take().text);
    return neg ? Int(-v) : v;
}

Rat parse_rational_tok(Lexer& lx) {
    Int num = parse_int_tok(lx);
    if (lx.is_sym("/")) {
        lx.take();
        Int den = parse_int_tok(lx);
        if (den == 0) lx.fail("zero denominator");
        return Rat(num, den);
    }
    return Rat(num);
}

// exponent: n | (p/q) | -n
Rat parse_exponent(Lexer& lx) {
    if (lx.is_sym("(")) {
        lx.take();
        Rat r = parse_rational_tok(lx);
        lx.expect_sym(")");
        return r;
    }
    return Rat(parse_int_tok(lx));
}

FieldPtr parse_residue_field_lex(Lexer& lx) {
    if (lx.is_ident("QQ")) {
        lx.take();
        return Field::rationals();
    }
    if (!lx.is_ident("GF")) lx.fail("expected a field (QQ or GF(...))");
    lx.take();
    lx.expect_sym("(");
    Int p = parse_int_tok(lx);
    Int k = 1;
    if (lx.is_sym("^")) {
        lx.take();
        k = parse_int_tok(lx);
    }
    std::vector<std::int64_t> modulus;
    if (lx.is_sym(";")) {
        lx.take();
        if (!lx.is_ident("m")) lx.fail("expected 'm=' after ';'");
        lx.take();
        lx.expect_sym("=");
        // polynomial in X with integer coefficients
        modulus.assign(static_cast<std::size_t>(k) + 1, 0);
        bool first = true;
        while (true) {
            std::int64_t sign = 1;
            if (lx.is_sym("+")) {
                lx.take();
            } else if (lx.is_sym("-")) {
                sign = -1;
                lx.take();
            } else if (!first) {
                break;
            }
            first = false;
            std::int64_t coeff = 1;
            std::int64_t expo = 0;
            bool have_coeff = false;
            if (lx.peek().kind == Tok::Num) {
                coeff = static_cast<std::int64_t>(Int(lx.take().text));
                have_coeff = true;
                if (lx.is_sym("*")) lx.take();
            }
            if (lx.is_ident("X")) {
                lx.take();
                expo = 1;
                if (lx.is_sym("^")) {
                    lx.take();
                    expo = static_cast<std::int64_t>(parse_int_tok(lx));
                }
            } else if (!have_coeff) {
                lx.fail("expected a modulus term");
            }
            if (expo > k) lx.fail("modulus degree exceeds the extension degree");
            modulus[static_cast<std::size_t>(expo)] += sign * coeff;
        }
    }
    lx.expect_sym(")");
    std::int64_t pi = static_cast<std::int64_t>(p);
    // "GF(q)" with q a prime power is accepted; "GF(6)" is rejected
    if (k == 1 && !modulus.empty()) lx.fail("modulus given for a prime field");
    if (k == 1) {
        // allow GF(q) with q = p^k written in full
        std::int64_t q = pi;
        for (std::int64_t base = 2; base * base <= q; ++base) {
            if (q % base != 0) continue;
            std::int64_t kk = 0, w = q;
            while (w % base == 0) {
                w /= base;
                ++kk;
            }
            if (w == 1) {
                if (kk == 1) return Field::prime(base);
                return Field::extension_canonical(base, static_cast<int>(kk));
            }
            throw domain_error(std::to_string(q) + " is not a prime power");
        }
        return Field::prime(pi);
    }
    if (!modulus.empty()) return Field::extension(pi, modulus);
    return Field::extension_canonical(pi, static_cast<int>(k));
}

SeriesFieldPtr parse_series_field_lex(Lexer& lx) {
    FieldPtr res = parse_residue_field_lex(lx);
    std::vector<std::string> vars;
    while (lx.is_sym("(")) {
        lx.take();
        lx.expect_sym("(");
        if (lx.peek().kind != Tok::Ident) lx.fail("expected a variable name");
        vars.push_back(lx.take().text);
        lx.expect_sym(")");
        lx.expect_sym(")");
    }
    if (vars.empty()) lx.fail("expected at least one Laurent variable ((t))");
    return SeriesField::make(res, std::move(vars));
}

// series/polynomial expressions over a fixed series field; X is the
// polynomial indeterminate, variables are the field's Laurent variables
class ExprParser {
  public:
    ExprParser(Lexer& lx, SeriesFieldPtr fld) : lx_(lx), fld_(std::move(fld)) {}

    // sum of terms, plus optional + O(...) markers
    SPoly parse() {
        SPoly acc = parse_term_signed();
        while (lx_.is_sym("+") || lx_.is_sym("-")) {
            bool neg = lx_.is_sym("-");
            lx_.take();
            if (lx_.is_ident("O")) {
                applyO();
                acc = truncate_poly(acc);
                continue;
            }
            SPoly t = parse_term();
            acc = neg ? upoly_sub(acc, t) : upoly_add(acc, t);
        }
        if (box_) acc = truncate_poly(acc);
        return acc;
    }

  private:
    SPoly parse_term_signed() {
        bool neg = false;
        while (lx_.is_sym("+") || lx_.is_sym("-")) {
            if (lx_.is_sym("-")) neg = !neg;
            lx_.take();
        }
        SPoly t = parse_term();
        return neg ? upoly_neg(t) : t;
    }

    SPoly parse_term() {
        SPoly acc = parse_factor();
        while (lx_.is_sym("*")) {
            lx_.take();
            acc = upoly_mul(acc, parse_factor());
        }
        return acc;
    }

    SPoly parse_factor() {
        SPoly base = parse_base();
        if (lx_.is_sym("^")) {
            lx_.take();
            Rat e = parse_exponent(lx_);
            if (base.degree() == 0 && base.c.size() == 1) {
                // series power, rational exponents allowed on single monomials
                const SeriesElement& x = base.c[0];
                if (!is_integer(e)) {
                    if (x.terms().size() != 1) lx_.fail("rational exponent on a non-monomial");
                    const auto& [g, c] = *x.terms().begin();
                    if (!c.is_one()) lx_.fail("rational exponent on a non-monic monomial");
                    return const_poly(fld_->monomial(grade_scale(g, e), c));
                }
                std::int64_t ei = static_cast<std::int64_t>(rat_num(e));
                return const_poly(x.pow(ei));
            }
            if (!is_integer(e) || rat_num(e) < 0) lx_.fail("polynomial exponent must be a nonnegative integer");
            std::int64_t ei = static_cast<std::int64_t>(rat_num(e));
            SPoly acc = const_poly(fld_->one());
            for (std::int64_t i = 0; i < ei; ++i) acc = upoly_mul(acc, base);
            return acc;
        }
        return base;
    }

    SPoly parse_base() {
        if (lx_.is_sym("(")) {
            lx_.take();
            SPoly inner = parse();
            lx_.expect_sym(")");
            return inner;
        }
        if (lx_.peek().kind == Tok::Num) {
            Int n(lx_.take().text);
            if (lx_.is_sym("/")) {
                lx_.take();
                Int d = parse_int_tok(lx_);
                return const_poly(fld_->from_residue(fld_->residue()->from_rat(Rat(n, d))));
            }
            return const_poly(fld_->from_residue(fld_->residue()->from_int(n)));
        }
        if (lx_.peek().kind == Tok::Ident) {
            std::string name = lx_.peek().text;
            if (name == "X") {
                lx_.take();
                SPoly x;
                x.c = {fld_->zero(), fld_->one()};
                return x;
            }
            if (name == "g" && fld_->residue()->kind() == Field::Kind::Extension) {
                lx_.take();
                return const_poly(fld_->from_residue(fld_->residue()->generator()));
            }
            for (int i = 0; i < fld_->rank(); ++i)
                if (fld_->var(i) == name) {
                    lx_.take();
                    Grade g = grade_zero(fld_->rank());
                    g[static_cast<std::size_t>(i)] = 1;
                    return const_poly(fld_->monomial(g, fld_->residue()->one()));
                }
            lx_.fail("unknown identifier '" + name + "'");
        }
        lx_.fail("expected a term");
    }

    void applyO() {
        lx_.take();  // O
        lx_.expect_sym("(");
        Grade box(static_cast<std::size_t>(fld_->rank()), Rat(0));
        std::vector<bool> seen(static_cast<std::size_t>(fld_->rank()), false);
        while (true) {
            if (lx_.peek().kind != Tok::Ident) lx_.fail("expected a variable inside O(...)");
            int coord = fld_->coord_of(lx_.take().text);
            Rat e(1);
            if (lx_.is_sym("^")) {
                lx_.take();
                e = parse_exponent(lx_);
            }
            box[static_cast<std::size_t>(coord)] = e;
            seen[static_cast<std::size_t>(coord)] = true;
            if (lx_.is_sym(",")) {
                lx_.take();
                continue;
            }
            break;
        }
        lx_.expect_sym(")");
        for (std::size_t i = 0; i < seen.size(); ++i)
            if (!seen[i]) lx_.fail("O(...) must bound every variable");
        box_ = box;
    }

    SPoly truncate_poly(SPoly p) const {
        if (!box_) return p;
        for (auto& c : p.c) c = c.truncated(*box_);
        while (!p.c.empty() && p.c.back().is_zero() && p.c.back().exact()) p.c.pop_back();
        return p;
    }

    SPoly const_poly(SeriesElement x) const {
        SPoly p;
        p.c = {std::move(x)};
        p.normalize();
        return p;
    }

    Lexer& lx_;
    SeriesFieldPtr fld_;
    std::optional<Grade> box_;
};

// graded elements: sums of  c * <g1, g2, ...>  with c an integer, rational,
// or g-power residue coefficient
class GradedExprParser {
  public:
    GradedExprParser(Lexer& lx, GDescPtr d) : lx_(lx), d_(std::move(d)) {}

    GPoly parse() {
        GPoly acc = parse_term_signed();
        while (lx_.is_sym("+") || lx_.is_sym("-")) {
            bool neg = lx_.is_sym("-");
            lx_.take();
            GPoly t = parse_term();
            acc = neg ? upoly_sub(acc, t) : upoly_add(acc, t);
        }
        return acc;
    }

  private:
    GPoly parse_term_signed() {
        bool neg = false;
        while (lx_.is_sym("+") || lx_.is_sym("-")) {
            if (lx_.is_sym("-")) neg = !neg;
            lx_.take();
        }
        GPoly t = parse_term();
        return neg ? upoly_neg(t) : t;
    }

    GPoly parse_term() {
        GPoly acc = parse_factor();
        while (lx_.is_sym("*")) {
            lx_.take();
            acc = upoly_mul(acc, parse_factor());
        }
        return acc;
    }

    GPoly parse_factor() {
        GPoly base = parse_base();
        if (lx_.is_sym("^")) {
            lx_.take();
            Rat e = parse_exponent(lx_);
            if (!is_integer(e)) lx_.fail("graded exponents must be integers");
            std::int64_t ei = static_cast<std::int64_t>(rat_num(e));
            if (base.degree() == 0 && base.c.size() == 1) return const_poly(base.c[0].pow(ei));
            if (ei < 0) lx_.fail("polynomial exponent must be nonnegative");
            GPoly acc = const_poly(d_->one());
            for (std::int64_t i = 0; i < ei; ++i) acc = upoly_mul(acc, base);
            return acc;
        }
        return base;
    }

    GPoly parse_base() {
        if (lx_.is_sym("(")) {
            lx_.take();
            GPoly inner = parse();
            lx_.expect_sym(")");
            return inner;
        }
        if (lx_.is_sym("<")) return const_poly(parse_monomial(d_->f0()->one()));
        if (lx_.peek().kind == Tok::Num) {
            Int n(lx_.take().text);
            FieldElem c;
            if (lx_.is_sym("/")) {
                lx_.take();
                Int dd = parse_int_tok(lx_);
                c = d_->f0()->from_rat(Rat(n, dd));
            } else {
                c = d_->f0()->from_int(n);
            }
            return const_poly(d_->constant(c));
        }
        if (lx_.is_ident("X")) {
            lx_.take();
            GPoly x;
            x.c = {d_->zero(), d_->one()};
            return x;
        }
        if (lx_.is_ident("g") && d_->f0()->kind() == Field::Kind::Extension) {
            lx_.take();
            return const_poly(d_->constant(d_->f0()->generator()));
        }
        lx_.fail("expected a graded term");
    }

    GradedElement parse_monomial(const FieldElem& coeff) {
        lx_.expect_sym("<");
        Grade g;
        while (true) {
            bool neg = false;
            if (lx_.is_sym("-")) {
                neg = true;
                lx_.take();
            }
            Rat r = parse_rational_tok(lx_);
            g.push_back(neg ? Rat(-r) : r);
            if (lx_.is_sym(",")) {
                lx_.take();
                continue;
            }
            break;
        }
        lx_.expect_sym(">");
        if (static_cast<int>(g.size()) != d_->rank()) lx_.fail("grade rank mismatch");
        return d_->monomial(g, coeff);
    }

    GPoly const_poly(GradedElement x) const {
        GPoly p;
        p.c = {std::move(x)};
        p.normalize();
        return p;
    }

    Lexer& lx_;
    GDescPtr d_;
};

std::string split_over(const std::string& text, std::string& field_part) {
    auto pos = text.rfind(" over ");
    if (pos == std::string::npos) throw ParseError("expected '... over <field>'", 1, 1);
    field_part = text.substr(pos + 6);
    return text.substr(0, pos);
}

}  // namespace

FieldPtr parse_residue_field(const std::string& text) {
    Lexer lx(text);
    FieldPtr f = parse_residue_field_lex(lx);
    if (!lx.at_end()) lx.fail("unexpected trailing input");
    return f;
}

SeriesFieldPtr parse_series_field(const std::string& text) {
    Lexer lx(text);
    SeriesFieldPtr f = parse_series_field_lex(lx);
    if (!lx.at_end()) lx.fail("unexpected trailing input");
    return f;
}

SeriesElement parse_series_elem(const std::string& text, const SeriesFieldPtr& field) {
    Lexer lx(text);
    ExprParser p(lx, field);
    SPoly poly = p.parse();
    if (!lx.at_end()) lx.fail("unexpected trailing input");
    if (poly.degree() > 0) throw ParseError("expected a series, found a polynomial in X", 1, 1);
    return poly.is_zero() ? field->zero() : poly.c[0];
}

ParsedPoly parse_poly(const std::string& text) {
    std::string field_part;
    std::string poly_part = split_over(text, field_part);
    ParsedPoly out;
    out.field = parse_series_field(field_part);
    Lexer lx(poly_part);
    ExprParser p(lx, out.field);
    out.poly = p.parse();
    if (!lx.at_end()) lx.fail("unexpected trailing input");
    return out;
}

ParsedGradedPoly parse_graded_poly(const std::string& text) {
    std::string field_part;
    std::string poly_part = split_over(text, field_part);
    ParsedGradedPoly out;
    out.field = parse_series_field(field_part);
    out.desc = associated_graded(out.field);
    Lexer lx(poly_part);
    GradedExprParser p(lx, out.desc);
    out.poly = p.parse();
    if (!lx.at_end()) lx.fail("unexpected trailing input");
    return out;
}

GradedElement parse_graded_elem(const std::string& text, const GDescPtr& desc) {
    Lexer lx(text);
    GradedExprParser p(lx, desc);
    GPoly poly = p.parse();
    if (!lx.at_end()) lx.fail("unexpected trailing input");
    if (poly.degree() > 0) throw ParseError("expected a graded element, found a polynomial", 1, 1);
    return poly.is_zero() ? desc->zero() : poly.c[0];
}

std::string print_graded_elem(const GradedElement& x) { return x.to_string(); }

}  // namespace grval
