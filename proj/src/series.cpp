#include "grval/series.hpp"

#include <algorithm>
#include <sstream>

namespace grval {

namespace {

// componentwise min treating nullopt as +infinity
std::optional<Grade> opt_cwmin(const std::optional<Grade>& a, const std::optional<Grade>& b) {
    if (!a) return b;
    if (!b) return a;
    return grade_cwmin(*a, *b);
}

std::optional<Grade> opt_shift(const std::optional<Grade>& a, const std::optional<Grade>& by) {
    if (!a || !by) return std::nullopt;
    return grade_add(*a, *by);
}

}  // namespace

// --------------------------------------------------------------------------
// SeriesField

SeriesFieldPtr SeriesField::make(FieldPtr residue, std::vector<std::string> vars) {
    if (vars.empty()) throw domain_error("series field needs at least one variable");
    auto f = std::make_shared<SeriesField>();
    f->residue_ = std::move(residue);
    f->rank_ = static_cast<int>(vars.size());
    f->denom_.assign(vars.size(), 1);
    // innermost-first input; coordinate 0 is the outermost variable
    f->names_.assign(vars.rbegin(), vars.rend());
    for (std::size_t i = 0; i < f->names_.size(); ++i)
        for (std::size_t j = i + 1; j < f->names_.size(); ++j)
            if (f->names_[i] == f->names_[j]) throw domain_error("duplicate series variable name");
    return f;
}

int SeriesField::coord_of(const std::string& var) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == var) return static_cast<int>(i);
    throw domain_error("unknown series variable '" + var + "'");
}

Lattice SeriesField::value_lattice() const {
    std::vector<HullVector> rows;
    for (int i = 0; i < rank_; ++i) {
        HullVector r(static_cast<std::size_t>(rank_), Rat(0));
        r[static_cast<std::size_t>(i)] = Rat(1, denom_[static_cast<std::size_t>(i)]);
        rows.push_back(std::move(r));
    }
    return Lattice::from_basis(std::move(rows));
}

bool SeriesField::grade_in_lattice(const Grade& g) const {
    if (static_cast<int>(g.size()) != rank_) return false;
    for (int i = 0; i < rank_; ++i)
        if (!is_integer(g[static_cast<std::size_t>(i)] * Rat(denom_[static_cast<std::size_t>(i)])))
            return false;
    return true;
}

Grade SeriesField::default_precision() const { return Grade(static_cast<std::size_t>(rank_), Rat(24)); }

SeriesElement SeriesField::zero() const {
    SeriesElement x;
    x.fld_ = shared_from_this();
    return x;
}

SeriesElement SeriesField::one() const { return from_residue(residue_->one()); }

SeriesElement SeriesField::from_residue(const FieldElem& c) const {
    return monomial(grade_zero(rank_), c);
}

SeriesElement SeriesField::monomial(const Grade& g, const FieldElem& c) const {
    if (!c.field()->same_as(*residue_)) throw domain_error("coefficient from wrong residue field");
    SeriesElement x;
    x.fld_ = shared_from_this();
    if (c.is_zero()) return x;
    if (!grade_in_lattice(g))
        throw domain_error("grade " + grade_to_string(g) + " is not in the value lattice of " + to_string());
    x.sup_.emplace(g, c);
    x.lo_ = g;
    return x;
}

SeriesElement SeriesField::from_terms(std::vector<std::pair<Grade, FieldElem>> terms) const {
    SeriesElement x = zero();
    for (auto& [g, c] : terms) {
        if (c.is_zero()) continue;
        if (!grade_in_lattice(g))
            throw domain_error("grade " + grade_to_string(g) + " is not in the value lattice");
        auto it = x.sup_.find(g);
        if (it == x.sup_.end()) {
            x.sup_.emplace(g, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) x.sup_.erase(it);
        }
    }
    x.recompute_lo_from_support();
    return x;
}

std::string SeriesField::to_string() const {
    std::string s = residue_->to_string();
    for (int i = rank_ - 1; i >= 0; --i) {
        s += "((" + names_[static_cast<std::size_t>(i)];
        if (denom_[static_cast<std::size_t>(i)] != 1)
            s += "^(1/" + std::to_string(denom_[static_cast<std::size_t>(i)]) + ")";
        s += "))";
    }
    return s;
}

bool SeriesField::same_as(const SeriesField& o) const {
    return rank_ == o.rank_ && denom_ == o.denom_ && names_ == o.names_ &&
           residue_->same_as(*o.residue_);
}

SeriesFieldPtr adjoin_ramified(const SeriesFieldPtr& e, int coord, std::int64_t ram) {
    if (ram < 1) throw domain_error("ramification index must be >= 1");
    if (coord < 0 || coord >= e->rank()) throw domain_error("bad variable coordinate");
    if (ram == 1) return e;
    auto f = std::make_shared<SeriesField>(*e);
    f->denom_[static_cast<std::size_t>(coord)] *= ram;
    return f;
}

SeriesFieldPtr make_inertial(const SeriesFieldPtr& e, const FieldPtr& bigger_residue) {
    if (bigger_residue->same_as(*e->residue())) return e;
    // validates that an embedding exists
    FieldEmbedding::find(e->residue(), bigger_residue);
    auto f = std::make_shared<SeriesField>(*e);
    f->residue_ = bigger_residue;
    return f;
}

SeriesElement transport(const SeriesElement& x, const SeriesFieldPtr& target) {
    if (x.field()->same_as(*target)) return x;
    if (x.field()->rank() != target->rank()) throw domain_error("transport: rank mismatch");
    for (int i = 0; i < target->rank(); ++i) {
        if (target->denominators()[static_cast<std::size_t>(i)] %
                x.field()->denominators()[static_cast<std::size_t>(i)] !=
            0)
            throw domain_error("transport: target lattice does not refine source");
        if (target->var(i) != x.field()->var(i)) throw domain_error("transport: variable mismatch");
    }
    FieldEmbedding emb = FieldEmbedding::find(x.field()->residue(), target->residue());
    SeriesElement y;
    y.fld_ = target;
    for (const auto& [g, c] : x.terms()) y.sup_.emplace(g, emb.apply(c));
    y.prec_ = x.precision();
    y.lo_ = x.low_bound();
    return y;
}

SeriesElement restrict_lattice(const SeriesElement& x, const SeriesFieldPtr& target) {
    if (x.field()->same_as(*target)) return x;
    if (x.field()->rank() != target->rank()) throw domain_error("restrict: rank mismatch");
    if (!x.field()->residue()->same_as(*target->residue()))
        throw domain_error("restrict: residue fields differ");
    SeriesElement y;
    y.fld_ = target;
    for (const auto& [g, c] : x.terms()) {
        if (!target->grade_in_lattice(g))
            throw domain_error("restrict: support grade " + grade_to_string(g) +
                               " is outside the target lattice");
        y.sup_.emplace(g, c);
    }
    y.prec_ = x.precision();
    y.lo_ = x.low_bound();
    return y;
}

SeriesElement char_p_root(const SeriesElement& x, const SeriesFieldPtr& target) {
    std::int64_t p = x.field()->residue()->characteristic();
    if (p == 0) throw domain_error("char_p_root needs positive characteristic");
    Int q = x.field()->residue()->cardinality();
    SeriesElement y;
    y.fld_ = target;
    for (const auto& [g, c] : x.terms()) {
        Grade ng = grade_scale(g, Rat(1, p));
        if (!target->grade_in_lattice(ng))
            throw domain_error("char_p_root: grade " + grade_to_string(ng) +
                               " is outside the target lattice");
        y.sup_.emplace(std::move(ng), c.pow(q / p));
    }
    if (x.precision()) y.prec_ = grade_scale(*x.precision(), Rat(1, p));
    if (x.low_bound()) y.lo_ = grade_scale(*x.low_bound(), Rat(1, p));
    return y;
}

// --------------------------------------------------------------------------
// SeriesElement

void SeriesElement::drop_outside_box() {
    if (!prec_) return;
    for (auto it = sup_.begin(); it != sup_.end();) {
        bool inside = true;
        for (std::size_t i = 0; i < it->first.size(); ++i)
            if (it->first[i] >= (*prec_)[i]) {
                inside = false;
                break;
            }
        it = inside ? std::next(it) : sup_.erase(it);
    }
}

void SeriesElement::recompute_lo_from_support() {
    if (sup_.empty()) {
        if (!prec_) lo_ = std::nullopt;
        return;
    }
    Grade m = sup_.begin()->first;
    for (const auto& [g, c] : sup_) m = grade_cwmin(m, g);
    lo_ = lo_ ? grade_cwmin(*lo_, m) : m;
}

std::optional<Grade> SeriesElement::min_unknown() const {
    if (!prec_) return std::nullopt;
    // for each coordinate j, the least point of the unknown region with the
    // j-th cutoff active
    Grade base = lo_ ? *lo_ : *prec_;
    std::optional<Grade> best;
    for (std::size_t j = 0; j < base.size(); ++j) {
        Grade cand = base;
        cand[j] = std::max(cand[j], (*prec_)[j]);
        if (!best || grade_lt(cand, *best)) best = cand;
    }
    return best;
}

bool SeriesElement::certainly_at_or_above(const Grade& bound) const {
    if (!sup_.empty() && grade_lt(sup_.begin()->first, bound)) return false;
    auto mu = min_unknown();
    if (mu && grade_lt(*mu, bound)) return false;
    return true;
}

std::optional<Grade> SeriesElement::valuation() const {
    if (!fld_) throw domain_error("uninitialized series element");
    if (sup_.empty()) {
        if (!prec_) return std::nullopt;  // certified zero
        throw domain_error("valuation indeterminate: no known terms under truncation");
    }
    const Grade& v = sup_.begin()->first;
    auto mu = min_unknown();
    if (mu && !grade_lt(v, *mu))
        throw domain_error("valuation indeterminate: unknown terms may precede leading term");
    return v;
}

FieldElem SeriesElement::leading_coeff() const {
    auto v = valuation();
    if (!v) throw domain_error("leading coefficient of zero");
    return sup_.begin()->second;
}

SeriesElement SeriesElement::operator+(const SeriesElement& o) const {
    if (!fld_->same_as(*o.fld_)) throw domain_error("mixed-field series arithmetic");
    SeriesElement r;
    r.fld_ = fld_;
    r.sup_ = sup_;
    for (const auto& [g, c] : o.sup_) {
        auto it = r.sup_.find(g);
        if (it == r.sup_.end()) {
            r.sup_.emplace(g, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) r.sup_.erase(it);
        }
    }
    r.prec_ = opt_cwmin(prec_, o.prec_);
    r.lo_ = opt_cwmin(lo_, o.lo_);
    r.drop_outside_box();
    return r;
}

SeriesElement SeriesElement::operator-() const {
    SeriesElement r = *this;
    for (auto& [g, c] : r.sup_) c = -c;
    return r;
}

SeriesElement SeriesElement::operator-(const SeriesElement& o) const { return *this + (-o); }

SeriesElement SeriesElement::operator*(const SeriesElement& o) const {
    if (!fld_->same_as(*o.fld_)) throw domain_error("mixed-field series arithmetic");
    SeriesElement r;
    r.fld_ = fld_;
    // exact zero annihilates regardless of the other side's truncation
    if ((sup_.empty() && !prec_) || (o.sup_.empty() && !o.prec_)) return r;
    r.prec_ = opt_cwmin(opt_shift(prec_, o.lo_), opt_shift(o.prec_, lo_));
    if ((prec_ || o.prec_) && !r.prec_)
        throw internal_error("series mul: truncated operand without low bound");
    for (const auto& [g1, c1] : sup_)
        for (const auto& [g2, c2] : o.sup_) {
            FieldElem c = c1 * c2;
            if (c.is_zero()) continue;
            Grade g = grade_add(g1, g2);
            auto it = r.sup_.find(g);
            if (it == r.sup_.end()) {
                r.sup_.emplace(std::move(g), c);
            } else {
                it->second = it->second + c;
                if (it->second.is_zero()) r.sup_.erase(it);
            }
        }
    if (lo_ && o.lo_) r.lo_ = grade_add(*lo_, *o.lo_);
    r.drop_outside_box();
    return r;
}

SeriesElement SeriesElement::scale(const FieldElem& c) const {
    if (c.is_zero()) {
        SeriesElement z;
        z.fld_ = fld_;
        return z;  // exact zero: the unknown tail is annihilated too
    }
    SeriesElement r = *this;
    for (auto& [g, x] : r.sup_) x = x * c;
    for (auto it = r.sup_.begin(); it != r.sup_.end();)
        it = it->second.is_zero() ? r.sup_.erase(it) : std::next(it);
    return r;
}

SeriesElement SeriesElement::inv() const {
    return inv_to(prec_ ? *prec_ : fld_->default_precision());
}

SeriesElement SeriesElement::inv_to(const Grade& workbox) const {
    auto v = valuation();  // throws when indeterminate
    if (!v) throw domain_error("inversion of zero");
    FieldElem c0 = sup_.begin()->second;
    // u = c0^{-1} * t^{-v}; x*u = 1 + r with v(r) > 0
    SeriesElement u = fld_->monomial(grade_neg(*v), c0.inv());
    SeriesElement xn = *this * u;
    SeriesElement r = xn - fld_->one();
    if (r.sup_.empty() && !r.prec_) return u;  // x is exactly a monomial
    if (r.lo_) {
        for (const auto& comp : *r.lo_)
            if (comp < 0)
                throw domain_error(
                    "inversion outside the truncated model: tail support descends in a lower "
                    "coordinate");
    }
    SeriesElement acc = fld_->one();
    SeriesElement term = fld_->one();
    SeriesElement negr = -r;
    while (true) {
        term = (term * negr).truncated(workbox);
        if (term.sup_.empty()) {
            // tail terms stay outside the box componentwise from here on
            acc.prec_ = opt_cwmin(acc.prec_, term.prec_ ? term.prec_ : std::optional<Grade>(workbox));
            break;
        }
        acc = acc + term;
    }
    SeriesElement res = (acc * u).truncated(grade_sub(workbox, *v));
    return res;
}

SeriesElement SeriesElement::pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    SeriesElement r = fld_->one(), b = *this;
    std::uint64_t k = static_cast<std::uint64_t>(e);
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

SeriesElement SeriesElement::truncated(const Grade& box) const {
    SeriesElement r = *this;
    r.prec_ = opt_cwmin(prec_, std::optional<Grade>(box));
    if (!r.lo_) r.lo_ = *r.prec_;  // zero so far; unknown region starts at the box
    r.drop_outside_box();
    return r;
}

bool SeriesElement::operator==(const SeriesElement& o) const {
    if (!fld_->same_as(*o.fld_)) return false;
    if (prec_ != o.prec_) return false;
    if (sup_.size() != o.sup_.size()) return false;
    auto it = o.sup_.begin();
    for (const auto& [g, c] : sup_) {
        if (grade_cmp(g, it->first) != 0 || !(c == it->second)) return false;
        ++it;
    }
    return true;
}

std::string SeriesElement::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : sup_) {
        if (!first) os << " + ";
        first = false;
        std::string cs = c.to_string();
        bool paren = cs.find('+') != std::string::npos;
        if (c.is_one() && !grade_is_zero(g))
            ;  // drop the unit coefficient in front of a variable part
        else
            os << (paren ? "(" + cs + ")" : cs);
        bool coeff_dropped = c.is_one() && !grade_is_zero(g);
        bool first_var = true;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i] == 0) continue;
            if (!(coeff_dropped && first_var)) os << "*";
            first_var = false;
            os << fld_->var(static_cast<int>(i));
            if (g[i] != 1) {
                if (is_integer(g[i]))
                    os << "^" << rat_num(g[i]);
                else
                    os << "^(" << rat_to_string(g[i]) << ")";
            }
        }
    }
    if (first) os << "0";
    if (prec_) {
        os << " + O(";
        for (std::size_t i = 0; i < prec_->size(); ++i) {
            if (i) os << ", ";
            os << fld_->var(static_cast<int>(i)) << "^" << rat_to_string((*prec_)[i]);
        }
        os << ")";
    }
    return os.str();
}

bool agree_to_precision(const SeriesElement& x, const SeriesElement& y, const Grade& box) {
    if (!x.field()->same_as(*y.field())) return false;
    Grade b = box;
    if (x.precision()) b = grade_cwmin(b, *x.precision());
    if (y.precision()) b = grade_cwmin(b, *y.precision());
    SeriesElement d = x - y;
    for (const auto& [g, c] : d.terms()) {
        (void)c;
        if (grade_cw_lt(g, b)) return false;
    }
    return true;
}

SPoly spoly_from_ints(const SeriesFieldPtr& f, const std::vector<std::int64_t>& c) {
    std::vector<SeriesElement> v;
    for (auto x : c) v.push_back(f->from_residue(f->residue()->from_int(x)));
    return SPoly(std::move(v));
}

std::string spoly_to_string(const SPoly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string s;
    for (std::size_t i = p.c.size(); i-- > 0;) {
        if (p.c[i].is_zero() && p.c[i].exact()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + p.c[i].to_string() + ")";
        if (i >= 1) {
            s += "*" + var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

SPoly spoly_transport(const SPoly& p, const SeriesFieldPtr& target) {
    SPoly r;
    for (const auto& c : p.c) r.c.push_back(transport(c, target));
    r.normalize();
    return r;
}

ExtensionDegrees extension_degrees(const SeriesFieldPtr& base, const SeriesFieldPtr& top) {
    if (base->rank() != top->rank()) throw domain_error("extension_degrees: rank mismatch");
    ExtensionDegrees d;
    if (top->residue()->degree() % base->residue()->degree() != 0 ||
        top->residue()->p() != base->residue()->p())
        throw domain_error("extension_degrees: residues not nested");
    d.residue_degree = top->residue()->degree() / base->residue()->degree();
    d.ramification_index = 1;
    for (int i = 0; i < base->rank(); ++i) {
        auto eb = base->denominators()[static_cast<std::size_t>(i)];
        auto et = top->denominators()[static_cast<std::size_t>(i)];
        if (et % eb != 0) throw domain_error("extension_degrees: lattices not nested");
        d.ramification_index *= et / eb;
    }
    d.total = d.residue_degree * d.ramification_index;
    return d;
}

}  // namespace grval
