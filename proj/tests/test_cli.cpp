#include "doctest.h"

#include "grval/parse.hpp"
#include "grval/report.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

using namespace grval;

namespace {

const std::string kGoldenDir = std::string(GRVAL_TESTS_DIR) + "/golden/";

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing golden file ", path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void check_golden(const std::string& name, const std::vector<std::string>& args, int want_exit) {
    RunResult first = run_command(args);
    RunResult second = run_command(args);
    CHECK(first.exit_code == want_exit);
    CHECK(first.output == second.output);  // byte-identical across runs
    std::string path = kGoldenDir + name + ".golden";
    if (std::getenv("GRVAL_REGEN_GOLDEN")) {
        std::ofstream out(path);
        out << first.output;
        return;
    }
    CHECK_MESSAGE(first.output == slurp(path), "golden mismatch for ", name);
}

}  // namespace

TEST_CASE("field spec parsing") {
    CHECK(parse_residue_field("QQ")->kind() == Field::Kind::Rationals);
    CHECK(parse_residue_field("GF(5)")->cardinality() == 5);
    CHECK(parse_residue_field("GF(2^4)")->cardinality() == 16);
    CHECK(parse_residue_field("GF(9)")->cardinality() == 9);  // prime powers spelled out
    auto f4 = parse_residue_field("GF(2^2; m=X^2+X+1)");
    CHECK(f4->modulus() == std::vector<std::int64_t>{1, 1, 1});
    CHECK_THROWS_WITH_AS(parse_residue_field("GF(6)"), "6 is not a prime power", domain_error);
    CHECK_THROWS_AS(parse_residue_field("GF(2^2; m=X^2+1)"), domain_error);  // reducible

    auto e = parse_series_field("GF(3)((t1))((t2))");
    CHECK(e->rank() == 2);
    CHECK(e->var(0) == "t2");  // outermost variable carries the dominant coordinate
    CHECK(e->var(1) == "t1");
    CHECK_THROWS_AS(parse_series_field("GF(3)"), ParseError);
}

TEST_CASE("series expression parsing and printing round trip") {
    auto e = parse_series_field("GF(5)((t))");
    SeriesElement x = parse_series_elem("1 + 2*t + t^3 + O(t^24)", e);
    CHECK(x.precision().has_value());
    CHECK(x.terms().size() == 3);
    CHECK(parse_series_elem(x.to_string(), e) == x);

    auto er = parse_series_field("GF(3)((t))");
    SeriesElement y = parse_series_elem("t^(1/2) + 2*t", adjoin_ramified(er, 0, 2));
    CHECK(grade_cmp(*y.valuation(), Grade{Rat(1, 2)}) == 0);

    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::int64_t> expo(-3, 9), coef(1, 4);
    std::uniform_int_distribution<int> nt(1, 4);
    for (int i = 0; i < 100; ++i) {
        std::vector<std::pair<Grade, FieldElem>> terms;
        for (int k = 0; k < nt(rng); ++k)
            terms.emplace_back(Grade{Rat(expo(rng))}, e->residue()->from_int(coef(rng)));
        SeriesElement v = e->from_terms(terms);
        CHECK(parse_series_elem(v.to_string(), e) == v);
    }
}

TEST_CASE("polynomial parsing") {
    auto pp = parse_poly("X^2 - t*X + 3 over GF(5)((t))");
    CHECK(pp.poly.degree() == 2);
    CHECK(pp.poly.c[2] == pp.field->one());
    CHECK(pp.poly.c[0] == pp.field->from_residue(pp.field->residue()->from_int(3)));

    auto pg = parse_graded_poly("X^2 - 1*<1> over GF(3)((t))");
    CHECK(pg.poly.degree() == 2);
    auto lam = is_homogenizable(pg.poly);
    REQUIRE(lam.has_value());
    CHECK(grade_cmp(*lam, Grade{Rat(1, 2)}) == 0);
    // graded element round trip
    GradedElement ge = parse_graded_elem("3*<1/2> + 1*<2>", associated_graded(adjoin_ramified(pg.field, 0, 2)));
    CHECK(parse_graded_elem(ge.to_string(), ge.desc()) == ge);
}

TEST_CASE("exit codes") {
    CHECK(run_command({}).exit_code == 1);
    CHECK(run_command({"frobnicate"}).exit_code == 1);
    CHECK(run_command({"lambda-check"}).exit_code == 1);
    CHECK(run_command({"lambda-check", "X^2 - t over GF(6)((t))"}).exit_code == 2);
    CHECK(run_command({"residue", "(X-1)*(X-t) over GF(3)((t))"}).exit_code == 2);  // multi-slope
    CHECK(run_command({"hensel-root", "X^2 + 2*X + 1 over GF(3)((t))"}).exit_code == 2);
}

TEST_CASE("golden reports") {
    check_golden("newton_single", {"newton", "X^2 - t*X + t^2 over GF(5)((t))"}, 0);
    check_golden("newton_split", {"newton", "(X-1)*(X-t) over GF(3)((t))"}, 0);
    check_golden("lambda_check", {"lambda-check", "X^2 - t over GF(3)((t))"}, 0);
    check_golden("lambda_reject", {"lambda-check", "(X-1)*(X-t) over GF(3)((t))"}, 0);
    check_golden("residue", {"residue", "(X-1)*(X-(1+t)) over GF(3)((t))"}, 0);
    check_golden("hensel_factor", {"hensel-factor", "X^2 - (1+t) over GF(3)((t))", "--prec", "12"}, 0);
    check_golden("hensel_factor_quartic",
                 {"hensel-factor", "X^4 - t^2 over GF(5)((t))", "--prec", "12"}, 0);
    check_golden("hensel_root", {"hensel-root", "X^2 - (1+t) over GF(3)((t))", "--prec", "12"}, 0);
    check_golden("hensel_root_error", {"hensel-root", "X^2 + 2*X + 1 over GF(3)((t))"}, 2);
    check_golden("build_ext", {"build-ext", "X^2 - 1*<1> over GF(3)((t))", "--prec", "12"}, 0);
    check_golden("build_ext_inertial", {"build-ext", "X^2 - 2 over GF(5)((t))", "--prec", "12"}, 0);
    check_golden("graded_factor", {"graded-factor", "X^4 - 1*<2> over GF(5)((t))"}, 0);
    check_golden("kummer", {"kummer", "--field", "GF(5)((t))", "--a", "1*<1>", "--n", "4"}, 0);
    check_golden("kummer_inertial", {"kummer", "--field", "GF(5)((t))", "--a", "2", "--n", "4"}, 0);
    check_golden("hilbert90",
                 {"hilbert90", "--field", "GF(3)((t))", "--a", "1*<1>", "--n", "2", "--x", "-1"}, 0);

    std::string cyc = kGoldenDir + "cyclic_cfg.json";
    std::string quat = kGoldenDir + "quat_cfg.json";
    std::string nodec = kGoldenDir + "quat_nodec_cfg.json";
    check_golden("crossed_build", {"crossed", "build", "--config", cyc}, 0);
    check_golden("crossed_classify", {"crossed", "classify", "--config", cyc}, 0);
    check_golden("crossed_theta", {"crossed", "theta", "--config", cyc, "--grade", "1/4"}, 0);
    check_golden("crossed_theta_quat", {"crossed", "theta", "--config", quat, "--grade", "1/2,0"}, 0);
    check_golden("crossed_dec", {"crossed", "dec-search", "--config", quat}, 0);
    check_golden("crossed_dec_none", {"crossed", "dec-search", "--config", nodec}, 0);
    check_golden("crossed_subfield", {"crossed", "verify-subfield", "--config", cyc}, 0);
    check_golden("crossed_subfield_quat", {"crossed", "verify-subfield", "--config", quat}, 0);
    check_golden("crossed_classify_nodec", {"crossed", "classify", "--config", nodec}, 0);
}
