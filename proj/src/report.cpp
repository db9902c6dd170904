#include "grval/report.hpp"

#include "grval/crossed.hpp"
#include "grval/hensel.hpp"
#include "grval/parse.hpp"

#include "json.hpp"

#include <fstream>
#include <functional>

namespace grval {

namespace {

using nlohmann::json;

std::string grade_str(const Grade& g) {
    if (g.size() == 1) return rat_to_string(g[0]);
    return grade_to_string(g);
}

Grade box_of(const SeriesFieldPtr& fld, std::int64_t prec) {
    return Grade(static_cast<std::size_t>(fld->rank()), Rat(prec));
}

json newton_report(const std::string& input) {
    auto pp = parse_poly(input);
    NewtonData nd = newton_polygon(pp.poly);
    json j;
    j["verb"] = "newton";
    j["input"] = input;
    json verts = json::array();
    for (const auto& [i, v] : nd.vertices) verts.push_back({{"i", i}, {"v", grade_str(v)}});
    j["vertices"] = verts;
    json slopes = json::array();
    for (const auto& [lam, mult] : nd.slopes)
        slopes.push_back({{"lambda", grade_str(lam)}, {"multiplicity", mult}});
    j["slopes"] = slopes;
    j["single_slope"] = nd.single_slope();
    return j;
}

json lambda_report(const std::string& input) {
    auto pp = parse_poly(input);
    json j;
    j["verb"] = "lambda-check";
    j["input"] = input;
    auto lp = is_lambda_polynomial(pp.poly);
    j["certified"] = lp.has_value();
    if (lp) j["lambda"] = grade_str(lp->lambda);
    return j;
}

json residue_report(const std::string& input) {
    auto pp = parse_poly(input);
    json j;
    j["verb"] = "residue";
    j["input"] = input;
    auto lp = is_lambda_polynomial(pp.poly);
    if (!lp) throw domain_error("not a lambda-polynomial: residue undefined");
    j["lambda"] = grade_str(lp->lambda);
    j["residue"] = gpoly_to_string(lp->residue);
    return j;
}

// split the residue factorization into coprime primary parts and lift them
json hensel_factor_report(const std::string& input, std::int64_t prec) {
    auto pp = parse_poly(input);
    Grade box = box_of(pp.field, prec);
    auto lp = is_lambda_polynomial(pp.poly);
    if (!lp) throw domain_error("hensel-factor requires a lambda-polynomial (single Newton slope)");
    auto fac = homog_factor(lp->residue);
    json j;
    j["verb"] = "hensel-factor";
    j["input"] = input;
    j["precision"] = prec;
    j["lambda"] = grade_str(lp->lambda);
    json out = json::array();
    if (fac.parts.size() == 1) {
        out.push_back({{"poly", spoly_to_string(lp->f)},
                       {"residue", gpoly_to_string(lp->residue)},
                       {"residue_factor", gpoly_to_string(fac.parts[0].first)},
                       {"multiplicity", fac.parts[0].second}});
        j["note"] = "residue is primary: no proper coprime split exists";
    } else {
        LambdaPolynomial rest = *lp;
        for (std::size_t k = 0; k + 1 < fac.parts.size(); ++k) {
            // the unit of the remaining residue rides on the extracted factor
            GPoly lk(std::vector<GradedElement>{rest.residue.lead()});
            for (int q = 0; q < fac.parts[k].second; ++q) lk = upoly_mul(lk, fac.parts[k].first);
            GPoly m(std::vector<GradedElement>{fac.parts[k].first.c[0].desc()->one()});
            for (std::size_t t = k + 1; t < fac.parts.size(); ++t)
                for (int q = 0; q < fac.parts[t].second; ++q) m = upoly_mul(m, fac.parts[t].first);
            auto [g, h] = hensel_factor(rest, lk, m, box);
            out.push_back({{"poly", spoly_to_string(g.f)},
                           {"residue", gpoly_to_string(g.residue)},
                           {"multiplicity", fac.parts[k].second}});
            rest = h;
        }
        out.push_back({{"poly", spoly_to_string(rest.f)},
                       {"residue", gpoly_to_string(rest.residue)},
                       {"multiplicity", fac.parts.back().second}});
    }
    j["factors"] = out;
    return j;
}

json hensel_root_report(const std::string& input, std::int64_t prec) {
    auto pp = parse_poly(input);
    Grade box = box_of(pp.field, prec);
    auto lp = is_lambda_polynomial(pp.poly);
    if (!lp) throw domain_error("hensel-root requires a lambda-polynomial (single Newton slope)");
    auto fac = homog_factor(lp->residue);
    // least simple root: a linear factor of multiplicity 1
    std::optional<GradedElement> root;
    for (const auto& [g, mult] : fac.parts) {
        if (g.degree() != 1 || mult != 1) continue;
        GradedElement cand = -(g.c[0] * g.c[1].inv());
        if (!root || grade_lt(cand.grade(), root->grade()) ||
            (grade_cmp(cand.grade(), root->grade()) == 0 && cand.lead_coeff() < root->lead_coeff()))
            root = cand;
    }
    if (!root) throw domain_error("the residue polynomial has no simple root");
    SeriesElement a = hensel_root(*lp, *root, box);
    json j;
    j["verb"] = "hensel-root";
    j["input"] = input;
    j["precision"] = prec;
    j["lambda"] = grade_str(lp->lambda);
    j["residue_root"] = root->to_string();
    j["root"] = a.to_string();
    return j;
}

json build_ext_report(const std::string& input, std::int64_t prec) {
    auto pg = parse_graded_poly(input);
    Grade box = box_of(pg.field, prec);
    auto ve = build_root_extension(pg.field, pg.poly, box);
    auto d = valued_degrees(ve);
    auto fl = classify_valued(ve);
    json j;
    j["verb"] = "build-ext";
    j["input"] = input;
    j["degree"] = d.total.str();
    j["residue_degree"] = d.residue_degree.str();
    j["ramification_index"] = d.ram_index.str();
    j["defectless"] = d.defectless;
    j["inertial"] = fl.inertial;
    j["totally_ramified"] = fl.totally_ramified;
    j["tame"] = fl.tame;
    j["purely_wild"] = fl.purely_wild;
    j["generator"] = ve.gen.to_string();
    j["generator_residue"] = ve.gen_residue.to_string();
    j["residue_field"] = ve.residue->to_string();
    return j;
}

json graded_factor_report(const std::string& input) {
    auto pg = parse_graded_poly(input);
    auto lam = is_homogenizable(pg.poly);
    json j;
    j["verb"] = "graded-factor";
    j["input"] = input;
    if (!lam) throw domain_error("polynomial is not lambda-homogenizable");
    j["lambda"] = grade_str(*lam);
    auto fac = homog_factor(pg.poly);
    j["unit"] = fac.unit.to_string();
    json parts = json::array();
    for (const auto& [g, m] : fac.parts)
        parts.push_back({{"factor", gpoly_to_string(g)}, {"multiplicity", m}});
    j["factors"] = parts;
    return j;
}

json kummer_report(const std::string& field_s, const std::string& a_s, std::int64_t n) {
    auto fld = parse_series_field(field_s);
    auto ge = associated_graded(fld);
    GradedElement a = parse_graded_elem(a_s, ge);
    auto res = kummer_recognize(ge, a, n);
    auto fl = classify_extension(res.ext.emb);
    json j;
    j["verb"] = "kummer";
    j["field"] = field_s;
    j["a"] = a_s;
    j["n"] = n;
    j["m"] = res.m.str();
    j["zeta"] = res.zeta.to_string();
    j["relation"] = "sigma(x) = zeta * x";
    j["inertial"] = fl.inertial;
    j["totally_ramified"] = fl.totally_ramified;
    j["tame"] = fl.tame;
    j["residue_field"] = res.ext.emb.top()->f0()->to_string();
    j["minimal_polynomial"] = gpoly_to_string(res.ext.minpoly);
    return j;
}

json hilbert90_report(const std::string& field_s, const std::string& a_s, std::int64_t n,
                      const std::string& x_s, std::int64_t xw) {
    auto fld = parse_series_field(field_s);
    auto ge = associated_graded(fld);
    GradedElement a = parse_graded_elem(a_s, ge);
    auto kum = kummer_recognize(ge, a, n);
    GradedElement xbase = parse_graded_elem(x_s, ge);
    GradedElement x = kum.ext.emb.apply(xbase) * kum.ext.x.pow(xw);
    GradedElement y = hilbert90_witness(kum.ext.emb, kum.sigma, x);
    json j;
    j["verb"] = "hilbert90";
    j["field"] = field_s;
    j["a"] = a_s;
    j["n"] = n;
    j["x"] = x.to_string();
    j["witness"] = y.to_string();
    j["verified"] = (x * kum.sigma.apply(y)) == y;
    return j;
}

// ---------------------------------------------------------------------
// crossed products

CrossedProductData crossed_data_from_json(const json& cfg) {
    CrossedProductData d;
    const json& tw = cfg.at("tower");
    std::string kind = tw.at("kind").get<std::string>();
    if (kind == "finite") {
        d.tower = NTower::finite(tw.at("p").get<std::int64_t>(), tw.at("n").get<int>(),
                                 tw.value("e", 1));
    } else if (kind == "multiquad") {
        d.tower = NTower::multiquad(tw.at("d").get<std::vector<std::int64_t>>());
    } else {
        throw domain_error("tower kind must be 'finite' or 'multiquad'");
    }
    d.r = cfg.at("r").get<std::vector<std::int64_t>>();
    for (const json& s : cfg.at("sigma")) {
        NAut a;
        if (s.contains("frob")) a.frob = s.at("frob").get<int>();
        if (s.contains("flips")) {
            std::uint32_t f = 0;
            auto v = s.at("flips").get<std::vector<int>>();
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v[i]) f |= (1u << i);
            a.flips = f;
        }
        d.sigma.push_back(a);
    }
    for (const json& row : cfg.at("u")) {
        std::vector<NElem> r2;
        for (const json& e : row) r2.push_back(d.tower->parse(e.get<std::string>()));
        d.u.push_back(std::move(r2));
    }
    for (const json& e : cfg.at("b")) d.b.push_back(d.tower->parse(e.get<std::string>()));
    if (cfg.contains("gamma")) {
        for (const json& row : cfg.at("gamma")) {
            Grade g;
            for (const json& e : row) g.push_back(rat_from_string(e.get<std::string>()));
            d.gamma.push_back(std::move(g));
        }
    }
    return d;
}

json crossed_report(const std::string& sub, const std::string& cfg_path,
                    const std::string& grade_arg) {
    std::ifstream in(cfg_path);
    if (!in) throw domain_error("cannot open config file '" + cfg_path + "'");
    json cfg = json::parse(in);
    auto data = crossed_data_from_json(cfg);
    auto alg = CrossedProduct::build(std::move(data));
    json j;
    j["verb"] = "crossed " + sub;
    auto slash = cfg_path.find_last_of('/');
    j["config"] = slash == std::string::npos ? cfg_path : cfg_path.substr(slash + 1);
    j["tower"] = alg->tower()->to_string();
    if (sub == "build") {
        j["ok"] = true;
        j["m"] = alg->m();
        json rel = json::array();
        for (int i = 0; i < alg->m(); ++i)
            rel.push_back("z" + std::to_string(i + 1) + "^" +
                          std::to_string(alg->data().r[static_cast<std::size_t>(i)]) + " = (" +
                          alg->tower()->print(alg->data().b[static_cast<std::size_t>(i)]) + ") * y" +
                          std::to_string(i + 1));
        j["relations"] = rel;
        return j;
    }
    if (sub == "classify") {
        auto rep = alg->classify();
        j["semiramified"] = rep.semiramified;
        j["inertially_split"] = rep.inertially_split;
        j["nicely_semiramified"] = rep.nicely_semiramified;
        j["residue_dim"] = rep.residue_dim.str();
        j["lattice_index"] = rep.lattice_index.str();
        j["dim_over_center"] = rep.dim_over_f.str();
        j["fundamental_equality"] = rep.fundamental_equality;
        json q = json::array();
        for (const auto& x : rep.gamma_quotient) q.push_back(x.str());
        j["gamma_quotient"] = q;
        if (rep.ramified_subfield) {
            json w = json::array();
            for (const auto& [ww, cc] : *rep.ramified_subfield) {
                json gexp = json::array();
                for (auto v : ww) gexp.push_back(v);
                w.push_back({{"coeff", cc}, {"z", gexp}});
            }
            j["ramified_subfield"] = w;
        }
        return j;
    }
    if (sub == "theta") {
        Grade g;
        {
            std::string s = grade_arg;
            if (s.empty()) throw domain_error("theta needs --grade");
            // comma-separated rationals
            std::size_t pos = 0;
            while (pos < s.size()) {
                std::size_t c = s.find(',', pos);
                std::string piece = s.substr(pos, c == std::string::npos ? std::string::npos : c - pos);
                g.push_back(rat_from_string(piece));
                if (c == std::string::npos) break;
                pos = c + 1;
            }
        }
        NAut th = alg->theta_of_grade(g);
        j["grade"] = grade_to_string(g);
        if (alg->tower()->is_finite()) {
            j["theta"] = "frobenius^" + std::to_string(th.frob);
        } else {
            json flips = json::array();
            for (std::size_t i = 0; i < alg->tower()->dlist().size(); ++i)
                flips.push_back((th.flips >> i) & 1u);
            j["theta"] = flips;
        }
        j["isomorphism"] = alg->theta_is_isomorphism();
        return j;
    }
    if (sub == "dec-search") {
        std::vector<NElem> W;
        for (const json& e : cfg.at("witness")) W.push_back(alg->tower()->parse(e.get<std::string>()));
        auto res = alg->dec_witness_search(W);
        j["decomposable"] = res.decomposable;
        j["searched"] = res.searched.str();
        if (res.decomposable) {
            json w = json::array();
            for (const auto& a : res.witness) w.push_back(alg->tower()->print(a));
            j["witness"] = w;
            j["witness_verified"] = res.witness_verified;
        } else {
            j["warnings"] = json::array(
                {"semi-decision: no witness in the supplied set; this does not prove nondegeneracy"});
        }
        return j;
    }
    if (sub == "verify-subfield") {
        std::vector<AlgebraElement> gens;
        for (const json& ge : cfg.at("generators")) {
            NElem c = alg->tower()->parse(ge.at("coeff").get<std::string>());
            Wexp w = ge.at("z").get<std::vector<std::int64_t>>();
            gens.push_back(alg->monomial(c, w));
        }
        auto rep = alg->verify_subfield(gens);
        j["commutes"] = rep.commutes;
        j["dimension"] = rep.dimension.str();
        j["residue_dim"] = rep.residue_dim.str();
        j["lattice_index"] = rep.lattice_index.str();
        j["fundamental_equality"] = rep.fundamental_equality;
        j["totally_ramified"] = rep.totally_ramified;
        j["inertial"] = rep.inertial;
        j["maximal"] = rep.maximal;
        json orders = json::array();
        for (const auto& n : rep.generator_orders) orders.push_back(n.str());
        j["generator_orders"] = orders;
        if (rep.kummer_group) {
            json kg = json::array();
            for (const auto& n : *rep.kummer_group) kg.push_back(n.str());
            j["kummer_group"] = kg;
        }
        return j;
    }
    throw domain_error("unknown crossed subcommand '" + sub + "'");
}

struct Usage : std::runtime_error {
    explicit Usage(const std::string& w) : std::runtime_error(w) {}
};

const char* kUsage =
    "usage: grval <verb> [args]\n"
    "  newton        \"<poly> over <field>\"\n"
    "  lambda-check  \"<poly> over <field>\"\n"
    "  residue       \"<poly> over <field>\"\n"
    "  hensel-factor \"<poly> over <field>\" [--prec N]\n"
    "  hensel-root   \"<poly> over <field>\" [--prec N]\n"
    "  build-ext     \"<graded poly> over <field>\" [--prec N]\n"
    "  graded-factor \"<graded poly> over <field>\"\n"
    "  kummer        --field <field> --a <graded elem> --n N\n"
    "  hilbert90     --field <field> --a <elem> --n N --x <elem> [--xw K]\n"
    "  crossed build|classify|theta|dec-search|verify-subfield --config <file.json> [--grade g]\n";

}  // namespace

RunResult run_command(const std::vector<std::string>& args) {
    RunResult rr;
    try {
        if (args.empty()) throw Usage("missing verb");
        const std::string& verb = args[0];
        std::vector<std::string> pos;
        std::int64_t prec = 24;
        std::string field_s, a_s, x_s, cfg, grade_arg;
        std::int64_t n = 0, xw = 0;
        for (std::size_t i = 1; i < args.size(); ++i) {
            auto need = [&](const char* flag) -> std::string {
                if (i + 1 >= args.size()) throw Usage(std::string("missing value for ") + flag);
                return args[++i];
            };
            if (args[i] == "--prec") {
                prec = std::stoll(need("--prec"));
                if (prec < 1) throw Usage("--prec must be positive");
            } else if (args[i] == "--field") {
                field_s = need("--field");
            } else if (args[i] == "--a") {
                a_s = need("--a");
            } else if (args[i] == "--x") {
                x_s = need("--x");
            } else if (args[i] == "--n") {
                n = std::stoll(need("--n"));
            } else if (args[i] == "--xw") {
                xw = std::stoll(need("--xw"));
            } else if (args[i] == "--config") {
                cfg = need("--config");
            } else if (args[i] == "--grade") {
                grade_arg = need("--grade");
            } else if (args[i].rfind("--", 0) == 0) {
                throw Usage("unknown option '" + args[i] + "'");
            } else {
                pos.push_back(args[i]);
            }
        }
        json j;
        if (verb == "newton") {
            if (pos.size() != 1) throw Usage("newton needs one input string");
            j = newton_report(pos[0]);
        } else if (verb == "lambda-check") {
            if (pos.size() != 1) throw Usage("lambda-check needs one input string");
            j = lambda_report(pos[0]);
        } else if (verb == "residue") {
            if (pos.size() != 1) throw Usage("residue needs one input string");
            j = residue_report(pos[0]);
        } else if (verb == "hensel-factor") {
            if (pos.size() != 1) throw Usage("hensel-factor needs one input string");
            j = hensel_factor_report(pos[0], prec);
        } else if (verb == "hensel-root") {
            if (pos.size() != 1) throw Usage("hensel-root needs one input string");
            j = hensel_root_report(pos[0], prec);
        } else if (verb == "build-ext") {
            if (pos.size() != 1) throw Usage("build-ext needs one input string");
            j = build_ext_report(pos[0], prec);
        } else if (verb == "graded-factor") {
            if (pos.size() != 1) throw Usage("graded-factor needs one input string");
            j = graded_factor_report(pos[0]);
        } else if (verb == "kummer") {
            if (field_s.empty() || a_s.empty() || n <= 0)
                throw Usage("kummer needs --field, --a, --n");
            j = kummer_report(field_s, a_s, n);
        } else if (verb == "hilbert90") {
            if (field_s.empty() || a_s.empty() || n <= 0 || x_s.empty())
                throw Usage("hilbert90 needs --field, --a, --n, --x");
            j = hilbert90_report(field_s, a_s, n, x_s, xw);
        } else if (verb == "crossed") {
            if (pos.size() != 1 || cfg.empty())
                throw Usage("crossed needs a subcommand and --config");
            j = crossed_report(pos[0], cfg, grade_arg);
        } else if (verb == "--help" || verb == "help") {
            rr.exit_code = 0;
            rr.output = kUsage;
            return rr;
        } else {
            throw Usage("unknown verb '" + verb + "'");
        }
        rr.exit_code = 0;
        rr.output = j.dump(2) + "\n";
        return rr;
    } catch (const Usage& u) {
        rr.exit_code = 1;
        rr.output = std::string("error: ") + u.what() + "\n" + kUsage;
        return rr;
    } catch (const domain_error& e) {
        json j;
        j["error"] = e.what();
        rr.exit_code = 2;
        rr.output = j.dump(2) + "\n";
        return rr;
    } catch (const std::exception& e) {
        json j;
        j["error"] = std::string("internal: ") + e.what();
        rr.exit_code = 2;
        rr.output = j.dump(2) + "\n";
        return rr;
    }
}

}  // namespace grval
