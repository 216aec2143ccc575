// Command-line front end: field inspection, pair certification, extremal
// constructions, censuses, orbit counting, E-form analysis, and the
// verification suite.  Result documents go to stdout and are byte-identical
// for identical flags and seed; the run manifest (including wall-clock) goes
// to stderr.
#include <CLI11.hpp>
#include <chrono>
#include <iostream>
#include <json.hpp>

#include "qinv/acceptance.hpp"
#include "qinv/certify.hpp"
#include "qinv/classify.hpp"
#include "qinv/construct.hpp"
#include "qinv/eform.hpp"

using json = nlohmann::json;
using namespace qinv;

namespace {

constexpr const char* kVersion = "0.1.0";

std::vector<Elem> parse_list(const FieldCtx& f, const std::string& lit) {
    std::vector<Elem> out;
    std::size_t pos = 0;
    while (pos < lit.size()) {
        auto semi = lit.find(';', pos);
        if (semi == std::string::npos) semi = lit.size();
        out.push_back(f.parse(lit.substr(pos, semi - pos)));
        pos = semi + 1;
    }
    return out;
}

json subspace_json(const Subspace& s) {
    json b = json::array();
    for (Elem e : s.basis()) b.push_back(s.field()->format(e));
    return b;
}

json witnesses_json(const FieldCtx& f, const std::vector<Elem>& ws) {
    json a = json::array();
    for (Elem w : ws) a.push_back(f.format(w));
    return a;
}

struct Manifest {
    std::string field;
    std::string command;
    std::uint64_t seed = 0;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    ~Manifest() {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        json m{{"field", field}, {"command", command}, {"seed", seed},
               {"version", kVersion}, {"wall_ms", ms}};
        std::cerr << m.dump() << "\n";
    }
};

// q given as a prime power; its natural home is F_{q^4}
FieldCtx field_for_q(std::uint64_t q) {
    for (unsigned p = 2; p <= q; ++p) {
        if (!is_prime(p)) continue;
        std::uint64_t t = q;
        unsigned k = 0;
        while (t % p == 0) {
            t /= p;
            ++k;
        }
        if (t == 1) return FieldCtx::make(p, 4 * k, k);
    }
    throw field_error("q is not a prime power");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inverse-intersection analysis of F_q-subspaces of finite fields"};
    app.require_subcommand(1);

    std::string field_spec = "3^1:4";
    std::uint64_t seed = 20240915;
    int jobs = 0;

    // field
    auto* cmd_field = app.add_subcommand("field", "describe a field context");
    cmd_field->add_option("--field", field_spec, "field spec p^k:M");

    // certify
    std::string a_lit, b_lit, alpha_lit, beta_lit;
    auto* cmd_cert = app.add_subcommand("certify", "certificate and bounds for a pair (A, B)");
    cmd_cert->add_option("--field", field_spec, "field spec p^k:M");
    cmd_cert->add_option("--A", a_lit, "subspace literal (basis elements joined by ';')")
        ->required();
    cmd_cert->add_option("--B", b_lit, "subspace literal")->required();
    cmd_cert->add_option("--alpha", alpha_lit, "affine shift of A (element literal)");
    cmd_cert->add_option("--beta", beta_lit, "affine shift of B");

    // construct
    int case_no = 1;
    unsigned dim_d = 3;
    auto* cmd_cons = app.add_subcommand("construct", "build an extremal pair for a case");
    cmd_cons->add_option("--field", field_spec, "field spec p^k:M");
    cmd_cons->add_option("--case", case_no, "case 1..4")->check(CLI::Range(1, 4));
    cmd_cons->add_option("--d", dim_d, "dimension (default 3)");
    cmd_cons->add_option("--a", a_lit, "parameter a (element literal)");
    cmd_cons->add_option("--b", b_lit, "parameter b (element literal)");

    // classify census / orbits
    auto* cmd_cls = app.add_subcommand("classify", "censuses and equivalence classes");
    cmd_cls->require_subcommand(1);
    unsigned cen_d = 3, cen_e = 4;
    bool serial = false;
    auto* cmd_census = cmd_cls->add_subcommand(
        "census",
        "CSV census of |A^{-1} cap B| over ordered pairs; the count = q^d-1 row "
        "(if present) counts subfield pairs with A^{-1} inside B");
    cmd_census->add_option("--field", field_spec, "field spec p^k:M");
    cmd_census->add_option("--d", cen_d, "subspace dimension");
    cmd_census->add_option("--e", cen_e, "subspaces of F_{q^e}");
    cmd_census->add_option("--jobs", jobs, "worker threads (default QINV_JOBS or all)");
    cmd_census->add_flag("--serial", serial, "use the serial reference implementation");

    std::uint64_t orb_q = 3, orb_target = 16;
    bool orb_noverify = false;
    auto* cmd_orbits = cmd_cls->add_subcommand("orbits", "equivalence class counts");
    cmd_orbits->add_option("--q", orb_q, "subfield order q (prime power)")->required();
    cmd_orbits->add_option("--target", orb_target, "target |A^{-1} cap B|")->required();
    cmd_orbits->add_flag("--no-verify", orb_noverify, "skip per-pair brute-force verification");

    // eform
    auto* cmd_ef = app.add_subcommand("eform", "multivariate form E analysis");
    cmd_ef->require_subcommand(1);
    std::string ea_lit, eb_lit, eB_lit;
    int ef_sign = -1;
    unsigned ef_p = 3;
    auto* ef_build = cmd_ef->add_subcommand("build", "expand E for coefficient lists a, b");
    ef_build->add_option("--field", field_spec, "field spec p^k:M");
    ef_build->add_option("--a-list", ea_lit, "coefficients a_i joined by ';'")->required();
    ef_build->add_option("--b-list", eb_lit, "coefficients b_j joined by ';'")->required();
    ef_build->add_option("--sign", ef_sign, "+1 or -1");
    auto* ef_factors = cmd_ef->add_subcommand("factors", "binomial linear factor search");
    ef_factors->add_option("--field", field_spec, "field spec p^k:M");
    ef_factors->add_option("--a-list", ea_lit, "coefficients a_i")->required();
    ef_factors->add_option("--b-list", eb_lit, "coefficients b_j")->required();
    ef_factors->add_option("--sign", ef_sign, "+1 or -1");
    auto* ef_ids = cmd_ef->add_subcommand("identities", "exceptional factorization identities");
    ef_ids->add_option("--p", ef_p, "prime characteristic");
    auto* ef_coords = cmd_ef->add_subcommand("coords", "F_q-rational coordinate change for B");
    ef_coords->add_option("--field", field_spec, "field spec p^k:M");
    ef_coords->add_option("--B", eB_lit, "q-polynomial coefficients b_0;...;b_d")->required();

    // verify-all
    std::string level = "desk";
    auto* cmd_verify = app.add_subcommand("verify-all", "run the verification suite");
    cmd_verify->add_option("--level", level, "smoke | desk")
        ->check(CLI::IsMember({"smoke", "desk"}));
    cmd_verify->add_option("--jobs", jobs, "worker threads");
    cmd_verify->add_option("--seed", seed, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    Manifest manifest;
    manifest.field = field_spec;
    manifest.seed = seed;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) manifest.command += ' ';
        manifest.command += argv[i];
    }

    try {
        if (cmd_field->parsed()) {
            FieldCtx f = FieldCtx::from_spec(field_spec);
            json mod = json::array();
            for (unsigned c : f.modulus()) mod.push_back(c);
            json out{{"spec", f.spec()}, {"p", f.p()},     {"k", f.k()},
                     {"M", f.M()},       {"q", f.q()},     {"order", f.order()},
                     {"modulus", mod},   {"qdim", f.qdim()}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (cmd_cert->parsed()) {
            FieldCtx f = FieldCtx::from_spec(field_spec);
            Subspace A = Subspace::parse(&f, a_lit);
            Subspace B = Subspace::parse(&f, b_lit);
            BoundsReport rep = verify_bounds(A, B);
            QPoly qa = qpoly_from_subspace(A), qb = qpoly_from_subspace(B);
            Certificate cert = build_certificate(qa, qb, WithGcd::yes);
            json out{{"count", rep.count},
                     {"bounds", {{"general", rep.bound_general}, {"q2", rep.bound_q2}}},
                     {"tight", rep.tight},
                     {"subfield_case", rep.subfield_case},
                     {"C_degree", cert.C.degree()},
                     {"D_degree", cert.D ? cert.D->degree() : -1},
                     {"gcd_degree", *cert.gcd_degree},
                     {"witnesses", witnesses_json(f, rep.witnesses)}};
            if (!alpha_lit.empty() || !beta_lit.empty()) {
                const Elem alpha = alpha_lit.empty() ? 0 : f.parse(alpha_lit);
                const Elem beta = beta_lit.empty() ? 0 : f.parse(beta_lit);
                Poly aff = affine_certificate(qa, alpha, qb, beta);
                out["affine_certificate_degree"] = aff.degree();
                out["affine_bound"] = 2 * ipow(f.q(), A.dim() - 1);
            }
            const bool ok = rep.subfield_case || (rep.general_ok && rep.q2_ok);
            std::cout << out.dump(2) << "\n";
            return ok ? 0 : 1;
        }

        if (cmd_cons->parsed()) {
            FieldCtx f = FieldCtx::from_spec(field_spec);
            Elem a, b;
            if (!a_lit.empty() && !b_lit.empty()) {
                a = f.parse(a_lit);
                b = f.parse(b_lit);
            } else {
                // first parameters matching the requested case
                const Elem tgt = f.p() == 2 ? Elem{1} : f.neg(1);
                const bool odd = f.p() != 2;
                if ((case_no <= 2 && !odd) || (case_no == 3 && odd))
                    throw field_error("case vacuous for this characteristic");
                a = 0;
                b = 0;
                std::vector<Elem> mu;
                for (Elem x = 1; x < f.order(); ++x)
                    if (f.in_subfield(x, f.q() * f.q()) && f.pow(x, f.q() + 1) == tgt)
                        mu.push_back(x);
                for (Elem x : mu) {
                    for (Elem y : mu) {
                        auto dec = classify_special_case(f, x, y);
                        if (static_cast<int>(dec.tag) == case_no) {
                            a = x;
                            b = y;
                            break;
                        }
                    }
                    if (a) break;
                }
                if (case_no == 4) {
                    a = mu.empty() ? 1 : mu.front();
                    b = f.inv(a);  // ab = 1: the bound case
                }
                if (a == 0) throw field_error("no parameters found for the case");
            }
            SpecialPair p = make_special_pair(f, dim_d, a, b);
            auto bf = inverse_intersection_bruteforce(p.SA, p.SB);
            json out{{"a", f.format(a)},
                     {"b", f.format(b)},
                     {"case", static_cast<int>(p.decision.tag)},
                     {"case_name", case_name(p.decision.tag)},
                     {"predicted", p.decision.value},
                     {"predicted_is_bound", p.decision.is_bound},
                     {"measured", bf.count},
                     {"A", subspace_json(p.SA)},
                     {"B", subspace_json(p.SB)}};
            if (dim_d == 3) {
                GeometryReport g = geometry_report(p);
                out["geometry"] = json{{"identity_ok", g.identity_ok},
                                       {"nonsingular", g.nonsingular},
                                       {"conic_rational", g.conic_rational},
                                       {"line_position", g.line_position},
                                       {"on_line", g.on_line},
                                       {"on_conic", g.on_conic},
                                       {"on_both", g.on_both},
                                       {"ratio", g.ratio}};
            }
            const bool ok =
                p.decision.is_bound ? bf.count <= p.decision.value : bf.count == p.decision.value;
            std::cout << out.dump(2) << "\n";
            return ok ? 0 : 1;
        }

        if (cmd_census->parsed()) {
            FieldCtx f = FieldCtx::from_spec(field_spec);
            CensusResult c = serial ? intersection_census_serial(f, cen_d, cen_e)
                                    : intersection_census(f, cen_d, cen_e, jobs);
            std::cout << "count,pairs\n";
            for (auto [k, v] : c.tally) std::cout << k << "," << v << "\n";
            if (c.subfield_pairs)
                std::cout << (ipow(c.q, c.d) - 1) << "," << c.subfield_pairs << "\n";
            return 0;
        }

        if (cmd_orbits->parsed()) {
            FieldCtx f = field_for_q(orb_q);
            manifest.field = f.spec();
            OrbitCensus oc = orbit_census(f, orb_target, !orb_noverify);
            json out{{"q", orb_q},
                     {"target", oc.target},
                     {"classes", oc.classes},
                     {"parameter_pairs", oc.ab_pairs},
                     {"case", static_cast<int>(oc.tag)},
                     {"case_name", case_name(oc.tag)},
                     {"theorem_range", oc.theorem_range},
                     {"self_paired_per_class", oc.self_paired_per_class},
                     {"counts_verified", oc.counts_verified}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (ef_build->parsed() || ef_factors->parsed()) {
            FieldCtx f = FieldCtx::from_spec(field_spec);
            MultiPoly E = build_E(&f, parse_list(f, ea_lit), parse_list(f, eb_lit), ef_sign);
            if (ef_build->parsed()) {
                json terms = json::array();
                for (const auto& [e, c] : E.terms()) {
                    json exps = json::array();
                    for (auto x : e) exps.push_back(static_cast<int>(x));
                    terms.push_back(json{{"exps", exps}, {"coeff", f.format(c)}});
                }
                json out{{"nvars", E.nvars()},
                         {"terms", terms},
                         {"property", check_property(E)},
                         {"homogeneous", E.homogeneous()}};
                std::cout << out.dump(2) << "\n";
                return 0;
            }
            FactorReport rep = factor_report(E);
            json factors = json::array();
            for (const auto& bf : rep.binomial_linear_factors)
                factors.push_back(json{{"i", bf.i},
                                       {"j", bf.j},
                                       {"alpha", f.format(bf.alpha)},
                                       {"beta", f.format(bf.beta)}});
            const char* shapes[] = {"IRREDUCIBLE-CANDIDATE", "EXC1", "EXC2", "OTHER-SPLIT"};
            json mono = json::array();
            for (auto x : rep.monomial_part) mono.push_back(static_cast<int>(x));
            json out{{"monomial_part", mono},
                     {"binomial_linear_factors", factors},
                     {"shape", shapes[static_cast<int>(rep.shape)]},
                     {"residual_terms", rep.residual.terms().size()},
                     {"r", rep.r}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (ef_ids->parsed()) {
            const bool ok = verify_exceptional_identities(ef_p);
            json out{{"p", ef_p}, {"identities_hold", ok}};
            std::cout << out.dump(2) << "\n";
            return ok ? 0 : 1;
        }

        if (ef_coords->parsed()) {
            FieldCtx f = FieldCtx::from_spec(field_spec);
            std::vector<Elem> bc = parse_list(f, eB_lit);
            QPoly B(&f, std::move(bc));
            CoordinateChange cc = coordinate_change(B);
            json gam = json::array();
            for (Elem g : cc.gammas) gam.push_back(f.format(g));
            auto mat = [&](const std::vector<std::vector<Elem>>& m) {
                json rows = json::array();
                for (const auto& r : m) {
                    json row = json::array();
                    for (Elem e : r) row.push_back(f.format(e));
                    rows.push_back(row);
                }
                return rows;
            };
            json out{{"gammas", gam},
                     {"z_from_x", mat(cc.z_from_x)},
                     {"x_from_z", mat(cc.x_from_z)},
                     {"functionals_verified", cc.functionals_verified}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (cmd_verify->parsed()) {
            AcceptanceOptions opt;
            opt.level = level == "smoke" ? AcceptanceLevel::smoke : AcceptanceLevel::desk;
            opt.jobs = jobs;
            opt.seed = seed;
            auto results = run_acceptance(opt);
            const bool ok = print_acceptance(std::cout, results);
            return ok ? 0 : 1;
        }
    } catch (const field_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
