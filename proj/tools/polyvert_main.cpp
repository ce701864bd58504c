// Command-line front end: construct, verify, classify, expand, restrict,
// oracle-compare and sweep, with JSON on stdout.
//
// Exit codes: 0 success / all checks pass, 1 verification failure,
// 2 usage or domain errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "polyvert/axioms.hpp"
#include "polyvert/json_io.hpp"

namespace {

using namespace polyvert;

// Accepts "re", "imi" (e.g. "2i", "-i") and "re+imi" / "re-imi" forms.
Coeff parse_complex(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::domain_error("empty complex literal");

    auto to_double = [](const std::string& tok) {
        if (tok.empty() || tok == "+") return 1.0;
        if (tok == "-") return -1.0;
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::domain_error("malformed number: " + tok);
        return v;
    };

    if (s.back() == 'i' || s.back() == 'I' || s.back() == 'j') {
        const std::string body = s.substr(0, s.size() - 1);
        // Split at the last top-level +/- (not an exponent sign, not leading).
        for (std::size_t k = body.size(); k-- > 1;) {
            if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E')
                return {to_double(body.substr(0, k)), to_double(body.substr(k))};
        }
        return {0.0, to_double(body)};
    }
    return {to_double(s), 0.0};
}

Poly parse_poly(const std::string& raw) {
    std::vector<Coeff> cs;
    std::string tok;
    for (std::size_t i = 0; i <= raw.size(); ++i) {
        if (i == raw.size() || raw[i] == ',') {
            if (!tok.empty()) cs.push_back(parse_complex(tok));
            tok.clear();
        } else {
            tok.push_back(raw[i]);
        }
    }
    return Poly::from_coeffs(std::move(cs));
}

struct CommonOpts {
    double eps_eq = 1e-10;
    double eps_residual = 1e-9;
    std::string out;

    Tolerance tolerance() const { return Tolerance(eps_eq, eps_residual); }
};

struct ConstructOpts {
    std::int64_t n = 1;
    std::int64_t p = 1;
    std::int64_t l = 0;
    std::int64_t order = -1;  // exponent numerators over p; default 20*p
    std::string c1 = "0", cp1 = "";
    std::string alpha = "", beta = "", c = "";
    bool trivial = false;

    bool untwisted() const { return !alpha.empty() || !beta.empty() || !c.empty(); }
    std::int64_t hi() const { return order >= 0 ? order : 20 * p; }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--eps-eq", o.eps_eq, "coefficient equality threshold");
    cmd->add_option("--eps-residual", o.eps_residual, "series residual threshold");
    cmd->add_option("--out", o.out, "write the JSON result to this path instead of stdout");
}

void add_construct_flags(CLI::App* cmd, ConstructOpts& o) {
    cmd->add_option("--n", o.n, "module dimension");
    cmd->add_option("--p", o.p, "automorphism order / ramification");
    cmd->add_option("--l", o.l, "branch label, 0 <= l < p");
    cmd->add_option("--c1", o.c1, "coefficient of t in f (complex)");
    cmd->add_option("--cp1", o.cp1, "coefficient of t^{p+1} in f (complex, nonzero)");
    cmd->add_option("--alpha", o.alpha, "root of f (untwisted parametrization)");
    cmd->add_option("--beta", o.beta, "root of f (untwisted parametrization)");
    cmd->add_option("--c", o.c, "leading coefficient of f (untwisted parametrization)");
    cmd->add_option("--order", o.order, "truncation, exponent numerators over p (default 20*p)");
    cmd->add_flag("--trivial", o.trivial, "construct the module with Y(t,x) = 0");
}

TwistedModule construct_from_opts(const ConstructOpts& o, Tolerance tol) {
    if (o.trivial)
        return construct_trivial(o.n, o.p, parse_complex(o.c1),
                                 o.cp1.empty() ? Coeff(0.0) : parse_complex(o.cp1), o.hi(), tol);
    if (o.untwisted()) {
        if (o.alpha.empty() || o.beta.empty() || o.c.empty())
            throw std::domain_error("untwisted construction needs --alpha, --beta and --c");
        return construct_untwisted(o.n, parse_complex(o.alpha), parse_complex(o.beta),
                                   parse_complex(o.c), o.hi(), tol);
    }
    if (o.cp1.empty()) throw std::domain_error("twisted construction needs --cp1 (nonzero)");
    return construct_twisted(o.n, o.p, o.l, parse_complex(o.c1), parse_complex(o.cp1), o.hi(),
                             tol);
}

void emit(const CommonOpts& common, const OrderedJson& j) {
    if (common.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(common.out);
        if (!f) throw std::runtime_error("cannot open output path: " + common.out);
        f << j.dump(2) << "\n";
    }
}

// Oracle comparison: scalar recursion + band recursion against the stored T.
double oracle_residual(const TwistedModule& mod, Tolerance tol) {
    if (mod.spec.trivial) return 0.0;
    const std::int64_t p = mod.spec.p;
    const std::int64_t n = mod.spec.n;
    const std::int64_t pad = p * p * (n - 1) * (n - 2) / 2 + 2 * p;
    const PuiseuxSeries s =
        solve_scalar_ode(mod.f, p, mod.spec.l, mod.spec.hi + pad, tol);
    const Mat h = pole_mode_nilpotent(mod.T, p, tol);
    const MatSeries t2 = solve_band_recursion(s, h, mod.f, p, mod.spec.hi, tol);
    return max_abs_diff(t2, mod.T).first;
}

VerificationReport full_report(const TwistedModule& mod, std::int64_t degmax, Tolerance tol) {
    VerificationReport rep = check_lemma_conditions(mod.T, mod.f, mod.spec.p, tol);
    if (!mod.spec.trivial) {
        const VerificationReport ax = check_module_axioms(mod, degmax, tol);
        rep.axiom_results = ax.axiom_results;
    }
    rep.indecomposable = check_indecomposable(mod, tol, &rep.profile);
    return rep;
}

int cmd_construct(const CommonOpts& common, const ConstructOpts& opts) {
    const TwistedModule mod = construct_from_opts(opts, common.tolerance());
    OrderedJson j;
    j["status"] = "ok";
    j["module"] = module_to_json(mod);
    emit(common, j);
    return 0;
}

int cmd_verify(const CommonOpts& common, const ConstructOpts& opts, bool from_stdin,
               std::int64_t degmax) {
    const Tolerance tol = common.tolerance();
    TwistedModule mod;
    if (from_stdin) {
        nlohmann::json in;
        std::cin >> in;
        mod = module_from_json(in.contains("module") ? in["module"] : in);
    } else {
        mod = construct_from_opts(opts, tol);
    }
    const VerificationReport rep = full_report(mod, degmax, tol);
    const bool ok = rep.pass(tol) && (mod.spec.trivial || rep.indecomposable);
    OrderedJson j;
    j["status"] = ok ? "pass" : "fail";
    j["report"] = report_to_json(rep);
    emit(common, j);
    return ok ? 0 : 1;
}

int cmd_classify(const CommonOpts& common, const std::string& fraw, std::int64_t p) {
    const ClassificationResult res = classify(parse_poly(fraw), p, common.tolerance());
    OrderedJson j = classification_to_json(res);
    OrderedJson out;
    out["status"] = "ok";
    for (auto& [k, v] : j.items()) out[k] = v;
    emit(common, out);
    return 0;
}

int cmd_expand(const CommonOpts& common, const ConstructOpts& opts, const std::string& praw) {
    const TwistedModule mod = construct_from_opts(opts, common.tolerance());
    const MatSeries y = evaluate_Y(mod, parse_poly(praw));
    OrderedJson j;
    j["status"] = "ok";
    j["Y"] = matseries_to_json(y);
    emit(common, j);
    return 0;
}

int cmd_restrict(const CommonOpts& common, const ConstructOpts& opts) {
    const Tolerance tol = common.tolerance();
    const TwistedModule mod = construct_from_opts(opts, tol);
    const MatSeries y = restrict_to_fixed_subalgebra(mod, tol);
    OrderedJson j;
    j["status"] = "ok";
    j["restriction"] = matseries_to_json(y);
    emit(common, j);
    return 0;
}

int cmd_oracle(const CommonOpts& common, const ConstructOpts& opts) {
    const Tolerance tol = common.tolerance();
    const TwistedModule mod = construct_from_opts(opts, tol);
    const double res = oracle_residual(mod, tol);
    OrderedJson j;
    j["max_residual"] = res;
    j["status"] = res <= tol.eps_residual ? "pass" : "fail";
    emit(common, j);
    return res <= tol.eps_residual ? 0 : 1;
}

int cmd_sweep(const CommonOpts& common, std::int64_t nmax, std::int64_t pmax, std::int64_t degmax,
              std::int64_t order, std::uint64_t seed) {
    const Tolerance tol = common.tolerance();
    const std::vector<std::pair<Coeff, Coeff>> params = {
        {Coeff(0.0), Coeff(1.0)},
        {Coeff(0.0), Coeff(-0.5)},
        {Coeff(1.0), Coeff(1.0)},
        {Coeff(0.0, 2.0), Coeff(-1.0)},
    };
    double lemma_max = 0.0, axiom_max = 0.0, oracle_max = 0.0;
    std::int64_t cells = 0;
    bool all_indec = true;
    for (std::int64_t p = 1; p <= pmax; ++p)
        for (std::int64_t n = 1; n <= nmax; ++n)
            for (std::int64_t l = 0; l < p; ++l)
                for (const auto& [c1, cp1] : params) {
                    const std::int64_t hi = order >= 0 ? order : 20 * p;
                    const TwistedModule mod = construct_twisted(n, p, l, c1, cp1, hi, tol);
                    const VerificationReport rep = full_report(mod, degmax, tol);
                    lemma_max = std::max({lemma_max, rep.condition_ii, rep.condition_iii});
                    axiom_max = std::max(axiom_max, rep.max_axiom_residual());
                    oracle_max = std::max(oracle_max, oracle_residual(mod, tol));
                    all_indec = all_indec && rep.indecomposable;
                    ++cells;
                }

    // Classification phase: nonexistence draws and quadratic root recovery.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    auto rc = [&] { return Coeff(u(rng), u(rng)); };
    bool class_ok = true;
    for (std::int64_t deg : {0, 1, 3, 4})
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<Coeff> cs(static_cast<std::size_t>(deg) + 1);
            for (auto& v : cs) v = rc();
            if (cs.back().abs() < 0.1) cs.back() = Coeff(1.0);
            const auto r = classify(Poly::from_coeffs(std::move(cs)), 1, tol);
            class_ok = class_ok && !r.exists;
        }
    for (int rep = 0; rep < 5; ++rep) {
        const Coeff alpha = rc(), beta = rc() + Coeff(3.0), c = rc() + Coeff(3.0);
        ModuleSpec ms;
        ms.family = Family::untwisted;
        ms.alpha = alpha;
        ms.beta = beta;
        ms.c = c;
        const auto r = classify(family_polynomial(ms), 1, tol);
        if (!r.exists) {
            class_ok = false;
            continue;
        }
        const auto& fam = r.families.front();
        const double direct = std::max((fam.alpha - alpha).abs(), (fam.beta - beta).abs());
        const double swapped = std::max((fam.alpha - beta).abs(), (fam.beta - alpha).abs());
        class_ok = class_ok && std::min(direct, swapped) <= 1e-9 && (fam.c - c).abs() <= 1e-9;
    }

    const bool ok = lemma_max <= tol.eps_residual && axiom_max <= tol.eps_residual &&
                    oracle_max <= tol.eps_residual && all_indec && class_ok;
    OrderedJson j;
    j["status"] = ok ? "pass" : "fail";
    j["cells"] = cells;
    j["max_lemma_residual"] = lemma_max;
    j["max_axiom_residual"] = axiom_max;
    j["max_oracle_residual"] = oracle_max;
    j["all_indecomposable"] = all_indec;
    j["classification_ok"] = class_ok;
    emit(common, j);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"truncated Puiseux-series engine for twisted modules over (C[t], f d/dt)"};
    app.require_subcommand(1);

    CommonOpts common;
    if (const char* env = std::getenv("VPL_TOLERANCE")) {
        try {
            common.eps_residual = std::stod(env);
        } catch (...) {
            std::cout << OrderedJson{{"status", "error"},
                                     {"message", "VPL_TOLERANCE is not a number"}}
                             .dump(2)
                      << "\n";
            return 2;
        }
    }

    ConstructOpts copts;
    bool from_stdin = false;
    std::int64_t degmax = 4;
    std::string fraw, praw;
    std::int64_t cls_p = 1;
    std::int64_t nmax = 4, pmax = 3, sweep_degmax = 3, sweep_order = -1;
    std::uint64_t seed = 12345;

    auto* c_construct = app.add_subcommand("construct", "construct a module and print it");
    add_common(c_construct, common);
    add_construct_flags(c_construct, copts);

    auto* c_verify = app.add_subcommand("verify", "verify existence conditions and axioms");
    add_common(c_verify, common);
    add_construct_flags(c_verify, copts);
    c_verify->add_flag("--stdin", from_stdin, "read a module JSON from stdin");
    c_verify->add_option("--degmax", degmax, "largest generator degree for the axiom suite");

    auto* c_classify = app.add_subcommand("classify", "decide module existence for f and p");
    add_common(c_classify, common);
    c_classify->add_option("--f", fraw, "polynomial coefficients c0,c1,... (complex)")
        ->required();
    c_classify->add_option("--p", cls_p, "automorphism order");

    auto* c_expand = app.add_subcommand("expand", "print Y(P(t), x) for a constructed module");
    add_common(c_expand, common);
    add_construct_flags(c_expand, copts);
    c_expand->add_option("--P", praw, "polynomial coefficients c0,c1,... (complex)")->required();

    auto* c_restrict =
        app.add_subcommand("restrict", "print Y(t^p, x), checked against its closed form");
    add_common(c_restrict, common);
    add_construct_flags(c_restrict, copts);

    auto* c_oracle = app.add_subcommand(
        "oracle-compare", "reconstruct the module by coefficient recursion and compare");
    add_common(c_oracle, common);
    add_construct_flags(c_oracle, copts);

    auto* c_sweep = app.add_subcommand("sweep", "parameter sweep with all checks");
    add_common(c_sweep, common);
    c_sweep->add_option("--nmax", nmax, "largest module dimension");
    c_sweep->add_option("--pmax", pmax, "largest automorphism order");
    c_sweep->add_option("--degmax", sweep_degmax, "axiom generator-degree bound");
    c_sweep->add_option("--order", sweep_order, "truncation override (default 20*p)");
    c_sweep->add_option("--seed", seed, "seed for the random classification draws");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << OrderedJson{{"status", "error"}, {"message", e.what()}}.dump(2) << "\n";
        return 2;
    }

    try {
        if (c_construct->parsed()) return cmd_construct(common, copts);
        if (c_verify->parsed()) return cmd_verify(common, copts, from_stdin, degmax);
        if (c_classify->parsed()) return cmd_classify(common, fraw, cls_p);
        if (c_expand->parsed()) return cmd_expand(common, copts, praw);
        if (c_restrict->parsed()) return cmd_restrict(common, copts);
        if (c_oracle->parsed()) return cmd_oracle(common, copts);
        if (c_sweep->parsed())
            return cmd_sweep(common, nmax, pmax, sweep_degmax, sweep_order, seed);
    } catch (const std::exception& e) {
        std::cout << OrderedJson{{"status", "error"}, {"message", e.what()}}.dump(2) << "\n";
        return 2;
    }
    return 2;
}
