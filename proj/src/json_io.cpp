#include "polyvert/json_io.hpp"

namespace polyvert {

namespace {

// The exact-window sentinel never leaves the process; exact series are
// serialized with their stored range as the window.
std::pair<std::int64_t, std::int64_t> serial_window(std::int64_t lo, std::int64_t hi,
                                                    std::int64_t stored_top, bool exact,
                                                    bool zero) {
    if (!exact) return {lo, hi};
    if (zero) return {1, 0};
    return {lo, stored_top};
}

}  // namespace

OrderedJson coeff_to_json(const Coeff& v) { return OrderedJson::array({v.re, v.im}); }

Coeff coeff_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::domain_error("coeff_from_json: expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

OrderedJson series_to_json(const PuiseuxSeries& s) {
    const auto [lo, hi] =
        serial_window(s.lo(), s.hi(), s.stored_top(), s.exact(), s.is_zero());
    OrderedJson j;
    j["ram"] = s.ram();
    j["lo"] = lo;
    j["hi"] = hi;
    OrderedJson coeffs = OrderedJson::array();
    for (std::int64_t k = lo; k <= (s.is_zero() ? lo - 1 : s.stored_top()); ++k)
        coeffs.push_back(coeff_to_json(s.coeff_num(k)));
    j["coeffs"] = std::move(coeffs);
    return j;
}

PuiseuxSeries series_from_json(const nlohmann::json& j) {
    const std::int64_t ram = j.at("ram").get<std::int64_t>();
    const std::int64_t lo = j.at("lo").get<std::int64_t>();
    const std::int64_t hi = j.at("hi").get<std::int64_t>();
    std::vector<Coeff> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(coeff_from_json(c));
    return PuiseuxSeries::from_coeffs(ram, lo, std::move(coeffs), hi);
}

OrderedJson matseries_to_json(const MatSeries& s) {
    const auto [lo, hi] =
        serial_window(s.lo(), s.hi(), s.stored_top(), s.exact(), s.is_zero());
    OrderedJson j;
    j["n"] = s.n();
    j["ram"] = s.ram();
    j["lo"] = lo;
    j["hi"] = hi;
    OrderedJson coeffs = OrderedJson::array();
    for (std::int64_t k = lo; k <= (s.is_zero() ? lo - 1 : s.stored_top()); ++k) {
        const Mat m = s.mode_num(k);
        OrderedJson rows = OrderedJson::array();
        for (std::int64_t i = 0; i < s.n(); ++i) {
            OrderedJson row = OrderedJson::array();
            for (std::int64_t c = 0; c < s.n(); ++c) row.push_back(coeff_to_json(m.at(i, c)));
            rows.push_back(std::move(row));
        }
        coeffs.push_back(std::move(rows));
    }
    j["coeffs"] = std::move(coeffs);
    return j;
}

MatSeries matseries_from_json(const nlohmann::json& j) {
    const std::int64_t n = j.at("n").get<std::int64_t>();
    const std::int64_t ram = j.at("ram").get<std::int64_t>();
    const std::int64_t lo = j.at("lo").get<std::int64_t>();
    const std::int64_t hi = j.at("hi").get<std::int64_t>();
    std::vector<Mat> mats;
    for (const auto& entry : j.at("coeffs")) {
        Mat m(n);
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t c = 0; c < n; ++c) m.at(i, c) = coeff_from_json(entry.at(i).at(c));
        mats.push_back(std::move(m));
    }
    return MatSeries::from_coeffs(n, ram, lo, std::move(mats), hi);
}

OrderedJson poly_to_json(const Poly& p) {
    OrderedJson arr = OrderedJson::array();
    for (std::int64_t i = 0; i <= p.degree(); ++i) arr.push_back(coeff_to_json(p.coeff(i)));
    return arr;
}

Poly poly_from_json(const nlohmann::json& j) {
    std::vector<Coeff> cs;
    for (const auto& c : j) cs.push_back(coeff_from_json(c));
    return Poly::from_coeffs(std::move(cs));
}

OrderedJson module_to_json(const TwistedModule& m) {
    OrderedJson spec;
    spec["family"] = m.spec.family == Family::untwisted ? "untwisted" : "twisted";
    spec["p"] = m.spec.p;
    spec["n"] = m.spec.n;
    spec["l"] = m.spec.l;
    if (m.spec.family == Family::untwisted) {
        spec["alpha"] = coeff_to_json(m.spec.alpha);
        spec["beta"] = coeff_to_json(m.spec.beta);
        spec["c"] = coeff_to_json(m.spec.c);
    } else {
        spec["c1"] = coeff_to_json(m.spec.c1);
        spec["cp1"] = coeff_to_json(m.spec.cp1);
    }
    spec["hi"] = m.spec.hi;
    spec["trivial"] = m.spec.trivial;
    OrderedJson j;
    j["spec"] = std::move(spec);
    j["gamma"] = coeff_to_json(m.gamma);
    j["T"] = matseries_to_json(m.T);
    return j;
}

TwistedModule module_from_json(const nlohmann::json& j) {
    const auto& spec = j.at("spec");
    TwistedModule m;
    m.spec.family =
        spec.at("family").get<std::string>() == "untwisted" ? Family::untwisted : Family::twisted;
    m.spec.p = spec.at("p").get<std::int64_t>();
    m.spec.n = spec.at("n").get<std::int64_t>();
    m.spec.l = spec.at("l").get<std::int64_t>();
    if (m.spec.family == Family::untwisted) {
        m.spec.alpha = coeff_from_json(spec.at("alpha"));
        m.spec.beta = coeff_from_json(spec.at("beta"));
        m.spec.c = coeff_from_json(spec.at("c"));
    } else {
        m.spec.c1 = coeff_from_json(spec.at("c1"));
        m.spec.cp1 = coeff_from_json(spec.at("cp1"));
    }
    m.spec.hi = spec.at("hi").get<std::int64_t>();
    m.spec.trivial = spec.value("trivial", false);
    m.gamma = coeff_from_json(j.at("gamma"));
    m.T = matseries_from_json(j.at("T"));
    m.f = family_polynomial(m.spec);
    if (m.spec.trivial)
        m.nil_seed = Mat::zero(m.spec.n);
    else if (m.spec.family == Family::untwisted)
        m.nil_seed = jordan_block(m.spec.n);
    else
        m.nil_seed =
            scaled(jordan_block(m.spec.n), Coeff(1.0 / static_cast<double>(m.spec.p)));
    return m;
}

OrderedJson report_to_json(const VerificationReport& r) {
    OrderedJson j;
    OrderedJson ci;
    ci["pass"] = r.condition_i.pass;
    ci["lowest_exponent"] = {{"num", r.condition_i.lowest_num}, {"ram", r.condition_i.ram}};
    ci["has_negative_exponent"] = r.condition_i.has_negative_exponent;
    ci["off_lattice_norm"] = r.condition_i.off_lattice_norm;
    j["condition_i"] = std::move(ci);
    j["condition_ii"] = {{"max_commutator_norm", r.condition_ii}};
    OrderedJson ciii;
    ciii["max_residual"] = r.condition_iii;
    OrderedJson by_exp = OrderedJson::array();
    for (const auto& [num, res] : r.residual_by_exponent)
        by_exp.push_back(OrderedJson::array({num, res}));
    ciii["by_exponent"] = std::move(by_exp);
    j["condition_iii"] = std::move(ciii);
    OrderedJson ax;
    for (const auto& [k, v] : r.axiom_results) ax[k] = v;
    j["axiom_results"] = std::move(ax);
    OrderedJson ind;
    ind["pass"] = r.indecomposable;
    ind["rank_profile"] = r.profile;
    j["indecomposable"] = std::move(ind);
    return j;
}

OrderedJson classification_to_json(const ClassificationResult& r) {
    OrderedJson j;
    j["exists"] = r.exists;
    j["reason"] = reason_name(r.reason);
    OrderedJson fams = OrderedJson::array();
    for (const auto& f : r.families) {
        OrderedJson fam;
        fam["l"] = f.l;
        fam["n_range"] = "all n >= 1";
        if (f.untwisted) {
            fam["alpha"] = coeff_to_json(f.alpha);
            fam["beta"] = coeff_to_json(f.beta);
            fam["c"] = coeff_to_json(f.c);
        } else {
            fam["c1"] = coeff_to_json(f.c1);
            fam["cp1"] = coeff_to_json(f.cp1);
        }
        fams.push_back(std::move(fam));
    }
    j["families"] = std::move(fams);
    return j;
}

}  // namespace polyvert
