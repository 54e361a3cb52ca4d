// SPDX-License-Identifier: Apache-2.0
#include "eqrefute/certificate.hpp"

#include <algorithm>
#include <map>

#include "eqrefute/ast.hpp"
#include "eqrefute/handelman.hpp"
#include "eqrefute/invariant.hpp"
#include "eqrefute/lowering.hpp"

namespace eqrefute {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json poly_to_json(const Polynomial& p, const std::vector<std::string>& names) {
    ordered_json arr = ordered_json::array();
    for (const auto& [m, c] : p.terms()) {
        ordered_json entry;
        ordered_json mono = ordered_json::object();
        for (size_t i = 0; i < m.exps.size(); ++i)
            if (m.exps[i] > 0) mono[names.at(i)] = m.exps[i];
        entry["m"] = std::move(mono);
        entry["c"] = rational_to_string(c);
        arr.push_back(std::move(entry));
    }
    return arr;
}

Polynomial poly_from_json(const json& j, const std::vector<std::string>& names,
                          const std::string& what) {
    if (!j.is_array()) throw CertificateError(what + ": polynomial must be an array");
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < names.size(); ++i) index[names[i]] = i;
    Polynomial p(names.size());
    for (const auto& entry : j) {
        if (!entry.is_object() || !entry.contains("m") || !entry.contains("c"))
            throw CertificateError(what + ": polynomial term needs fields m and c");
        Monomial m(names.size());
        if (!entry["m"].is_object()) throw CertificateError(what + ": m must be an object");
        for (const auto& [name, exp] : entry["m"].items()) {
            auto it = index.find(name);
            if (it == index.end())
                throw CertificateError(what + ": unknown variable " + name);
            if (!exp.is_number_unsigned() || exp.get<unsigned>() == 0)
                throw CertificateError(what + ": exponent of " + name +
                                       " must be a positive integer");
            if (m.exps[it->second] != 0)
                throw CertificateError(what + ": repeated variable " + name);
            m.exps[it->second] = exp.get<unsigned>();
        }
        if (!entry["c"].is_string())
            throw CertificateError(what + ": coefficient must be a string rational");
        Rational c;
        try {
            c = parse_rational(entry["c"].get<std::string>());
        } catch (const ParseError& e) {
            throw CertificateError(what + ": " + e.what());
        }
        if (p.coefficient(m) != 0)
            throw CertificateError(what + ": duplicate monomial");
        p.add_term(m, c);
    }
    return p;
}

ordered_json family_to_json(const std::vector<Polynomial>& fam,
                            const std::vector<std::string>& labels,
                            const std::vector<std::string>& names) {
    ordered_json obj = ordered_json::object();
    for (size_t l = 0; l < fam.size(); ++l) obj[labels.at(l)] = poly_to_json(fam[l], names);
    return obj;
}

std::vector<Polynomial> family_from_json(const json& j, const std::vector<std::string>& labels,
                                         const std::vector<std::string>& names,
                                         const std::string& what) {
    if (!j.is_object()) throw CertificateError(what + ": expected a location-keyed object");
    if (j.size() != labels.size())
        throw CertificateError(what + ": expected " + std::to_string(labels.size()) +
                               " locations, found " + std::to_string(j.size()));
    std::vector<Polynomial> fam;
    for (const auto& label : labels) {
        if (!j.contains(label))
            throw CertificateError(what + ": missing location " + label);
        fam.push_back(poly_from_json(j.at(label), names, what + "." + label));
    }
    return fam;
}

std::string require_string(const json& j, const char* field, const std::string& where) {
    if (!j.contains(field) || !j.at(field).is_string())
        throw CertificateError(where + ": missing string field " + field);
    return j.at(field).get<std::string>();
}

Rational require_rational(const json& j, const char* field, const std::string& where) {
    try {
        return parse_rational(require_string(j, field, where));
    } catch (const ParseError& e) {
        throw CertificateError(where + "." + field + ": " + e.what());
    }
}

}  // namespace

ordered_json certificate_to_json(const Certificate& c) {
    ordered_json j;
    j["mode"] = c.mode;
    j["metric"] = c.metric.has_value() ? ordered_json(metric_name(*c.metric)) : ordered_json();
    j["epsilon"] =
        c.epsilon.has_value() ? ordered_json(rational_to_string(*c.epsilon)) : ordered_json();
    j["degree_d"] = c.degree_d;
    j["degree_D"] = c.degree_D;
    j["f"] = poly_to_json(c.f, c.out_names);

    j["uesm"] = family_to_json(c.uesm, c.p1_labels, c.p1_names);
    j["lesm"] = family_to_json(c.lesm, c.p2_labels, c.p2_names);

    ordered_json mults = ordered_json::array();
    for (const auto& [key, lam] : c.multipliers) {
        ordered_json entry;
        entry["key"] = key;
        ordered_json arr = ordered_json::array();
        for (const auto& v : lam) arr.push_back(rational_to_string(v));
        entry["lambda"] = std::move(arr);
        mults.push_back(std::move(entry));
    }
    j["multipliers"] = std::move(mults);

    ordered_json ost;
    ost["condition"] = ost_name(c.ost_condition);
    ost["eligibility"] = c.ost_eligibility;
    ost["assumed"] = c.ost_assumed;
    ost["bound_c"] =
        c.bound_c.has_value() ? ordered_json(rational_to_string(*c.bound_c)) : ordered_json();
    auto rsm_to_json = [&](const std::optional<RsmResult>& r, const std::vector<std::string>& labels,
                           const std::vector<std::string>& names) -> ordered_json {
        if (!r.has_value()) return ordered_json();
        ordered_json o;
        o["degree"] = r->degree;
        o["handelman_degree"] = r->handelman_degree;
        o["r"] = family_to_json(r->r, labels, names);
        return o;
    };
    ost["rsm_a"] = rsm_to_json(c.rsm1, c.p1_labels, c.p1_names);
    ost["rsm_b"] = rsm_to_json(c.rsm2, c.p2_labels, c.p2_names);
    ost["downgraded"] = c.ost_downgraded;
    j["ost"] = std::move(ost);

    ordered_json invs;
    invs["program_a"] = {{"origin", c.inv1_origin}, {"text", c.inv1_text}};
    invs["program_b"] = {{"origin", c.inv2_origin}, {"text", c.inv2_text}};
    j["invariants"] = std::move(invs);

    ordered_json meta;
    meta["tool"] = "eqrefute";
    meta["version"] = "0.1.0";
    meta["created"] = c.created;
    meta["epsilon_mode"] = c.epsilon_mode.empty() ? ordered_json() : ordered_json(c.epsilon_mode);
    meta["gamma_min"] = rational_to_string(c.gamma_min);
    meta["seed"] = c.seed;
    meta["time_ms"] = c.time_ms;
    meta["program_a"] = {{"source", c.program1_src}};
    meta["program_b"] = {{"source", c.program2_src}};
    j["meta"] = std::move(meta);
    return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw CertificateError("certificate must be a JSON object");
    for (const char* field : {"mode", "metric", "epsilon", "degree_d", "degree_D", "f", "uesm",
                              "lesm", "multipliers", "ost", "invariants", "meta"})
        if (!j.contains(field))
            throw CertificateError(std::string("missing top-level field ") + field);

    Certificate c;
    const json& meta = j.at("meta");
    if (!meta.is_object() || !meta.contains("program_a") || !meta.contains("program_b"))
        throw CertificateError("meta must carry program_a and program_b");
    c.program1_src = require_string(meta.at("program_a"), "source", "meta.program_a");
    c.program2_src = require_string(meta.at("program_b"), "source", "meta.program_b");

    Pcfg p1, p2;
    try {
        p1 = lower_to_pcfg(parse_program(c.program1_src));
        p2 = lower_to_pcfg(parse_program(c.program2_src));
    } catch (const ParseError& e) {
        throw CertificateError(std::string("embedded program does not parse: ") + e.what());
    }
    c.p1_names = p1.var_names;
    c.p2_names = p2.var_names;
    c.p1_labels = p1.location_labels;
    c.p2_labels = p2.location_labels;
    c.out_names = p1.out_var_names();

    if (!j.at("mode").is_string()) throw CertificateError("mode must be a string");
    c.mode = j.at("mode").get<std::string>();
    if (c.mode != "equivalence" && c.mode != "similarity")
        throw CertificateError("mode must be equivalence or similarity");

    if (!j.at("metric").is_null()) {
        if (!j.at("metric").is_string()) throw CertificateError("metric must be null or string");
        auto m = metric_from_name(j.at("metric").get<std::string>());
        if (!m.has_value()) throw CertificateError("unknown metric");
        c.metric = m;
    }
    if (!j.at("epsilon").is_null()) {
        if (!j.at("epsilon").is_string())
            throw CertificateError("epsilon must be null or a string rational");
        try {
            c.epsilon = parse_rational(j.at("epsilon").get<std::string>());
        } catch (const ParseError& e) {
            throw CertificateError(std::string("epsilon: ") + e.what());
        }
    }
    if (!j.at("degree_d").is_number_unsigned() || !j.at("degree_D").is_number_unsigned())
        throw CertificateError("degree_d and degree_D must be unsigned integers");
    c.degree_d = j.at("degree_d").get<unsigned>();
    c.degree_D = j.at("degree_D").get<unsigned>();

    c.f = poly_from_json(j.at("f"), c.out_names, "f");
    c.uesm = family_from_json(j.at("uesm"), c.p1_labels, c.p1_names, "uesm");
    c.lesm = family_from_json(j.at("lesm"), c.p2_labels, c.p2_names, "lesm");

    if (!j.at("multipliers").is_array()) throw CertificateError("multipliers must be an array");
    for (const auto& entry : j.at("multipliers")) {
        std::string key = require_string(entry, "key", "multipliers");
        if (!entry.contains("lambda") || !entry.at("lambda").is_array())
            throw CertificateError("multipliers: missing lambda array for " + key);
        std::vector<Rational> lam;
        for (const auto& v : entry.at("lambda")) {
            if (!v.is_string()) throw CertificateError("multipliers: lambda entries are strings");
            try {
                lam.push_back(parse_rational(v.get<std::string>()));
            } catch (const ParseError& e) {
                throw CertificateError("multipliers." + key + ": " + e.what());
            }
        }
        for (const auto& [k, unused] : c.multipliers)
            if (k == key) throw CertificateError("multipliers: duplicate key " + key);
        c.multipliers.push_back({std::move(key), std::move(lam)});
    }

    const json& ost = j.at("ost");
    auto cond = ost_from_name(require_string(ost, "condition", "ost"));
    if (!cond.has_value()) throw CertificateError("ost.condition unknown");
    c.ost_condition = *cond;
    c.ost_eligibility = require_string(ost, "eligibility", "ost");
    if (ost.contains("assumed") && ost.at("assumed").is_array())
        for (const auto& a : ost.at("assumed")) c.ost_assumed.push_back(a.get<std::string>());
    if (ost.contains("bound_c") && !ost.at("bound_c").is_null())
        c.bound_c = require_rational(ost, "bound_c", "ost");
    auto rsm_from = [&](const char* field, const std::vector<std::string>& labels,
                        const std::vector<std::string>& names) -> std::optional<RsmResult> {
        if (!ost.contains(field) || ost.at(field).is_null()) return std::nullopt;
        const json& r = ost.at(field);
        RsmResult res;
        if (!r.contains("degree") || !r.at("degree").is_number_unsigned() ||
            !r.contains("handelman_degree") || !r.at("handelman_degree").is_number_unsigned())
            throw CertificateError(std::string("ost.") + field + ": missing degrees");
        res.degree = r.at("degree").get<unsigned>();
        res.handelman_degree = r.at("handelman_degree").get<unsigned>();
        if (!r.contains("r"))
            throw CertificateError(std::string("ost.") + field + ": missing polynomials");
        res.r = family_from_json(r.at("r"), labels, names, std::string("ost.") + field);
        return res;
    };
    c.rsm1 = rsm_from("rsm_a", c.p1_labels, c.p1_names);
    c.rsm2 = rsm_from("rsm_b", c.p2_labels, c.p2_names);
    if (ost.contains("downgraded") && ost.at("downgraded").is_boolean())
        c.ost_downgraded = ost.at("downgraded").get<bool>();

    const json& invs = j.at("invariants");
    if (!invs.is_object() || !invs.contains("program_a") || !invs.contains("program_b"))
        throw CertificateError("invariants must carry program_a and program_b");
    c.inv1_origin = require_string(invs.at("program_a"), "origin", "invariants.program_a");
    c.inv1_text = require_string(invs.at("program_a"), "text", "invariants.program_a");
    c.inv2_origin = require_string(invs.at("program_b"), "origin", "invariants.program_b");
    c.inv2_text = require_string(invs.at("program_b"), "text", "invariants.program_b");

    c.gamma_min = require_rational(meta, "gamma_min", "meta");
    if (meta.contains("epsilon_mode") && meta.at("epsilon_mode").is_string())
        c.epsilon_mode = meta.at("epsilon_mode").get<std::string>();
    if (meta.contains("seed") && meta.at("seed").is_number_unsigned())
        c.seed = meta.at("seed").get<std::uint64_t>();
    if (meta.contains("time_ms") && meta.at("time_ms").is_number_integer())
        c.time_ms = meta.at("time_ms").get<long>();
    if (meta.contains("created") && meta.at("created").is_string())
        c.created = meta.at("created").get<std::string>();
    return c;
}

VerifyReport verify_certificate(const nlohmann::json& j, const Deadline& deadline) {
    VerifyReport rep;
    Certificate c;
    try {
        c = certificate_from_json(j);
    } catch (const CertificateError& e) {
        rep.fail(e.what());
        return rep;
    }

    Pcfg p1, p2;
    try {
        p1 = lower_to_pcfg(parse_program(c.program1_src));
        p2 = lower_to_pcfg(parse_program(c.program2_src));
        check_output_compatibility(p1, p2);
    } catch (const ParseError& e) {
        rep.fail(std::string("embedded programs: ") + e.what());
        return rep;
    }
    if (!validate_pcfg(p1).empty() || !validate_pcfg(p2).empty()) {
        rep.fail("embedded programs fail structural validation");
        return rep;
    }

    Invariant i1, i2;
    try {
        i1 = parse_invariant_file(c.inv1_text, p1);
        i2 = parse_invariant_file(c.inv2_text, p2);
    } catch (const ParseError& e) {
        rep.fail(std::string("embedded invariants: ") + e.what());
        return rep;
    }
    i1.origin = c.inv1_origin;
    i2.origin = c.inv2_origin;

    if (c.mode == "similarity") {
        if (!c.metric.has_value()) rep.fail("similarity certificate lacks a metric");
        if (!c.epsilon.has_value() || *c.epsilon <= 0)
            rep.fail("similarity certificate needs epsilon > 0");
    } else {
        if (c.metric.has_value()) rep.fail("equivalence certificate must not carry a metric");
        if (c.epsilon.has_value()) rep.fail("equivalence certificate must not carry epsilon");
    }
    if (!rep.ok) return rep;

    ConstraintSet cs;
    SynthTemplates t;
    t.f = TemplatePoly::from_concrete(c.f);
    t.f1 = t.f.embed(p1.num_vars(), p1.out_vars);
    t.f2 = t.f.embed(p2.num_vars(), p2.out_vars);
    for (const auto& p : c.uesm) t.U.push_back(TemplatePoly::from_concrete(p));
    for (const auto& p : c.lesm) t.L.push_back(TemplatePoly::from_concrete(p));

    try {
        collect_uesm_constraints(cs, p1, i1, t.U, t.f1, c.degree_D, deadline);
        collect_lesm_constraints(cs, p2, i2, t.L, t.f2, c.degree_D, deadline);
        if (c.mode == "equivalence") {
            refutation_constraint(cs, t, p1, p2);
        } else {
            SimilaritySpec spec;
            spec.maximize = false;
            spec.fixed_epsilon = *c.epsilon;
            similarity_constraint(cs, t, p1, p2, spec);
            lipschitz_constraints(cs, t.f, *c.metric, p1, i1, p2, i2, c.degree_D, deadline);
        }
    } catch (const std::invalid_argument& e) {
        rep.fail(std::string("constraint regeneration: ") + e.what());
        return rep;
    }

    std::optional<int> c_var;
    std::vector<Entailment> rsm_ents;
    try {
        c_var = ost_constraints(cs, c.ost_condition, t, p1, i1, p2, i2, c.degree_D, deadline);
    } catch (const OstUnavailable& e) {
        rep.fail(std::string("ost regeneration: ") + e.what());
        return rep;
    }
    if (c.ost_condition == OstCondition::C3) {
        if (!c.rsm1.has_value() || !c.rsm2.has_value()) {
            rep.fail("C3 certificate needs ranking evidence for both programs");
            return rep;
        }
        const Pcfg* ps[2] = {&p1, &p2};
        const Invariant* is[2] = {&i1, &i2};
        const RsmResult* rs[2] = {&*c.rsm1, &*c.rsm2};
        for (int i = 0; i < 2; ++i) {
            if (rs[i]->r.size() != ps[i]->num_locations()) {
                rep.fail("ranking family has the wrong number of locations");
                return rep;
            }
            if (!rs[i]->r[ps[i]->l_out].is_zero()) {
                rep.fail("ranking function must vanish at the terminal location");
                return rep;
            }
            std::vector<TemplatePoly> R;
            for (const auto& poly : rs[i]->r) R.push_back(TemplatePoly::from_concrete(poly));
            rsm_entailments(rsm_ents, *ps[i], *is[i], R, rs[i]->handelman_degree,
                            i == 0 ? "rsm:p1:" : "rsm:p2:", deadline);
        }
    }

    std::vector<Rational> assignment(cs.space.size(), Rational(0));
    if (c_var.has_value()) {
        if (!c.bound_c.has_value()) {
            rep.fail("certificate lacks the OST bound C");
            return rep;
        }
        assignment[static_cast<size_t>(*c_var)] = *c.bound_c;
    }

    std::map<std::string, const std::vector<Rational>*> mult;
    for (const auto& [key, lam] : c.multipliers) mult[key] = &lam;

    auto check_entailment = [&](const Entailment& e) {
        auto it = mult.find(e.key);
        if (it == mult.end()) {
            rep.fail("missing multipliers for entailment " + e.key);
            return;
        }
        auto r = exact_recheck(e.premise, e.nvars, e.degree_bound,
                               e.conclusion.instantiate(assignment), *it->second);
        if (!r.ok) rep.fail("entailment " + e.key + ": " + r.detail);
        ++rep.entailments_checked;
    };
    for (const auto& e : cs.entailments) check_entailment(e);
    for (const auto& e : rsm_ents) check_entailment(e);

    for (const auto& r : cs.relationals) {
        Rational v = r.expr.evaluate(assignment);
        bool holds = r.strict ? v > 0 : v >= 0;
        if (!holds)
            rep.fail("relational " + r.key + " evaluates to " + rational_to_string(v));
        ++rep.relationals_checked;
    }
    return rep;
}

}  // namespace eqrefute
