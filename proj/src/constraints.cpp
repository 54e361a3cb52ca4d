// SPDX-License-Identifier: Apache-2.0
#include "eqrefute/constraints.hpp"

#include <algorithm>
#include <variant>

#include "eqrefute/handelman.hpp"

namespace eqrefute {

std::string metric_name(Metric m) {
    switch (m) {
        case Metric::L1: return "l1";
        case Metric::L2: return "l2";
        case Metric::Discrete: return "discrete";
        case Metric::Uniform: return "uniform";
    }
    return "l1";
}

std::optional<Metric> metric_from_name(const std::string& s) {
    if (s == "l1") return Metric::L1;
    if (s == "l2") return Metric::L2;
    if (s == "discrete") return Metric::Discrete;
    if (s == "uniform") return Metric::Uniform;
    return std::nullopt;
}

std::string ost_name(OstCondition c) {
    switch (c) {
        case OstCondition::C1: return "c1";
        case OstCondition::C2: return "c2";
        case OstCondition::C3: return "c3";
        case OstCondition::C4: return "c4";
    }
    return "c2";
}

std::optional<OstCondition> ost_from_name(const std::string& s) {
    if (s == "c1") return OstCondition::C1;
    if (s == "c2") return OstCondition::C2;
    if (s == "c3") return OstCondition::C3;
    if (s == "c4") return OstCondition::C4;
    return std::nullopt;
}

SynthTemplates make_templates(TemplateSpace& space, const Pcfg& p1, const Pcfg& p2, unsigned d) {
    SynthTemplates t;
    size_t m = p1.out_vars.size();
    t.f = TemplatePoly::fresh(space, "f", m, d);
    t.f1 = t.f.embed(p1.num_vars(), p1.out_vars);
    t.f2 = t.f.embed(p2.num_vars(), p2.out_vars);
    for (size_t l = 0; l < p1.num_locations(); ++l)
        t.U.push_back(TemplatePoly::fresh(space, "u_" + p1.location_labels[l], p1.num_vars(), d));
    for (size_t l = 0; l < p2.num_locations(); ++l)
        t.L.push_back(TemplatePoly::fresh(space, "l_" + p2.location_labels[l], p2.num_vars(), d));
    return t;
}

Conjunction close_premise(const Conjunction& atoms, const std::vector<bool>& int_flags) {
    Conjunction out;
    for (const auto& atom : atoms) {
        if (atom.expr.is_constant()) {
            bool truth = atom.strict ? atom.expr.constant > 0 : atom.expr.constant >= 0;
            if (truth) continue;
            LinearAtom f{LinearExpr(atom.expr.nvars()), false};
            f.expr.constant = -1;
            out.push_back(f);
            continue;
        }
        if (!atom.strict) {
            out.push_back(atom);
            continue;
        }
        bool integral = is_integer(atom.expr.constant);
        for (size_t i = 0; integral && i < atom.expr.coeffs.size(); ++i) {
            if (atom.expr.coeffs[i] == 0) continue;
            if (!is_integer(atom.expr.coeffs[i]) || i >= int_flags.size() || !int_flags[i])
                integral = false;
        }
        LinearAtom closed{atom.expr, false};
        // e > 0 over integral values means e >= 1; otherwise relax to e >= 0.
        if (integral) closed.expr.constant -= 1;
        out.push_back(closed);
    }
    return out;
}

TemplatePoly pre_expectation(const std::vector<TemplatePoly>& q, const Transition& t,
                             const TemplatePoly& g) {
    TemplatePoly acc(g.nvars());
    for (const auto& [succ, pr] : t.successors) {
        TemplatePoly term = q.at(succ) + g;
        if (const auto* det = std::get_if<UpdateDet>(&t.update))
            term = term.substitute(det->var, det->expr);
        else if (const auto* smp = std::get_if<UpdateSample>(&t.update))
            term = term.expectation_substitute(smp->var, smp->dist);
        acc += term.scaled(pr);
    }
    return acc;
}

namespace {

// Appends premise => conclusion >= 0 unless the premise is exactly
// infeasible, in which case the entailment holds vacuously and adding it
// would only constrain the templates spuriously.
void push_entailment(std::vector<Entailment>& out, std::string key, size_t nvars,
                     std::vector<std::string> names, Conjunction premise, TemplatePoly concl,
                     unsigned handelman_degree) {
    if (!feasible_point(premise, nvars).has_value()) return;
    Entailment e;
    e.key = std::move(key);
    e.nvars = nvars;
    e.var_names = std::move(names);
    e.degree_bound = std::max(handelman_degree, concl.total_degree());
    e.premise = std::move(premise);
    e.conclusion = std::move(concl);
    out.push_back(std::move(e));
}

Conjunction concat(const Conjunction& a, const Conjunction& b) {
    Conjunction r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

std::vector<Rational> out_point(const Pcfg& p) {
    std::vector<Rational> pt;
    for (size_t v : p.out_vars) pt.push_back(p.x_init[v]);
    return pt;
}

void collect_esm(ConstraintSet& cs, const Pcfg& p, const Invariant& inv,
                 const std::vector<TemplatePoly>& fam, const TemplatePoly& f_prog, bool upper,
                 unsigned handelman_degree, const Deadline& deadline) {
    (void)deadline;
    size_t n = p.num_vars();
    const std::string tag = upper ? "uesm" : "lesm";
    Conjunction at_out = close_premise(inv.at(p.l_out), p.integer_valued);
    push_entailment(cs.entailments, tag + ":out:pos", n, p.var_names, at_out, fam[p.l_out],
                    handelman_degree);
    push_entailment(cs.entailments, tag + ":out:neg", n, p.var_names, at_out, -fam[p.l_out],
                    handelman_degree);
    for (size_t k = 0; k < p.transitions.size(); ++k) {
        const Transition& t = p.transitions[k];
        if (t.source == p.l_out) continue;
        TemplatePoly pre = pre_expectation(fam, t, f_prog);
        TemplatePoly here = fam[t.source] + f_prog;
        TemplatePoly concl = upper ? here - pre : pre - here;
        for (size_t j = 0; j < t.guard.cells.size(); ++j) {
            Conjunction premise = close_premise(concat(inv.at(t.source), t.guard.cells[j]),
                                                p.integer_valued);
            push_entailment(cs.entailments,
                            tag + ":t" + std::to_string(k) + ":c" + std::to_string(j), n,
                            p.var_names, std::move(premise), concl, handelman_degree);
        }
    }
}

}  // namespace

void collect_uesm_constraints(ConstraintSet& cs, const Pcfg& p, const Invariant& inv,
                              const std::vector<TemplatePoly>& U, const TemplatePoly& f_prog,
                              unsigned handelman_degree, const Deadline& deadline) {
    collect_esm(cs, p, inv, U, f_prog, true, handelman_degree, deadline);
}

void collect_lesm_constraints(ConstraintSet& cs, const Pcfg& p, const Invariant& inv,
                              const std::vector<TemplatePoly>& L, const TemplatePoly& f_prog,
                              unsigned handelman_degree, const Deadline& deadline) {
    collect_esm(cs, p, inv, L, f_prog, false, handelman_degree, deadline);
}

void refutation_constraint(ConstraintSet& cs, const SynthTemplates& t, const Pcfg& p1,
                           const Pcfg& p2) {
    AffineForm u_side = t.U[p1.l_init].evaluate_at(p1.x_init) + t.f.evaluate_at(out_point(p1));
    AffineForm l_side = t.L[p2.l_init].evaluate_at(p2.x_init) + t.f.evaluate_at(out_point(p2));
    cs.relationals.push_back({"refute:init", l_side - u_side, true});
}

std::optional<int> similarity_constraint(ConstraintSet& cs, const SynthTemplates& t,
                                         const Pcfg& p1, const Pcfg& p2,
                                         const SimilaritySpec& spec) {
    AffineForm u_side = t.U[p1.l_init].evaluate_at(p1.x_init) + t.f.evaluate_at(out_point(p1));
    AffineForm l_side = t.L[p2.l_init].evaluate_at(p2.x_init) + t.f.evaluate_at(out_point(p2));
    AffineForm gap = l_side - u_side;
    if (!spec.maximize) {
        if (spec.fixed_epsilon <= 0)
            throw std::invalid_argument("similarity mode requires epsilon > 0");
        gap.constant -= spec.fixed_epsilon;
        cs.relationals.push_back({"similar:init", gap, false});
        return std::nullopt;
    }
    int eps = cs.space.fresh("eps");
    AffineForm eps_form = AffineForm::var(eps);
    cs.relationals.push_back({"similar:init", gap - eps_form, false});
    AffineForm floor = eps_form;
    floor.constant -= spec.gamma_min;
    cs.relationals.push_back({"eps:min", floor, false});
    cs.objective = eps;
    return eps;
}

namespace {

// Invariant atoms at l_out whose support lies entirely inside the output
// variables, rewritten over output slots. Dropping the others only weakens
// the premise, which keeps the encoding sound.
Conjunction out_invariant_atoms(const Pcfg& p, const Invariant& inv) {
    size_t m = p.out_vars.size();
    Conjunction out;
    for (const auto& atom : inv.at(p.l_out)) {
        bool supported = true;
        for (size_t i = 0; supported && i < atom.expr.coeffs.size(); ++i) {
            if (atom.expr.coeffs[i] == 0) continue;
            if (std::find(p.out_vars.begin(), p.out_vars.end(), i) == p.out_vars.end())
                supported = false;
        }
        if (!supported) continue;
        LinearAtom slot{LinearExpr(m), atom.strict};
        slot.expr.constant = atom.expr.constant;
        for (size_t j = 0; j < m; ++j) slot.expr.coeffs[j] = atom.expr.coeffs[p.out_vars[j]];
        out.push_back(slot);
    }
    return out;
}

LinearAtom shift_atom(const LinearAtom& a, size_t nvars, size_t offset) {
    LinearAtom r{LinearExpr(nvars), a.strict};
    r.expr.constant = a.expr.constant;
    for (size_t j = 0; j < a.expr.coeffs.size(); ++j) r.expr.coeffs[offset + j] = a.expr.coeffs[j];
    return r;
}

}  // namespace

void lipschitz_constraints(ConstraintSet& cs, const TemplatePoly& f, Metric metric,
                           const Pcfg& p1, const Invariant& inv1, const Pcfg& p2,
                           const Invariant& inv2, unsigned handelman_degree,
                           const Deadline& deadline) {
    (void)deadline;
    size_t m = p1.out_vars.size();
    if (metric == Metric::L2 && f.total_degree() > 1)
        throw std::invalid_argument("l2 metric is supported for degree-1 output functions only");
    bool has_a = metric != Metric::Discrete;
    bool has_cap = metric == Metric::Uniform || metric == Metric::L2;
    size_t nvars = 2 * m + (has_a ? m : 0) + (has_cap ? 1 : 0);
    size_t cap_index = 3 * m;

    std::vector<std::string> names;
    auto base = p1.out_var_names();
    for (const auto& s : base) names.push_back(s);
    for (const auto& s : base) names.push_back(s + "'");
    if (has_a)
        for (const auto& s : base) names.push_back("a_" + s);
    if (has_cap) names.push_back("A");

    std::vector<size_t> xmap(m), ymap(m);
    for (size_t j = 0; j < m; ++j) {
        xmap[j] = j;
        ymap[j] = m + j;
    }
    TemplatePoly delta_f = f.embed(nvars, xmap) - f.embed(nvars, ymap);

    TemplatePoly concl(nvars);
    if (metric == Metric::L1) {
        Polynomial sum_a(nvars);
        for (size_t j = 0; j < m; ++j) sum_a += Polynomial::variable(nvars, 2 * m + j);
        concl = TemplatePoly::from_concrete(sum_a) - delta_f;
    } else if (metric == Metric::Discrete) {
        concl = TemplatePoly::from_concrete(Polynomial::constant(nvars, Rational(1))) - delta_f;
    } else {
        concl = TemplatePoly::from_concrete(Polynomial::variable(nvars, cap_index)) - delta_f;
    }

    const Pcfg* progs[2] = {&p1, &p2};
    const Invariant* invs[2] = {&inv1, &inv2};
    for (int i = 0; i < 2; ++i) {
        Conjunction premise;
        Conjunction inv_atoms = out_invariant_atoms(*progs[i], *invs[i]);
        for (const auto& a : inv_atoms) premise.push_back(shift_atom(a, nvars, 0));
        for (const auto& a : inv_atoms) premise.push_back(shift_atom(a, nvars, m));
        if (has_a) {
            for (size_t j = 0; j < m; ++j) {
                LinearAtom lo{LinearExpr(nvars), false}, hi{LinearExpr(nvars), false};
                // a_j - (x_j - y_j) >= 0 and a_j + (x_j - y_j) >= 0
                lo.expr.coeffs[2 * m + j] = 1;
                lo.expr.coeffs[j] = -1;
                lo.expr.coeffs[m + j] = 1;
                hi.expr.coeffs[2 * m + j] = 1;
                hi.expr.coeffs[j] = 1;
                hi.expr.coeffs[m + j] = -1;
                premise.push_back(lo);
                premise.push_back(hi);
            }
        }
        if (has_cap) {
            for (size_t j = 0; j < m; ++j) {
                LinearAtom cap{LinearExpr(nvars), false};
                cap.expr.coeffs[cap_index] = 1;
                cap.expr.coeffs[2 * m + j] = -1;
                premise.push_back(cap);
            }
        }
        premise = close_premise(premise, {});
        push_entailment(cs.entailments, std::string("lip:p") + (i == 0 ? "1" : "2"), nvars,
                        names, std::move(premise), concl, handelman_degree);
    }
}

namespace {

void ost_c2_program(ConstraintSet& cs, const Pcfg& p, const Invariant& inv,
                    const std::vector<TemplatePoly>& fam, const TemplatePoly& f_prog,
                    const std::string& tag, int c_var, unsigned handelman_degree) {
    size_t n = p.num_vars();
    TemplatePoly c_poly(n);
    c_poly.add_term(Monomial(n), AffineForm::var(c_var));
    for (size_t l = 0; l < p.num_locations(); ++l) {
        Conjunction premise = close_premise(inv.at(l), p.integer_valued);
        TemplatePoly eta_f = fam[l] + f_prog;
        std::string base = "ost:c2:" + tag + ":" + p.location_labels[l];
        push_entailment(cs.entailments, base + ":ub", n, p.var_names, premise, c_poly - eta_f,
                        handelman_degree);
        push_entailment(cs.entailments, base + ":lb", n, p.var_names, premise, c_poly + eta_f,
                        handelman_degree);
    }
}

void ost_c3_program(ConstraintSet& cs, const Pcfg& p, const Invariant& inv,
                    const std::vector<TemplatePoly>& fam, const TemplatePoly& f_prog,
                    const std::string& tag, int c_var, unsigned handelman_degree) {
    size_t n = p.num_vars();
    TemplatePoly c_poly(n);
    c_poly.add_term(Monomial(n), AffineForm::var(c_var));
    std::vector<size_t> idmap(n);
    for (size_t i = 0; i < n; ++i) idmap[i] = i;
    for (size_t k = 0; k < p.transitions.size(); ++k) {
        const Transition& t = p.transitions[k];
        if (t.source == p.l_out) continue;
        TemplatePoly here = fam[t.source] + f_prog;
        for (size_t j = 0; j < t.guard.cells.size(); ++j) {
            Conjunction premise = close_premise(concat(inv.at(t.source), t.guard.cells[j]),
                                                p.integer_valued);
            for (size_t s = 0; s < t.successors.size(); ++s) {
                TemplatePoly next = fam[t.successors[s].first] + f_prog;
                std::string base = "ost:c3:" + tag + ":t" + std::to_string(k) + ":c" +
                                   std::to_string(j) + ":s" + std::to_string(s);
                auto emit = [&](const std::string& key, const Conjunction& prem, size_t nv,
                                const std::vector<std::string>& nm, const TemplatePoly& diff) {
                    TemplatePoly bound = c_poly.embed(nv, idmap);
                    push_entailment(cs.entailments, key + ":ub", nv, nm, prem, bound - diff,
                                    handelman_degree);
                    push_entailment(cs.entailments, key + ":lb", nv, nm, prem, bound + diff,
                                    handelman_degree);
                };
                if (const auto* det = std::get_if<UpdateDet>(&t.update)) {
                    TemplatePoly diff = here - next.substitute(det->var, det->expr);
                    emit(base, premise, n, p.var_names, diff);
                } else if (const auto* smp = std::get_if<UpdateSample>(&t.update)) {
                    auto pts = support_points(smp->dist);
                    if (pts.has_value()) {
                        for (size_t v = 0; v < pts->size(); ++v) {
                            TemplatePoly diff =
                                here - next.substitute(smp->var,
                                                       Polynomial::constant(n, (*pts)[v]));
                            emit(base + ":v" + std::to_string(v), premise, n, p.var_names, diff);
                        }
                    } else {
                        auto sb = support_bounds(smp->dist);
                        if (!sb.has_value())
                            throw OstUnavailable("C3 unavailable; use C2");
                        size_t ne = n + 1;
                        std::vector<size_t> emap = idmap;
                        Conjunction prem;
                        for (const auto& a : premise) prem.push_back(shift_atom(a, ne, 0));
                        LinearAtom lo{LinearExpr(ne), false}, hi{LinearExpr(ne), false};
                        lo.expr.coeffs[n] = 1;
                        lo.expr.constant = -sb->first;
                        hi.expr.coeffs[n] = -1;
                        hi.expr.constant = sb->second;
                        prem.push_back(lo);
                        prem.push_back(hi);
                        std::vector<std::string> nm = p.var_names;
                        nm.push_back("w");
                        TemplatePoly diff =
                            here.embed(ne, emap) -
                            next.embed(ne, emap).substitute(smp->var, Polynomial::variable(ne, n));
                        emit(base, prem, ne, nm, diff);
                    }
                } else {
                    TemplatePoly diff = here - next;
                    emit(base, premise, n, p.var_names, diff);
                }
            }
        }
    }
}

}  // namespace

std::optional<int> ost_constraints(ConstraintSet& cs, OstCondition cond,
                                   const SynthTemplates& t, const Pcfg& p1,
                                   const Invariant& inv1, const Pcfg& p2, const Invariant& inv2,
                                   unsigned handelman_degree, const Deadline& deadline) {
    (void)deadline;
    if (cond == OstCondition::C1 || cond == OstCondition::C4) return std::nullopt;
    // The unbounded-support check must run before any state is altered so a
    // caller can downgrade to C2 against an untouched ConstraintSet.
    if (cond == OstCondition::C3) {
        for (const Pcfg* p : {&p1, &p2})
            for (const auto& tr : p->transitions)
                if (const auto* smp = std::get_if<UpdateSample>(&tr.update))
                    if (!support_points(smp->dist).has_value() &&
                        !support_bounds(smp->dist).has_value())
                        throw OstUnavailable("C3 unavailable; use C2");
    }
    int c_var = cs.space.fresh("C");
    cs.relationals.push_back({"ost:posC", AffineForm::var(c_var), true});
    if (cond == OstCondition::C2) {
        ost_c2_program(cs, p1, inv1, t.U, t.f1, "p1", c_var, handelman_degree);
        ost_c2_program(cs, p2, inv2, t.L, t.f2, "p2", c_var, handelman_degree);
    } else {
        ost_c3_program(cs, p1, inv1, t.U, t.f1, "p1", c_var, handelman_degree);
        ost_c3_program(cs, p2, inv2, t.L, t.f2, "p2", c_var, handelman_degree);
    }
    return c_var;
}

void rsm_entailments(std::vector<Entailment>& out, const Pcfg& p, const Invariant& inv,
                     const std::vector<TemplatePoly>& R, unsigned handelman_degree,
                     const std::string& key_prefix, const Deadline& deadline) {
    (void)deadline;
    size_t n = p.num_vars();
    for (size_t l = 0; l < p.num_locations(); ++l) {
        if (l == p.l_out) continue;
        Conjunction premise = close_premise(inv.at(l), p.integer_valued);
        push_entailment(out, key_prefix + "nonneg:" + p.location_labels[l], n, p.var_names,
                        premise, R[l], handelman_degree);
    }
    TemplatePoly zero(n);
    TemplatePoly one = TemplatePoly::from_concrete(Polynomial::constant(n, Rational(1)));
    for (size_t k = 0; k < p.transitions.size(); ++k) {
        const Transition& t = p.transitions[k];
        if (t.source == p.l_out) continue;
        TemplatePoly concl = R[t.source] - one - pre_expectation(R, t, zero);
        for (size_t j = 0; j < t.guard.cells.size(); ++j) {
            Conjunction premise = close_premise(concat(inv.at(t.source), t.guard.cells[j]),
                                                p.integer_valued);
            push_entailment(out,
                            key_prefix + "dec:t" + std::to_string(k) + ":c" + std::to_string(j),
                            n, p.var_names, std::move(premise), concl, handelman_degree);
        }
    }
}

RsmStatus synthesize_rsm(const Pcfg& p, const Invariant& inv, unsigned d,
                         const Deadline& deadline, RsmResult& out) {
    ConstraintSet cs;
    std::vector<TemplatePoly> R;
    for (size_t l = 0; l < p.num_locations(); ++l) {
        if (l == p.l_out)
            R.push_back(TemplatePoly(p.num_vars()));
        else
            R.push_back(TemplatePoly::fresh(cs.space, "r_" + p.location_labels[l], p.num_vars(),
                                            d));
    }
    unsigned D = d + 1;
    rsm_entailments(cs.entailments, p, inv, R, D, "", deadline);
    LpSolution sol = solve_constraints(cs, Rational(1) / 1000000, Rational(1), deadline);
    if (sol.status == LpStatus::Timeout) return RsmStatus::Timeout;
    if (sol.status != LpStatus::Optimal && sol.status != LpStatus::Feasible)
        return RsmStatus::NotFound;
    out.r.clear();
    for (const auto& rt : R) out.r.push_back(rt.instantiate(sol.assignment));
    out.multipliers.clear();
    for (const auto& e : cs.entailments) {
        auto it = sol.multipliers.find(e.key);
        if (it == sol.multipliers.end()) return RsmStatus::NotFound;
        auto rep = exact_recheck(e.premise, e.nvars, e.degree_bound,
                                 e.conclusion.instantiate(sol.assignment), it->second);
        if (!rep.ok) return RsmStatus::NotFound;
        out.multipliers.emplace(e.key, it->second);
    }
    out.degree = d;
    out.handelman_degree = D;
    return RsmStatus::Found;
}

OstSelection select_ost(const Pcfg& p1, const Invariant& inv1, const Pcfg& p2,
                        const Invariant& inv2, const std::string& requested,
                        unsigned rsm_degree_max, const Deadline& deadline) {
    OstSelection sel;
    bool sb1 = check_statically_bounded(p1);
    bool sb2 = check_statically_bounded(p2);
    bool bu1 = check_bounded_updates(p1, inv1);
    bool bu2 = check_bounded_updates(p2, inv2);

    auto try_rsms = [&]() -> bool {
        for (unsigned d = 1; d <= rsm_degree_max; ++d) {
            RsmResult r1, r2;
            RsmStatus s1 = synthesize_rsm(p1, inv1, d, deadline, r1);
            if (s1 == RsmStatus::Timeout) return false;
            if (s1 != RsmStatus::Found) continue;
            RsmStatus s2 = synthesize_rsm(p2, inv2, d, deadline, r2);
            if (s2 == RsmStatus::Timeout) return false;
            if (s2 != RsmStatus::Found) continue;
            sel.rsm1 = std::move(r1);
            sel.rsm2 = std::move(r2);
            return true;
        }
        return false;
    };

    if (requested != "auto") {
        auto cond = ost_from_name(requested);
        if (!cond.has_value())
            throw std::invalid_argument("unknown OST condition: " + requested);
        sel.condition = *cond;
        sel.rationale = "user override";
        switch (*cond) {
            case OstCondition::C1:
                if (!sb1 || !sb2)
                    sel.assumed.push_back(
                        "statically bounded run length (not established structurally)");
                break;
            case OstCondition::C4:
                if (!bu1 || !bu2)
                    sel.assumed.push_back(
                        "bounded one-step updates (not established structurally)");
                break;
            case OstCondition::C3:
                if (!try_rsms())
                    throw OstUnavailable(
                        "C3 requires a ranking supermartingale for both programs; none found");
                sel.assumed.push_back("finite expected absolute one-step sums");
                break;
            case OstCondition::C2:
                sel.assumed.push_back("finite expected absolute one-step sums");
                break;
        }
        return sel;
    }

    if (sb1 && sb2) {
        sel.condition = OstCondition::C1;
        sel.rationale = "both programs have statically bounded run length";
        return sel;
    }
    if (bu1 && bu2) {
        sel.condition = OstCondition::C4;
        sel.rationale = "both programs have bounded one-step updates";
        return sel;
    }
    if (try_rsms()) {
        sel.condition = OstCondition::C3;
        sel.rationale = "ranking supermartingales certify bounded expected run length";
        sel.assumed.push_back("finite expected absolute one-step sums");
        return sel;
    }
    sel.condition = OstCondition::C2;
    sel.rationale = "fallback; bounded expectation shapes enforced through the invariants";
    sel.assumed.push_back("finite expected absolute one-step sums");
    return sel;
}

}  // namespace eqrefute
