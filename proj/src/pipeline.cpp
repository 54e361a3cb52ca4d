// SPDX-License-Identifier: Apache-2.0
#include "eqrefute/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "eqrefute/ast.hpp"
#include "eqrefute/certificate.hpp"
#include "eqrefute/constraints.hpp"
#include "eqrefute/handelman.hpp"
#include "eqrefute/invariant.hpp"
#include "eqrefute/lowering.hpp"
#include "eqrefute/mc.hpp"

namespace eqrefute {

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string now_utc() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

long elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count());
}

struct LoadedProgram {
    std::string src;
    Pcfg pcfg;
};

}  // namespace

std::string verdict_line(const RunOutcome& o, const RunConfig& cfg) {
    std::ostringstream os;
    os << "VERDICT " << o.verdict << " mode=" << cfg.mode << " epsilon="
       << (o.epsilon.has_value() ? rational_to_string(*o.epsilon) : std::string("-"))
       << " degree=" << o.degree << " time_ms=" << o.time_ms;
    return os.str();
}

RunOutcome run_pipeline(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    RunOutcome out;
    auto fail = [&](int code, std::string msg) {
        out.exit_code = code;
        out.verdict = "unknown";
        out.diagnostics.push_back(std::move(msg));
        out.time_ms = elapsed_ms(t0);
        return out;
    };

    Deadline dl = cfg.timeout_seconds > 0 ? Deadline::in_seconds(cfg.timeout_seconds)
                                          : Deadline::never();

    if (cfg.mode != "equivalence" && cfg.mode != "similarity")
        return fail(kExitPrecondition, "mode must be equivalence or similarity");
    if (cfg.degree_min < 1 || cfg.degree_min > cfg.degree_max)
        return fail(kExitPrecondition, "degree range is empty");
    std::optional<Metric> metric;
    bool similarity = cfg.mode == "similarity";
    if (similarity) {
        metric = metric_from_name(cfg.metric);
        if (!metric.has_value())
            return fail(kExitPrecondition, "unknown metric: " + cfg.metric);
        if (cfg.maximize == cfg.epsilon.has_value())
            return fail(kExitPrecondition,
                        "similarity mode needs exactly one of --epsilon and --maximize");
        if (cfg.epsilon.has_value() && *cfg.epsilon <= 0)
            return fail(kExitPrecondition, "epsilon must be positive");
    }

    // Front end.
    LoadedProgram progs[2];
    const std::string* paths[2] = {&cfg.program_a, &cfg.program_b};
    const std::optional<std::string>* inline_src[2] = {&cfg.source_a, &cfg.source_b};
    for (int i = 0; i < 2; ++i) {
        if (inline_src[i]->has_value()) {
            progs[i].src = **inline_src[i];
        } else {
            auto text = read_file(*paths[i]);
            if (!text.has_value())
                return fail(kExitPrecondition, "cannot read program file " + *paths[i]);
            progs[i].src = *text;
        }
        try {
            progs[i].pcfg = lower_to_pcfg(parse_program(progs[i].src));
        } catch (const ParseError& e) {
            return fail(kExitPrecondition,
                        std::string("program ") + (i == 0 ? "a" : "b") + ": " + e.what());
        }
        auto issues = validate_pcfg(progs[i].pcfg);
        if (!issues.empty())
            return fail(kExitPrecondition, std::string("program ") + (i == 0 ? "a" : "b") +
                                               ": " + issues.front().message);
    }
    Pcfg& p1 = progs[0].pcfg;
    Pcfg& p2 = progs[1].pcfg;
    try {
        check_output_compatibility(p1, p2);
    } catch (const ParseError& e) {
        return fail(kExitPrecondition, e.what());
    }

    // Invariants: load and gate on inductiveness, or generate sound intervals.
    Invariant invs[2];
    const std::string* inv_paths[2] = {&cfg.invariants_a, &cfg.invariants_b};
    for (int i = 0; i < 2; ++i) {
        Pcfg& p = progs[i].pcfg;
        if (!inv_paths[i]->empty()) {
            auto text = read_file(*inv_paths[i]);
            if (!text.has_value())
                return fail(kExitPrecondition, "cannot read invariant file " + *inv_paths[i]);
            try {
                invs[i] = parse_invariant_file(*text, p);
            } catch (const ParseError& e) {
                return fail(kExitPrecondition, *inv_paths[i] + ": " + e.what());
            }
            auto rep = check_inductive(p, invs[i], 2000, cfg.seed, cfg.max_steps);
            if (!rep.ok) {
                std::string msg = "invariant file " + *inv_paths[i] + " is not inductive";
                if (!rep.counterexamples.empty()) msg += ": " + rep.counterexamples.front();
                return fail(kExitPrecondition, msg);
            }
        } else {
            invs[i] = generate_interval_invariants(p);
        }
    }

    // Lp similarity needs finite first moments; bounded terminal ranges give
    // them outright.
    if (similarity && *metric != Metric::Discrete) {
        for (int i = 0; i < 2; ++i) {
            if (!check_bounded_output_range(progs[i].pcfg, invs[i]))
                return fail(kExitPrecondition,
                            std::string("program ") + (i == 0 ? "a" : "b") +
                                ": output range unbounded at the terminal location; finite "
                                "first moments not established for an Lp metric");
        }
    }

    unsigned degree_max = cfg.degree_max;
    if (similarity && *metric == Metric::L2 && degree_max > 1) {
        degree_max = 1;
        out.diagnostics.push_back(
            "l2 metric caps the template degree at 1; higher degrees skipped");
    }

    // OST condition, shared by both programs.
    OstSelection sel;
    try {
        sel = select_ost(p1, invs[0], p2, invs[1], cfg.ost, 2, dl);
    } catch (const OstUnavailable& e) {
        return fail(kExitUnknown, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(kExitPrecondition, e.what());
    }

    for (unsigned d = cfg.degree_min; d <= degree_max; ++d) {
        if (dl.expired()) {
            out.degree = d;
            return fail(kExitTimeout, "wall-clock timeout during the degree ladder");
        }
        out.degree = d;
        unsigned D = cfg.handelman_degree.value_or(d + 1);

        ConstraintSet cs;
        SynthTemplates t = make_templates(cs.space, p1, p2, d);
        std::optional<int> eps_var;
        std::optional<int> c_var;
        try {
            collect_uesm_constraints(cs, p1, invs[0], t.U, t.f1, D, dl);
            collect_lesm_constraints(cs, p2, invs[1], t.L, t.f2, D, dl);
            if (similarity) {
                SimilaritySpec spec;
                spec.maximize = cfg.maximize;
                if (cfg.epsilon.has_value()) spec.fixed_epsilon = *cfg.epsilon;
                spec.gamma_min = cfg.gamma_min;
                eps_var = similarity_constraint(cs, t, p1, p2, spec);
                lipschitz_constraints(cs, t.f, *metric, p1, invs[0], p2, invs[1], D, dl);
            } else {
                refutation_constraint(cs, t, p1, p2);
            }
            try {
                c_var = ost_constraints(cs, sel.condition, t, p1, invs[0], p2, invs[1], D, dl);
            } catch (const OstUnavailable& e) {
                // C3 cannot be encoded (unbounded sampling support); C2 keeps
                // soundness at the cost of extra boundedness entailments.
                out.diagnostics.push_back(std::string(e.what()) +
                                          "; downgrading to C2 for both programs");
                sel.condition = OstCondition::C2;
                sel.downgraded = true;
                sel.rsm1.reset();
                sel.rsm2.reset();
                c_var = ost_constraints(cs, sel.condition, t, p1, invs[0], p2, invs[1], D, dl);
            }
        } catch (const std::length_error& e) {
            out.diagnostics.push_back("degree " + std::to_string(d) + ": " + e.what());
            continue;
        }

        if (!cfg.emit_lp_path.empty()) {
            LpLayout layout = build_lp(cs, cfg.gamma_min, Rational(1));
            std::ofstream lp(cfg.emit_lp_path);
            lp << lp_to_string(cs, layout);
        }

        LpSolution sol = solve_constraints(cs, cfg.gamma_min, Rational(1), dl);
        if (sol.status == LpStatus::Timeout)
            return fail(kExitTimeout, "LP solve hit the wall-clock timeout");
        if (sol.status == LpStatus::Infeasible) {
            out.diagnostics.push_back("degree " + std::to_string(d) + ": LP infeasible");
            continue;
        }

        // Exact post-solve audit; the solver is exact, so failures here are
        // internal errors and the degree is treated as unusable.
        bool audit_ok = true;
        for (const auto& e : cs.entailments) {
            auto it = sol.multipliers.find(e.key);
            if (it == sol.multipliers.end()) {
                audit_ok = false;
                break;
            }
            auto rep = exact_recheck(e.premise, e.nvars, e.degree_bound,
                                     e.conclusion.instantiate(sol.assignment), it->second);
            if (!rep.ok) {
                out.diagnostics.push_back("audit failed for " + e.key + ": " + rep.detail);
                audit_ok = false;
                break;
            }
        }
        for (const auto& r : cs.relationals) {
            Rational v = r.expr.evaluate(sol.assignment);
            if (r.strict ? v <= 0 : v < 0) {
                out.diagnostics.push_back("audit failed for relational " + r.key);
                audit_ok = false;
            }
        }
        if (!audit_ok) continue;

        // Assemble the certificate.
        Certificate cert;
        cert.mode = cfg.mode;
        cert.metric = metric;
        if (similarity) {
            if (cfg.maximize)
                cert.epsilon = sol.assignment.at(static_cast<size_t>(*eps_var));
            else
                cert.epsilon = *cfg.epsilon;
            cert.epsilon_mode = cfg.maximize ? "maximize" : "fixed";
        }
        cert.degree_d = d;
        cert.degree_D = D;
        cert.f = t.f.instantiate(sol.assignment);
        for (const auto& u : t.U) cert.uesm.push_back(u.instantiate(sol.assignment));
        for (const auto& l : t.L) cert.lesm.push_back(l.instantiate(sol.assignment));
        for (const auto& e : cs.entailments)
            cert.multipliers.push_back({e.key, sol.multipliers.at(e.key)});
        if (sel.condition == OstCondition::C3 && sel.rsm1.has_value() && sel.rsm2.has_value()) {
            for (const auto& [key, lam] : sel.rsm1->multipliers)
                cert.multipliers.push_back({"rsm:p1:" + key, lam});
            for (const auto& [key, lam] : sel.rsm2->multipliers)
                cert.multipliers.push_back({"rsm:p2:" + key, lam});
            cert.rsm1 = sel.rsm1;
            cert.rsm2 = sel.rsm2;
        }
        cert.ost_condition = sel.condition;
        cert.ost_eligibility = sel.rationale;
        cert.ost_assumed = sel.assumed;
        cert.ost_downgraded = sel.downgraded;
        if (c_var.has_value()) cert.bound_c = sol.assignment.at(static_cast<size_t>(*c_var));
        cert.inv1_origin = invs[0].origin;
        cert.inv2_origin = invs[1].origin;
        cert.inv1_text = emit_invariant_file(invs[0], p1);
        cert.inv2_text = emit_invariant_file(invs[1], p2);
        cert.program1_src = progs[0].src;
        cert.program2_src = progs[1].src;
        cert.gamma_min = cfg.gamma_min;
        cert.seed = cfg.seed;
        cert.created = now_utc();
        cert.out_names = p1.out_var_names();
        cert.p1_names = p1.var_names;
        cert.p2_names = p2.var_names;
        cert.p1_labels = p1.location_labels;
        cert.p2_labels = p2.location_labels;
        cert.time_ms = elapsed_ms(t0);

        nlohmann::ordered_json cj = certificate_to_json(cert);

        if (cfg.verify == "exact" || cfg.verify == "both") {
            VerifyReport rep = verify_certificate(cj, dl);
            if (!rep.ok) {
                for (const auto& e : rep.errors)
                    out.diagnostics.push_back("verification: " + e);
                return fail(kExitUnknown, "emitted certificate failed exact verification");
            }
        }
        if (cfg.verify == "sample" || cfg.verify == "both") {
            McReport rep = mc_consistency(cert, p1, p2, cfg.mc_samples, cfg.seed, cfg.max_steps);
            if (rep.verdict == McVerdict::Inconsistent) {
                for (const auto& n : rep.notes) out.diagnostics.push_back("mc: " + n);
                return fail(kExitUnknown, "certificate is statistically inconsistent");
            }
            if (rep.verdict == McVerdict::Inconclusive)
                for (const auto& n : rep.notes)
                    out.diagnostics.push_back("mc inconclusive: " + n);
        }

        if (!cfg.out_path.empty()) {
            std::ofstream of(cfg.out_path);
            if (!of) return fail(kExitPrecondition, "cannot write " + cfg.out_path);
            of << cj.dump(2) << "\n";
        }

        out.exit_code = kExitRefuted;
        out.verdict = "refuted";
        out.epsilon = cert.epsilon;
        out.degree = d;
        out.time_ms = elapsed_ms(t0);
        out.certificate = std::move(cj);
        return out;
    }

    out.diagnostics.push_back("no refutation found up to degree " + std::to_string(degree_max));
    out.exit_code = kExitUnknown;
    out.verdict = "unknown";
    out.time_ms = elapsed_ms(t0);
    return out;
}

}  // namespace eqrefute
