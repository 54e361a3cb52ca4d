// SPDX-License-Identifier: Apache-2.0
#include "eqrefute/interp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eqrefute/ast.hpp"

namespace eqrefute {

uint64_t RandomSource::below(uint64_t n) {
    if (n == 0) throw std::logic_error("below(0)");
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t k;
    do {
        k = eng_();
    } while (k >= limit);
    return k % n;
}

double RandomSource::sample(const DistributionSpec& dist) {
    switch (dist.kind) {
        case DistKind::Bernoulli:
            return uniform01() < to_double(dist.a) ? 1.0 : 0.0;
        case DistKind::Uniform: {
            double a = to_double(dist.a), b = to_double(dist.b);
            return a + uniform01() * (b - a);
        }
        case DistKind::UniformInt: {
            double a = to_double(dist.a), b = to_double(dist.b);
            double v = a + std::floor(uniform01() * (b - a + 1));
            return v > b ? b : v;
        }
        case DistKind::Normal: {
            // Box-Muller; always two engine words.
            double u1 = uniform01(), u2 = uniform01();
            if (u1 <= 0) u1 = 0x1.0p-53;
            double z = std::sqrt(-2.0 * std::log(u1)) *
                       std::cos(2.0 * std::numbers::pi * u2);
            return to_double(dist.a) + std::sqrt(to_double(dist.b)) * z;
        }
        case DistKind::Discrete: {
            double u = uniform01(), cum = 0.0;
            for (const auto& [value, prob] : dist.entries) {
                cum += to_double(prob);
                if (u < cum) return to_double(value);
            }
            return to_double(dist.entries.back().first);
        }
    }
    throw std::logic_error("unknown distribution kind");
}

Rational RandomSource::sample_exact(const DistributionSpec& dist) {
    switch (dist.kind) {
        case DistKind::Bernoulli: {
            Rational u(Integer(eng_()), Integer(1));
            u /= Rational(Integer(1) << 64);
            u.canonicalize();
            return u < dist.a ? Rational(1) : Rational(0);
        }
        case DistKind::UniformInt: {
            Integer lo = dist.a.get_num(), hi = dist.b.get_num();
            Integer range = hi - lo + 1;
            uint64_t n = range.get_ui();
            return Rational(lo + Integer(below(n)));
        }
        case DistKind::Discrete: {
            Rational u(Integer(eng_()), Integer(1));
            u /= Rational(Integer(1) << 64);
            u.canonicalize();
            Rational cum = 0;
            for (const auto& [value, prob] : dist.entries) {
                cum += prob;
                if (u < cum) return value;
            }
            return dist.entries.back().first;
        }
        default:
            throw std::runtime_error(
                "exact sampling supports bernoulli, uniformint and discrete only");
    }
}

CompiledPcfg::CompiledPcfg(const Pcfg& p)
    : nvars_(p.num_vars()),
      l_init_(p.l_init),
      l_out_(p.l_out),
      out_vars_(p.out_vars),
      by_loc_(p.num_locations()) {
    for (const Rational& r : p.x_init) x_init_.push_back(to_double(r));
    for (const Transition& t : p.transitions) {
        CTransition ct;
        for (const Conjunction& cell : t.guard.cells) {
            std::vector<Atom> catoms;
            for (const LinearAtom& a : cell) {
                Atom ca;
                ca.constant = to_double(a.expr.constant);
                ca.strict = a.strict;
                for (size_t i = 0; i < a.expr.coeffs.size(); ++i)
                    if (a.expr.coeffs[i] != 0)
                        ca.coeffs.push_back({static_cast<uint32_t>(i),
                                             to_double(a.expr.coeffs[i])});
                catoms.push_back(std::move(ca));
            }
            ct.cells.push_back(std::move(catoms));
        }
        double cum = 0.0;
        for (const auto& [dst, pr] : t.successors) {
            cum += to_double(pr);
            ct.succ_locs.push_back(dst);
            ct.succ_cum.push_back(cum);
        }
        ct.succ_cum.back() = 1.0;
        if (const auto* det = std::get_if<UpdateDet>(&t.update)) {
            ct.update_kind = 1;
            ct.var = static_cast<uint32_t>(det->var);
            for (const auto& [m, c] : det->expr.terms()) {
                Term term;
                term.coeff = to_double(c);
                for (size_t i = 0; i < m.exps.size(); ++i)
                    if (m.exps[i] > 0)
                        term.pows.push_back({static_cast<uint32_t>(i), m.exps[i]});
                ct.poly.push_back(std::move(term));
            }
        } else if (const auto* smp = std::get_if<UpdateSample>(&t.update)) {
            ct.update_kind = 2;
            ct.var = static_cast<uint32_t>(smp->var);
            ct.dist = smp->dist;
        } else {
            ct.update_kind = 0;
        }
        by_loc_[t.source].push_back(std::move(ct));
    }
}

bool CompiledPcfg::guard_holds(const CTransition& t, const std::vector<double>& x) const {
    for (const auto& cell : t.cells) {
        bool all = true;
        for (const Atom& a : cell) {
            double v = a.constant;
            for (const auto& [var, c] : a.coeffs) v += c * x[var];
            if (a.strict ? !(v > 0) : !(v >= 0)) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

size_t CompiledPcfg::step(size_t loc, std::vector<double>& x, RandomSource& rng) const {
    const CTransition* enabled = nullptr;
    for (const CTransition& t : by_loc_[loc]) {
        if (!guard_holds(t, x)) continue;
        if (enabled) throw std::logic_error("several transitions enabled at a state");
        enabled = &t;
    }
    if (!enabled) throw std::logic_error("no transition enabled at a state");

    size_t next = enabled->succ_locs[0];
    if (enabled->succ_locs.size() > 1) {
        double u = rng.uniform01();
        size_t k = 0;
        while (k + 1 < enabled->succ_cum.size() && u >= enabled->succ_cum[k]) ++k;
        next = enabled->succ_locs[k];
    }
    if (enabled->update_kind == 1) {
        double v = 0.0;
        for (const auto& term : enabled->poly) {
            double m = term.coeff;
            for (const auto& [var, e] : term.pows) {
                double base = x[var];
                for (uint32_t i = 0; i < e; ++i) m *= base;
            }
            v += m;
        }
        x[enabled->var] = v;
    } else if (enabled->update_kind == 2) {
        x[enabled->var] = rng.sample(enabled->dist);
    }
    return next;
}

RunResult run_to_termination(const CompiledPcfg& pcfg, RandomSource& rng,
                             uint64_t max_steps) {
    RunResult r;
    std::vector<double> x = pcfg.x_init();
    size_t loc = pcfg.l_init();
    while (loc != pcfg.l_out()) {
        if (r.steps >= max_steps) return r;
        loc = pcfg.step(loc, x, rng);
        ++r.steps;
    }
    r.terminated = true;
    for (size_t v : pcfg.out_vars()) r.output.push_back(x[v]);
    return r;
}

ExactRunResult run_exact(const Pcfg& pcfg, RandomSource& rng, uint64_t max_steps) {
    ExactRunResult r;
    std::vector<Rational> x = pcfg.x_init;
    size_t loc = pcfg.l_init;
    auto by_loc = std::vector<std::vector<size_t>>(pcfg.num_locations());
    for (size_t i = 0; i < pcfg.transitions.size(); ++i)
        by_loc[pcfg.transitions[i].source].push_back(i);
    while (loc != pcfg.l_out) {
        if (r.steps >= max_steps) return r;
        const Transition* enabled = nullptr;
        for (size_t ti : by_loc[loc]) {
            if (!pcfg.transitions[ti].guard.holds(x)) continue;
            if (enabled) throw std::logic_error("several transitions enabled at a state");
            enabled = &pcfg.transitions[ti];
        }
        if (!enabled) throw std::logic_error("no transition enabled at a state");
        size_t next = enabled->successors[0].first;
        if (enabled->successors.size() > 1) {
            Rational u(Integer(rng.raw()), Integer(1));
            u /= Rational(Integer(1) << 64);
            u.canonicalize();
            Rational cum = 0;
            for (const auto& [dst, pr] : enabled->successors) {
                cum += pr;
                next = dst;
                if (u < cum) break;
            }
        }
        if (const auto* det = std::get_if<UpdateDet>(&enabled->update)) {
            x[det->var] = det->expr.evaluate(x);
        } else if (const auto* smp = std::get_if<UpdateSample>(&enabled->update)) {
            x[smp->var] = rng.sample_exact(smp->dist);
        }
        loc = next;
        ++r.steps;
    }
    r.terminated = true;
    for (size_t v : pcfg.out_vars) r.output.push_back(x[v]);
    return r;
}

namespace {

struct AstRunner {
    const ProgramAst& prog;
    RandomSource& rng;
    uint64_t max_steps;
    uint64_t steps = 0;
    std::vector<double> x;

    bool exec(const std::vector<Stmt>& stmts) {
        for (const Stmt& s : stmts) {
            switch (s.kind) {
                case StmtKind::Assign:
                    if (!tick()) return false;
                    x[s.var] = s.expr.evaluate_double(x);
                    break;
                case StmtKind::Sample:
                    if (!tick()) return false;
                    x[s.var] = rng.sample(s.dist);
                    break;
                case StmtKind::IfProb: {
                    if (!tick()) return false;
                    // The lowering merges the branch successors when both
                    // bodies are empty, so no draw happens there either.
                    bool merged = s.then_branch.empty() && s.else_branch.empty();
                    bool take_then = true;
                    if (s.prob == 0)
                        take_then = false;
                    else if (s.prob != 1 && !merged)
                        take_then = rng.uniform01() < to_double(s.prob);
                    if (take_then) {
                        if (!exec(s.then_branch)) return false;
                    } else {
                        // Mirrors the extra else-entry location of the lowering.
                        if (!s.else_branch.empty() && !tick()) return false;
                        if (!exec(s.else_branch)) return false;
                    }
                    break;
                }
                case StmtKind::IfPred: {
                    if (!tick()) return false;
                    if (s.pred.holds_double(x)) {
                        if (!exec(s.then_branch)) return false;
                    } else {
                        if (!s.else_branch.empty() && !tick()) return false;
                        if (!exec(s.else_branch)) return false;
                    }
                    break;
                }
                case StmtKind::While:
                    while (true) {
                        if (!tick()) return false;
                        if (!s.pred.holds_double(x)) break;
                        if (!exec(s.body)) return false;
                    }
                    break;
                case StmtKind::Return:
                    break;
            }
        }
        return true;
    }

    bool tick() { return steps++ < max_steps; }
};

}  // namespace

RunResult run_ast_program(const ProgramAst& prog, RandomSource& rng, uint64_t max_steps) {
    AstRunner runner{prog, rng, max_steps, 0, std::vector<double>(prog.vars.size(), 0.0)};
    for (const auto& [i, c] : prog.initial_assignments) runner.x[i] = to_double(c);
    size_t skip = leading_constant_prefix(prog);
    std::vector<Stmt> body(prog.stmts.begin() + static_cast<long>(skip), prog.stmts.end());
    RunResult r;
    if (!runner.exec(body)) {
        r.steps = runner.steps;
        return r;
    }
    r.terminated = true;
    r.steps = runner.steps;
    for (size_t v : prog.return_vars) r.output.push_back(runner.x[v]);
    return r;
}

}  // namespace eqrefute
