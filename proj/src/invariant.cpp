// SPDX-License-Identifier: Apache-2.0
#include "eqrefute/invariant.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "eqrefute/interp.hpp"
#include "eqrefute/simplex.hpp"

namespace eqrefute {

namespace {

struct Interval {
    std::optional<Rational> lo, hi;

    bool operator==(const Interval&) const = default;
};

struct Box {
    bool bottom = true;
    std::vector<Interval> iv;

    bool operator==(const Box&) const = default;
};

Box point_box(const std::vector<Rational>& x) {
    Box b;
    b.bottom = false;
    for (const Rational& v : x) b.iv.push_back({v, v});
    return b;
}

Interval join_iv(const Interval& a, const Interval& b) {
    Interval r;
    if (a.lo && b.lo) r.lo = std::min(*a.lo, *b.lo);
    if (a.hi && b.hi) r.hi = std::max(*a.hi, *b.hi);
    return r;
}

Box join(const Box& a, const Box& b) {
    if (a.bottom) return b;
    if (b.bottom) return a;
    Box r;
    r.bottom = false;
    for (size_t i = 0; i < a.iv.size(); ++i) r.iv.push_back(join_iv(a.iv[i], b.iv[i]));
    return r;
}

// Unstable bounds jump to infinity; stable ones are kept.
Box widen(const Box& old_box, const Box& new_box) {
    if (old_box.bottom) return new_box;
    if (new_box.bottom) return old_box;
    Box r;
    r.bottom = false;
    for (size_t i = 0; i < old_box.iv.size(); ++i) {
        Interval v;
        const Interval& o = old_box.iv[i];
        const Interval& n = new_box.iv[i];
        if (o.lo && (!n.lo || *n.lo < *o.lo))
            v.lo = std::nullopt;
        else
            v.lo = o.lo;
        if (o.hi && (!n.hi || *n.hi > *o.hi))
            v.hi = std::nullopt;
        else
            v.hi = o.hi;
        r.iv.push_back(v);
    }
    return r;
}

bool contains(const Box& outer, const Box& inner) {
    if (inner.bottom) return true;
    if (outer.bottom) return false;
    for (size_t i = 0; i < outer.iv.size(); ++i) {
        const Interval& o = outer.iv[i];
        const Interval& n = inner.iv[i];
        if (o.lo && (!n.lo || *n.lo < *o.lo)) return false;
        if (o.hi && (!n.hi || *n.hi > *o.hi)) return false;
    }
    return true;
}

Interval add_iv(const Interval& a, const Interval& b) {
    Interval r;
    if (a.lo && b.lo) r.lo = *a.lo + *b.lo;
    if (a.hi && b.hi) r.hi = *a.hi + *b.hi;
    return r;
}

Interval scale_iv(const Interval& a, const Rational& c) {
    if (c == 0) return {Rational(0), Rational(0)};
    Interval r;
    if (c > 0) {
        if (a.lo) r.lo = *a.lo * c;
        if (a.hi) r.hi = *a.hi * c;
    } else {
        if (a.hi) r.lo = *a.hi * c;
        if (a.lo) r.hi = *a.lo * c;
    }
    return r;
}

// Exact product for fully finite operands; top otherwise.
Interval mul_iv(const Interval& a, const Interval& b) {
    if (!a.lo || !a.hi || !b.lo || !b.hi) return {};
    Rational c1 = *a.lo * *b.lo, c2 = *a.lo * *b.hi, c3 = *a.hi * *b.lo,
             c4 = *a.hi * *b.hi;
    return {std::min(std::min(c1, c2), std::min(c3, c4)),
            std::max(std::max(c1, c2), std::max(c3, c4))};
}

Interval eval_poly_iv(const Polynomial& poly, const Box& box) {
    Interval sum{Rational(0), Rational(0)};
    for (const auto& [m, c] : poly.terms()) {
        Interval prod{Rational(1), Rational(1)};
        bool first = true;
        for (size_t i = 0; i < m.exps.size(); ++i) {
            for (unsigned e = 0; e < m.exps[i]; ++e) {
                // Affine terms stay precise on half-bounded intervals.
                prod = first ? box.iv[i] : mul_iv(prod, box.iv[i]);
                first = false;
            }
        }
        sum = add_iv(sum, scale_iv(prod, c));
    }
    return sum;
}

// Tightens box bounds using each atom of the cell; integrality sharpening on
// integer-valued variables. Two passes propagate chained constraints.
Box refine_with_cell(Box box, const Conjunction& cell, const std::vector<bool>& int_valued) {
    if (box.bottom) return box;
    for (int pass = 0; pass < 2; ++pass) {
        for (const LinearAtom& atom : cell) {
            for (size_t j = 0; j < atom.expr.coeffs.size(); ++j) {
                const Rational& cj = atom.expr.coeffs[j];
                if (cj == 0) continue;
                // cj*xj >= -c0 - sum_{i != j} ci*xi; bound the right side from
                // above over the box to get a valid bound on xj.
                Interval rhs{-atom.expr.constant, -atom.expr.constant};
                bool usable = true;
                for (size_t i = 0; i < atom.expr.coeffs.size(); ++i) {
                    if (i == j || atom.expr.coeffs[i] == 0) continue;
                    Interval term = scale_iv(box.iv[i], -atom.expr.coeffs[i]);
                    if (!term.hi) {
                        usable = false;
                        break;
                    }
                    rhs = add_iv(rhs, term);
                }
                if (!usable || !rhs.hi) continue;
                Rational bound = *rhs.hi / cj;
                Interval& tv = box.iv[j];
                if (cj > 0) {
                    Rational lo = bound;
                    if (int_valued[j]) lo = atom.strict ? rational_floor(lo) + 1 : rational_ceil(lo);
                    if (!tv.lo || lo > *tv.lo) tv.lo = lo;
                } else {
                    Rational hi = bound;
                    if (int_valued[j]) hi = atom.strict ? rational_ceil(hi) - 1 : rational_floor(hi);
                    if (!tv.hi || hi < *tv.hi) tv.hi = hi;
                }
                if (tv.lo && tv.hi && *tv.lo > *tv.hi) {
                    box.bottom = true;
                    return box;
                }
            }
        }
    }
    return box;
}

Box apply_update(const Box& box, const UpdateElement& upd) {
    if (box.bottom) return box;
    Box r = box;
    if (const auto* det = std::get_if<UpdateDet>(&upd)) {
        r.iv[det->var] = eval_poly_iv(det->expr, box);
    } else if (const auto* smp = std::get_if<UpdateSample>(&upd)) {
        Interval v;
        if (auto b = support_bounds(smp->dist)) v = {b->first, b->second};
        r.iv[smp->var] = v;
    }
    return r;
}

Conjunction box_to_atoms(const Box& box, size_t nvars) {
    Conjunction atoms;
    if (box.bottom) {
        LinearAtom a;
        a.expr = LinearExpr(nvars);
        a.expr.constant = -1;
        atoms.push_back(a);
        return atoms;
    }
    for (size_t j = 0; j < nvars; ++j) {
        if (box.iv[j].lo) {
            LinearAtom a;
            a.expr = LinearExpr(nvars);
            a.expr.coeffs[j] = 1;
            a.expr.constant = -*box.iv[j].lo;
            atoms.push_back(a);
        }
        if (box.iv[j].hi) {
            LinearAtom a;
            a.expr = LinearExpr(nvars);
            a.expr.coeffs[j] = -1;
            a.expr.constant = *box.iv[j].hi;
            atoms.push_back(a);
        }
    }
    return atoms;
}

// Guard-true self-loops without update never change the state, so dropping
// them from the abstract transformer preserves the reachable-state fixpoint
// while letting descending passes shrink the terminal location.
bool is_stutter(const Transition& t) {
    return t.guard.is_top() && std::holds_alternative<UpdateNone>(t.update) &&
           t.successors.size() == 1 && t.successors[0].first == t.source;
}

struct Analysis {
    const Pcfg& pcfg;
    std::vector<std::vector<size_t>> by_loc;

    explicit Analysis(const Pcfg& p) : pcfg(p), by_loc(p.num_locations()) {
        for (size_t i = 0; i < p.transitions.size(); ++i)
            by_loc[p.transitions[i].source].push_back(i);
    }

    // One full evaluation of the abstract transformer.
    std::vector<Box> round(const std::vector<Box>& state) const {
        std::vector<Box> next(state.size());
        next[pcfg.l_init] = point_box(pcfg.x_init);
        for (const Transition& t : pcfg.transitions) {
            if (is_stutter(t)) continue;
            for (const Conjunction& cell : t.guard.cells) {
                Box refined = refine_with_cell(state[t.source], cell, pcfg.integer_valued);
                if (refined.bottom) continue;
                Box post = apply_update(refined, t.update);
                for (const auto& [dst, pr] : t.successors) {
                    (void)pr;
                    next[dst] = join(next[dst], post);
                }
            }
        }
        return next;
    }

    bool is_postfixpoint(const std::vector<Box>& state) const {
        std::vector<Box> next = round(state);
        for (size_t i = 0; i < state.size(); ++i)
            if (!contains(state[i], next[i])) return false;
        return true;
    }
};

}  // namespace

Invariant trivial_invariant(const Pcfg& pcfg) {
    Invariant inv;
    inv.origin = "trivial";
    inv.locations.assign(pcfg.num_locations(), Conjunction{});
    return inv;
}

Invariant generate_interval_invariants(const Pcfg& pcfg, size_t widen_after) {
    Analysis an(pcfg);
    size_t n = pcfg.num_locations();
    std::vector<Box> state(n);
    state[pcfg.l_init] = point_box(pcfg.x_init);
    std::vector<size_t> joins(n, 0);

    std::deque<size_t> work;
    std::vector<bool> queued(n, false);
    work.push_back(pcfg.l_init);
    queued[pcfg.l_init] = true;

    while (!work.empty()) {
        size_t loc = work.front();
        work.pop_front();
        queued[loc] = false;
        for (size_t ti : an.by_loc[loc]) {
            const Transition& t = pcfg.transitions[ti];
            if (is_stutter(t)) continue;
            for (const Conjunction& cell : t.guard.cells) {
                Box refined = refine_with_cell(state[loc], cell, pcfg.integer_valued);
                if (refined.bottom) continue;
                Box post = apply_update(refined, t.update);
                for (const auto& [dst, pr] : t.successors) {
                    (void)pr;
                    Box joined = join(state[dst], post);
                    if (joined == state[dst]) continue;
                    if (++joins[dst] > widen_after) joined = widen(state[dst], joined);
                    if (joined == state[dst]) continue;
                    state[dst] = std::move(joined);
                    if (!queued[dst]) {
                        work.push_back(dst);
                        queued[dst] = true;
                    }
                }
            }
        }
    }

    // Descending passes recover precision lost to widening along chains up to
    // the graph's depth; keep the descent only if it remains inductive.
    std::vector<Box> narrowed = state;
    for (size_t k = 0; k < n + 2; ++k) narrowed = an.round(narrowed);
    std::vector<Box> chosen;
    if (an.is_postfixpoint(narrowed))
        chosen = std::move(narrowed);
    else if (an.is_postfixpoint(state))
        chosen = std::move(state);
    else
        return trivial_invariant(pcfg);

    Invariant inv;
    inv.origin = "intervals";
    for (const Box& b : chosen) inv.locations.push_back(box_to_atoms(b, pcfg.num_vars()));
    return inv;
}

namespace {

void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

bool parse_rat_token(const std::string& s, size_t& i, Rational& out) {
    skip_ws(s, i);
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    bool digits = false;
    while (i < s.size() && (isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.' || s[i] == '/')) {
        digits = true;
        ++i;
    }
    if (!digits) {
        i = start;
        return false;
    }
    out = parse_rational(s.substr(start, i - start));
    return true;
}

bool parse_name_token(const std::string& s, size_t& i, std::string& out) {
    skip_ws(s, i);
    size_t start = i;
    while (i < s.size() &&
           (isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
    if (i == start) return false;
    out = s.substr(start, i - start);
    return true;
}

}  // namespace

Invariant parse_invariant_file(const std::string& text, const Pcfg& pcfg) {
    Invariant inv;
    inv.origin = "file";
    inv.locations.assign(pcfg.num_locations(), Conjunction{});

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        size_t i = 0;
        skip_ws(line, i);
        if (i >= line.size()) continue;
        auto fail = [&](const std::string& what) -> ParseError {
            return ParseError("invariant line " + std::to_string(lineno) + ": " + what);
        };
        std::string kw;
        if (!parse_name_token(line, i, kw) || kw != "loc") throw fail("expected 'loc'");
        std::string label;
        if (!parse_name_token(line, i, label)) throw fail("expected location label");
        auto loc = pcfg.location_by_label(label);
        if (!loc) throw fail("unknown location label '" + label + "'");
        skip_ws(line, i);
        if (i >= line.size() || line[i] != ':') throw fail("expected ':'");
        ++i;

        LinearAtom atom;
        atom.expr = LinearExpr(pcfg.num_vars());
        bool first = true;
        while (true) {
            skip_ws(line, i);
            if (i + 1 < line.size() && line[i] == '>' && line[i + 1] == '=') break;
            Rational sign = 1;
            if (!first || (i < line.size() && (line[i] == '+' || line[i] == '-'))) {
                if (i >= line.size() || (line[i] != '+' && line[i] != '-'))
                    throw fail("expected '+' or '-' between terms");
                if (line[i] == '-') sign = -1;
                ++i;
            }
            first = false;
            skip_ws(line, i);
            Rational coeff = 1;
            bool have_coeff = parse_rat_token(line, i, coeff);
            skip_ws(line, i);
            if (i < line.size() && line[i] == '*') {
                if (!have_coeff) throw fail("expected coefficient before '*'");
                ++i;
                std::string var;
                if (!parse_name_token(line, i, var)) throw fail("expected variable after '*'");
                auto vi = std::find(pcfg.var_names.begin(), pcfg.var_names.end(), var);
                if (vi == pcfg.var_names.end()) throw fail("unknown variable '" + var + "'");
                atom.expr.coeffs[static_cast<size_t>(vi - pcfg.var_names.begin())] +=
                    sign * coeff;
            } else if (have_coeff) {
                atom.expr.constant += sign * coeff;
            } else {
                std::string var;
                if (!parse_name_token(line, i, var)) throw fail("expected term");
                auto vi = std::find(pcfg.var_names.begin(), pcfg.var_names.end(), var);
                if (vi == pcfg.var_names.end()) throw fail("unknown variable '" + var + "'");
                atom.expr.coeffs[static_cast<size_t>(vi - pcfg.var_names.begin())] += sign;
            }
        }
        i += 2;
        Rational zero;
        if (!parse_rat_token(line, i, zero) || zero != 0) throw fail("expected '>= 0'");
        skip_ws(line, i);
        if (i < line.size()) throw fail("trailing characters");
        inv.locations[*loc].push_back(std::move(atom));
    }
    return inv;
}

std::string emit_invariant_file(const Invariant& inv, const Pcfg& pcfg) {
    std::ostringstream out;
    for (size_t loc = 0; loc < inv.locations.size(); ++loc) {
        for (const LinearAtom& atom : inv.locations[loc]) {
            out << "loc " << pcfg.location_labels[loc] << ": "
                << rational_to_string(atom.expr.constant);
            for (size_t j = 0; j < atom.expr.coeffs.size(); ++j) {
                const Rational& c = atom.expr.coeffs[j];
                if (c == 0) continue;
                if (c < 0)
                    out << " - " << rational_to_string(-c);
                else
                    out << " + " << rational_to_string(c);
                out << "*" << pcfg.var_names[j];
            }
            out << " >= 0\n";
        }
    }
    return out.str();
}

namespace {

std::string render_state(const Pcfg& pcfg, size_t loc, const std::vector<double>& x) {
    std::ostringstream os;
    os << "at " << pcfg.location_labels[loc] << ": (";
    for (size_t i = 0; i < x.size(); ++i)
        os << (i ? ", " : "") << pcfg.var_names[i] << "=" << x[i];
    os << ")";
    return os.str();
}

// Integrality cut for the escape search: e > 0 over integral data means
// e >= 1. Every integral solution is kept, so no real escape is lost, while
// fractional-only witnesses between integers are suppressed. Non-integral
// atoms pass through unchanged (strictness preserved).
void cut_to_integral(Conjunction& atoms, const std::vector<bool>& int_flags) {
    for (LinearAtom& atom : atoms) {
        if (!atom.strict || atom.expr.is_constant()) continue;
        bool integral = is_integer(atom.expr.constant);
        for (size_t i = 0; integral && i < atom.expr.coeffs.size(); ++i) {
            if (atom.expr.coeffs[i] == 0) continue;
            if (!is_integer(atom.expr.coeffs[i]) || i >= int_flags.size() || !int_flags[i])
                integral = false;
        }
        if (!integral) continue;
        atom.strict = false;
        atom.expr.constant -= 1;
    }
}

}  // namespace

InductivenessReport check_inductive(const Pcfg& pcfg, const Invariant& inv,
                                    uint64_t n_samples, uint64_t seed,
                                    uint64_t max_steps) {
    InductivenessReport rep;
    constexpr size_t kMaxListed = 10;

    auto holds_double = [&](size_t loc, const std::vector<double>& x) {
        for (const LinearAtom& a : inv.at(loc))
            if (!a.holds_double(x)) return false;
        return true;
    };

    // Initial state must be covered, checked exactly.
    bool init_ok = true;
    for (const LinearAtom& a : inv.at(pcfg.l_init))
        if (!a.holds(pcfg.x_init)) init_ok = false;
    if (!init_ok) {
        rep.ok = false;
        rep.counterexamples.push_back("initial state escapes the invariant at l_init");
    }

    CompiledPcfg cp(pcfg);
    RandomSource rng(seed);
    for (uint64_t run = 0; run < n_samples; ++run) {
        std::vector<double> x = cp.x_init();
        size_t loc = cp.l_init();
        uint64_t steps = 0;
        while (true) {
            if (!holds_double(loc, x)) {
                rep.ok = false;
                if (rep.counterexamples.size() < kMaxListed)
                    rep.counterexamples.push_back(render_state(pcfg, loc, x));
            }
            if (loc == cp.l_out() || steps >= max_steps) break;
            loc = cp.step(loc, x, rng);
            ++steps;
        }
        ++rep.runs;
    }

    // Exact one-step closure: a state in I(src) ∧ cell whose successor can
    // leave I(dst) refutes inductiveness. Affine and sampled updates only.
    for (const Transition& t : pcfg.transitions) {
        const auto* det = std::get_if<UpdateDet>(&t.update);
        const auto* smp = std::get_if<UpdateSample>(&t.update);
        if (det && det->expr.total_degree() > 1) continue;
        size_t nvars = pcfg.num_vars();
        for (const Conjunction& cell : t.guard.cells) {
            for (const auto& [dst, pr] : t.successors) {
                (void)pr;
                for (const LinearAtom& post : inv.at(dst)) {
                    Conjunction sys;
                    for (const LinearAtom& a : inv.at(t.source)) sys.push_back(a);
                    for (const LinearAtom& a : cell) sys.push_back(a);
                    size_t total_vars = nvars;
                    LinearAtom moved;
                    if (det) {
                        // post composed with the affine update.
                        LinearExpr e(nvars);
                        e.constant = post.expr.constant;
                        for (size_t i = 0; i < nvars; ++i) {
                            if (i == det->var) continue;
                            e.coeffs[i] = post.expr.coeffs[i];
                        }
                        const Rational& cj = post.expr.coeffs[det->var];
                        if (cj != 0) {
                            for (const auto& [m, c] : det->expr.terms()) {
                                unsigned deg = 0;
                                size_t which = 0;
                                for (size_t i = 0; i < m.exps.size(); ++i) {
                                    deg += m.exps[i];
                                    if (m.exps[i]) which = i;
                                }
                                if (deg == 0)
                                    e.constant += cj * c;
                                else
                                    e.coeffs[which] += cj * c;
                            }
                        }
                        moved = LinearAtom{e, post.strict};
                    } else if (smp) {
                        // Fresh variable for the sampled value, constrained to
                        // the support hull.
                        total_vars = nvars + 1;
                        LinearExpr e(total_vars);
                        e.constant = post.expr.constant;
                        for (size_t i = 0; i < nvars; ++i)
                            if (i != smp->var) e.coeffs[i] = post.expr.coeffs[i];
                        e.coeffs[nvars] = post.expr.coeffs[smp->var];
                        moved = LinearAtom{e, post.strict};
                        for (Conjunction::iterator it = sys.begin(); it != sys.end(); ++it)
                            it->expr.coeffs.resize(total_vars, Rational(0));
                        if (auto b = support_bounds(smp->dist)) {
                            LinearAtom lo, hi;
                            lo.expr = LinearExpr(total_vars);
                            lo.expr.coeffs[nvars] = 1;
                            lo.expr.constant = -b->first;
                            hi.expr = LinearExpr(total_vars);
                            hi.expr.coeffs[nvars] = -1;
                            hi.expr.constant = b->second;
                            sys.push_back(lo);
                            sys.push_back(hi);
                        }
                    } else {
                        moved = post;
                    }
                    sys.push_back(moved.negated());
                    std::vector<bool> flags = pcfg.integer_valued;
                    if (smp) flags.push_back(is_integer_valued(smp->dist));
                    cut_to_integral(sys, flags);
                    if (auto w = feasible_point(sys, total_vars)) {
                        rep.ok = false;
                        if (rep.counterexamples.size() < kMaxListed) {
                            std::ostringstream os;
                            os << "one-step escape from " << pcfg.location_labels[t.source]
                               << " to " << pcfg.location_labels[dst] << " at (";
                            for (size_t i = 0; i < nvars; ++i)
                                os << (i ? ", " : "") << pcfg.var_names[i] << "="
                                   << rational_to_string((*w)[i]);
                            os << ")";
                            rep.counterexamples.push_back(os.str());
                        }
                    }
                }
            }
        }
    }
    return rep;
}

std::pair<std::optional<Rational>, std::optional<Rational>> conjunction_var_bounds(
    const Conjunction& atoms, size_t nvars, size_t var) {
    std::pair<std::optional<Rational>, std::optional<Rational>> result;
    for (int dir = 0; dir < 2; ++dir) {
        SimplexProblem lp;
        lp.maximize = dir == 1;
        for (size_t i = 0; i < nvars; ++i) lp.add_var(false, i == var ? Rational(1) : Rational(0));
        for (const LinearAtom& a : atoms) {
            SimplexRow row;
            for (size_t i = 0; i < nvars; ++i)
                if (a.expr.coeffs[i] != 0)
                    row.terms.push_back({static_cast<int>(i), a.expr.coeffs[i]});
            row.op = RowOp::Ge;
            row.rhs = -a.expr.constant;
            lp.rows.push_back(std::move(row));
        }
        SimplexResult res = solve_simplex(lp, Deadline::never());
        if (res.status == SimplexStatus::Optimal) {
            if (dir == 0)
                result.first = res.objective_value;
            else
                result.second = res.objective_value;
        } else if (res.status == SimplexStatus::Infeasible) {
            // Empty region: every bound holds vacuously.
            result.first = Rational(0);
            result.second = Rational(0);
            return result;
        }
    }
    return result;
}

bool check_bounded_output_range(const Pcfg& pcfg, const Invariant& inv) {
    for (size_t v : pcfg.out_vars) {
        auto [lo, hi] = conjunction_var_bounds(inv.at(pcfg.l_out), pcfg.num_vars(), v);
        if (!lo || !hi) return false;
    }
    return true;
}

bool check_bounded_updates(const Pcfg& pcfg, const Invariant& inv) {
    for (const Transition& t : pcfg.transitions) {
        if (const auto* det = std::get_if<UpdateDet>(&t.update)) {
            bool shift = false;
            {
                // x := x + c keeps changes bounded unconditionally.
                Rational c = 0;
                bool ok = true, saw = false;
                for (const auto& [m, co] : det->expr.terms()) {
                    unsigned deg = 0;
                    for (unsigned e : m.exps) deg += e;
                    if (deg == 0)
                        c = co;
                    else if (deg == 1 && m.exps[det->var] == 1 && co == 1)
                        saw = true;
                    else
                        ok = false;
                }
                shift = ok && saw;
                (void)c;
            }
            if (shift) continue;
            if (det->expr.total_degree() == 0) {
                // x := c: bounded change only when the invariant bounds x here.
                auto [lo, hi] =
                    conjunction_var_bounds(inv.at(t.source), pcfg.num_vars(), det->var);
                if (lo && hi) continue;
            }
            return false;
        }
        if (const auto* smp = std::get_if<UpdateSample>(&t.update))
            if (!support_bounds(smp->dist)) return false;
    }
    return true;
}

}  // namespace eqrefute
