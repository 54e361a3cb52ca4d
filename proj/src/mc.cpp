// SPDX-License-Identifier: Apache-2.0
#include "eqrefute/mc.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "eqrefute/interp.hpp"

namespace eqrefute {

namespace {

struct WorkerStats {
    size_t count = 0;
    size_t censored = 0;
    double mean = 0;
    double m2 = 0;

    void add(double v) {
        ++count;
        double d = v - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (v - mean);
    }

    // Chan et al. pairwise combination; order-independent up to fp rounding.
    void merge(const WorkerStats& o) {
        if (o.count == 0) {
            censored += o.censored;
            return;
        }
        if (count == 0) {
            *this = o;
            return;
        }
        double d = o.mean - mean;
        size_t n = count + o.count;
        double nm = mean + d * static_cast<double>(o.count) / static_cast<double>(n);
        m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) /
                         static_cast<double>(n);
        mean = nm;
        count = n;
        censored += o.censored;
    }
};

}  // namespace

McEstimate mc_expectation(const Pcfg& p, const Polynomial& f, size_t n, std::uint64_t seed,
                          std::uint64_t max_steps,
                          std::optional<std::pair<double, double>> f_range, unsigned workers) {
    if (n < 1000) throw std::invalid_argument("mc_expectation needs at least 1000 samples");
    if (f.nvars() != p.out_vars.size())
        throw std::invalid_argument("f must range over the output variables");
    if (workers == 0) workers = 1;
    CompiledPcfg cp(p);

    std::vector<WorkerStats> stats(workers);
    auto body = [&](unsigned w) {
        RandomSource rng(seed + w);
        size_t share = n / workers + (w < n % workers ? 1 : 0);
        for (size_t i = 0; i < share; ++i) {
            RunResult r = run_to_termination(cp, rng, max_steps);
            if (!r.terminated) {
                ++stats[w].censored;
                continue;
            }
            stats[w].add(f.evaluate_double(r.output));
        }
    };
    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::thread> ts;
        for (unsigned w = 0; w < workers; ++w) ts.emplace_back(body, w);
        for (auto& t : ts) t.join();
    }
    WorkerStats total;
    for (const auto& s : stats) total.merge(s);

    McEstimate est;
    est.samples = total.count + total.censored;
    est.censored = total.censored;
    est.mean = total.mean;
    if (total.count > 1) {
        if (f_range.has_value()) {
            double width = f_range->second - f_range->first;
            // P(|mean - mu| >= t) <= 2 exp(-2 n t^2 / width^2) = 0.01
            est.half_width =
                width * std::sqrt(std::log(200.0) / (2.0 * static_cast<double>(total.count)));
            est.interval = "hoeffding";
        } else {
            double var = total.m2 / static_cast<double>(total.count - 1);
            est.half_width = kZ99 * std::sqrt(var / static_cast<double>(total.count));
            est.interval = "clt";
        }
    }
    return est;
}

namespace {

// [lo, hi]^e for finite rational intervals.
std::pair<Rational, Rational> interval_pow(const Rational& lo, const Rational& hi, unsigned e) {
    if (e == 0) return {Rational(1), Rational(1)};
    Rational plo = rational_pow(lo, e), phi = rational_pow(hi, e);
    if (e % 2 == 1) return {plo, phi};
    if (lo >= 0) return {plo, phi};
    if (hi <= 0) return {phi, plo};
    return {Rational(0), std::max(plo, phi)};
}

}  // namespace

std::optional<std::pair<Rational, Rational>> output_range(const Polynomial& f, const Pcfg& p,
                                                          const Invariant& inv) {
    size_t m = p.out_vars.size();
    std::vector<std::pair<Rational, Rational>> box(m);
    for (size_t j = 0; j < m; ++j) {
        if (f.degree_in(j) == 0) {
            box[j] = {Rational(0), Rational(0)};
            continue;
        }
        auto [lo, hi] = conjunction_var_bounds(inv.at(p.l_out), p.num_vars(), p.out_vars[j]);
        if (!lo.has_value() || !hi.has_value()) return std::nullopt;
        box[j] = {*lo, *hi};
    }
    Rational lo = 0, hi = 0;
    for (const auto& [mono, c] : f.terms()) {
        Rational tlo = c, thi = c;
        for (size_t j = 0; j < m; ++j) {
            if (mono.exps[j] == 0) continue;
            auto [plo, phi] = interval_pow(box[j].first, box[j].second, mono.exps[j]);
            Rational cands[4] = {tlo * plo, tlo * phi, thi * plo, thi * phi};
            Rational nlo = cands[0], nhi = cands[0];
            for (const auto& v : cands) {
                nlo = std::min(nlo, v);
                nhi = std::max(nhi, v);
            }
            tlo = nlo;
            thi = nhi;
        }
        lo += tlo;
        hi += thi;
    }
    return std::make_pair(lo, hi);
}

McReport mc_consistency(const Certificate& cert, const Pcfg& p1, const Pcfg& p2, size_t n,
                        std::uint64_t seed, std::uint64_t max_steps, unsigned workers) {
    McReport rep;
    auto out_point = [](const Pcfg& p) {
        std::vector<Rational> pt;
        for (size_t v : p.out_vars) pt.push_back(p.x_init[v]);
        return pt;
    };
    Rational u_exact = cert.uesm.at(p1.l_init).evaluate(p1.x_init) +
                       cert.f.evaluate(out_point(p1));
    Rational l_exact = cert.lesm.at(p2.l_init).evaluate(p2.x_init) +
                       cert.f.evaluate(out_point(p2));
    rep.u_bound = to_double(u_exact);
    rep.l_bound = to_double(l_exact);

    Invariant i1, i2;
    try {
        i1 = parse_invariant_file(cert.inv1_text, p1);
        i2 = parse_invariant_file(cert.inv2_text, p2);
    } catch (const ParseError&) {
        rep.verdict = McVerdict::Inconclusive;
        rep.notes.push_back("embedded invariants do not parse");
        return rep;
    }

    auto range1 = output_range(cert.f, p1, i1);
    auto range2 = output_range(cert.f, p2, i2);
    auto widen = [](const std::optional<std::pair<Rational, Rational>>& r)
        -> std::optional<std::pair<double, double>> {
        if (!r.has_value()) return std::nullopt;
        return std::make_pair(to_double(r->first), to_double(r->second));
    };
    rep.e1 = mc_expectation(p1, cert.f, n, seed, max_steps, widen(range1), workers);
    rep.e2 = mc_expectation(p2, cert.f, n, seed, max_steps, widen(range2), workers);

    if (rep.e1.inconclusive() || rep.e2.inconclusive()) {
        rep.verdict = McVerdict::Inconclusive;
        rep.notes.push_back("step budget censored more than 1 in 10^4 runs");
        return rep;
    }

    bool ok = true;
    if (rep.e1.mean > rep.u_bound + rep.e1.half_width) {
        ok = false;
        rep.notes.push_back("sampled E1[f] exceeds the UESM bound beyond slack");
    }
    if (rep.e2.mean < rep.l_bound - rep.e2.half_width) {
        ok = false;
        rep.notes.push_back("sampled E2[f] falls below the LESM bound beyond slack");
    }
    if (cert.mode == "similarity" && cert.epsilon.has_value()) {
        double eps = to_double(*cert.epsilon);
        if (rep.e2.mean - rep.e1.mean < eps - rep.e1.half_width - rep.e2.half_width) {
            ok = false;
            rep.notes.push_back("sampled gap does not reach epsilon within slack");
        }
    }
    rep.verdict = ok ? McVerdict::Consistent : McVerdict::Inconsistent;
    return rep;
}

}  // namespace eqrefute
