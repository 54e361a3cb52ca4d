// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqrefute/invariant.hpp"
#include "eqrefute/pcfg.hpp"
#include "eqrefute/template_poly.hpp"

namespace eqrefute {

// Output-space metric used by the similarity refutation encodings.
enum class Metric { L1, L2, Discrete, Uniform };

std::string metric_name(Metric m);
std::optional<Metric> metric_from_name(const std::string& s);

// Optional-stopping side condition imposed on both programs.
enum class OstCondition { C1, C2, C3, C4 };

std::string ost_name(OstCondition c);
std::optional<OstCondition> ost_from_name(const std::string& s);

// Raised when a requested OST condition cannot be encoded for the given
// programs (for example C3 with normal sampling).
struct OstUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Synthesis templates. f ranges over the shared output universe; per-program
// copies are pre-embedded into each program's full variable universe.
struct SynthTemplates {
    TemplatePoly f;
    TemplatePoly f1, f2;
    std::vector<TemplatePoly> U;
    std::vector<TemplatePoly> L;
};

// Fresh degree-d templates: f over V_out, one expectation shape per location
// of each program. Allocation order (f, then U by location, then L) is fixed
// so template variable ids are reproducible.
SynthTemplates make_templates(TemplateSpace& space, const Pcfg& p1, const Pcfg& p2, unsigned d);

// Non-strict closure of a premise conjunction. Strict atoms over integer
// variables with integer coefficients tighten (e > 0 becomes e - 1 >= 0);
// other strict atoms relax to e >= 0. Constant-true atoms are removed.
// int_flags may be shorter than the atom universe; missing entries are false.
Conjunction close_premise(const Conjunction& atoms, const std::vector<bool>& int_flags);

// Σ_{(ℓ',pr) in τ.successors} pr * E[q[ℓ'](Next) + g(Next)], where Next
// applies τ's update: deterministic updates substitute, sampled updates take
// exact moments, no-ops pass through. g must already live in the program's
// variable universe.
TemplatePoly pre_expectation(const std::vector<TemplatePoly>& q, const Transition& t,
                             const TemplatePoly& g);

// Entailment families. Every collector appends to cs.entailments with
// deterministic keys and skips entailments whose premise is exactly
// infeasible (the implication then holds vacuously). degree_bound is
// max(handelman_degree, conclusion degree).

// Zero-on-output (two one-sided entailments at l_out) plus expected
// f-decrease per non-terminal transition and guard cell:
//   I(ℓ) ∧ cell  ⇒  U(ℓ) + f - pre_expectation(U, τ, f) >= 0.
void collect_uesm_constraints(ConstraintSet& cs, const Pcfg& p, const Invariant& inv,
                              const std::vector<TemplatePoly>& U, const TemplatePoly& f_prog,
                              unsigned handelman_degree, const Deadline& deadline);

// Mirror image enforcing expected f-increase:
//   I(ℓ) ∧ cell  ⇒  pre_expectation(L, τ, f) - L(ℓ) - f >= 0.
void collect_lesm_constraints(ConstraintSet& cs, const Pcfg& p, const Invariant& inv,
                              const std::vector<TemplatePoly>& L, const TemplatePoly& f_prog,
                              unsigned handelman_degree, const Deadline& deadline);

// Strict gap at the initial states:
//   U(l_init1, x_init1) + f < L(l_init2, x_init2) + f.
void refutation_constraint(ConstraintSet& cs, const SynthTemplates& t, const Pcfg& p1,
                           const Pcfg& p2);

// Similarity gap. Fixed mode requires epsilon > 0 and adds
//   L + f - U - f - epsilon >= 0.
// Maximize mode introduces epsilon as a template variable, bounds it away
// from zero (epsilon >= gamma_min) and sets the LP objective. Returns the
// epsilon variable id in maximize mode.
struct SimilaritySpec {
    bool maximize = false;
    Rational fixed_epsilon = 0;
    Rational gamma_min = Rational(1) / 1000000;
};
std::optional<int> similarity_constraint(ConstraintSet& cs, const SynthTemplates& t,
                                         const Pcfg& p1, const Pcfg& p2,
                                         const SimilaritySpec& spec);

// 1-Lipschitz continuity of f on each program's terminal invariant, encoded
// over doubled output variables x, y plus per-coordinate slack a (and a
// shared bound A for the uniform metric). L2 is handled through the uniform
// encoding, which is sound because the max-metric never exceeds the
// Euclidean one; that route requires deg(f) <= 1.
void lipschitz_constraints(ConstraintSet& cs, const TemplatePoly& f, Metric metric,
                           const Pcfg& p1, const Invariant& inv1, const Pcfg& p2,
                           const Invariant& inv2, unsigned handelman_degree,
                           const Deadline& deadline);

// Optional-stopping constraint families over both programs.
// C1/C4: no entailments. C2: |η(ℓ) + f| <= C on every location's invariant.
// C3: |η(ℓ,x) + f - η(ℓ',Next) - f(Next)| <= C per transition, guard cell,
// successor and sampled-support cell (finite supports split per point,
// uniform ranges bind a fresh variable to [a, b]). Returns the id of the
// shared bound variable C when one was introduced, together with the
// relational C > 0.
std::optional<int> ost_constraints(ConstraintSet& cs, OstCondition cond,
                                   const SynthTemplates& t, const Pcfg& p1,
                                   const Invariant& inv1, const Pcfg& p2, const Invariant& inv2,
                                   unsigned handelman_degree, const Deadline& deadline);

// Ranking supermartingale synthesis evidence: location-indexed polynomials
// with the exact multipliers certifying nonnegativity and expected decrease.
struct RsmResult {
    std::vector<Polynomial> r;
    std::map<std::string, std::vector<Rational>> multipliers;
    unsigned degree = 1;
    unsigned handelman_degree = 2;
};

enum class RsmStatus { Found, NotFound, Timeout };

// Generates the RSM entailment family for a location-indexed template:
//   I(ℓ) ⇒ R(ℓ) >= 0            for ℓ != l_out
//   I(ℓ) ∧ cell ⇒ R(ℓ) - 1 - pre_expectation(R, τ, 0) >= 0
// key_prefix distinguishes per-program copies inside one certificate.
void rsm_entailments(std::vector<Entailment>& out, const Pcfg& p, const Invariant& inv,
                     const std::vector<TemplatePoly>& R, unsigned handelman_degree,
                     const std::string& key_prefix, const Deadline& deadline);

// Searches for a degree-d RSM with the shared Handelman/LP machinery.
RsmStatus synthesize_rsm(const Pcfg& p, const Invariant& inv, unsigned d,
                         const Deadline& deadline, RsmResult& out);

// Joint condition choice, preference C1 > C4 > C3 > C2. C1 needs both
// programs statically bounded, C4 bounded updates under the invariants, C3 a
// ranking supermartingale for both. A user override skips weaker checks but
// records what was assumed.
struct OstSelection {
    OstCondition condition = OstCondition::C2;
    std::string rationale;
    std::vector<std::string> assumed;
    std::optional<RsmResult> rsm1, rsm2;
    bool downgraded = false;
};

OstSelection select_ost(const Pcfg& p1, const Invariant& inv1, const Pcfg& p2,
                        const Invariant& inv2, const std::string& requested,
                        unsigned rsm_degree_max, const Deadline& deadline);

}  // namespace eqrefute
