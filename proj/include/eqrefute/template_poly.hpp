// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqrefute/distribution.hpp"
#include "eqrefute/linear.hpp"
#include "eqrefute/polynomial.hpp"
#include "eqrefute/rational.hpp"

namespace eqrefute {

// Registry of scalar synthesis unknowns. Ids are dense and allocation order is
// deterministic, so two runs over the same inputs assign identical ids.
class TemplateSpace {
public:
    int fresh(const std::string& name) {
        names_.push_back(name);
        return static_cast<int>(names_.size()) - 1;
    }
    size_t size() const { return names_.size(); }
    const std::string& name(int id) const { return names_.at(static_cast<size_t>(id)); }
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
};

// Affine combination of template variables: constant + sum_i terms[i] * t_i.
// Zero coefficients are never stored.
struct AffineForm {
    Rational constant = 0;
    std::map<int, Rational> terms;

    AffineForm() = default;
    explicit AffineForm(const Rational& c) : constant(c) {}

    static AffineForm var(int id) {
        AffineForm a;
        a.terms[id] = 1;
        return a;
    }

    bool is_constant() const { return terms.empty(); }
    bool is_zero() const { return terms.empty() && constant == 0; }

    void add(int id, const Rational& c);
    AffineForm operator+(const AffineForm& o) const;
    AffineForm operator-(const AffineForm& o) const;
    AffineForm operator-() const;
    AffineForm scaled(const Rational& c) const;
    AffineForm& operator+=(const AffineForm& o);

    bool operator==(const AffineForm& o) const = default;

    // assignment[id] gives the value of template variable id.
    Rational evaluate(const std::vector<Rational>& assignment) const;

    std::string to_string(const TemplateSpace& space) const;
};

// Polynomial over program variables whose coefficients are affine forms in the
// template variables. Linearity in the unknowns is preserved by every
// operation here, which is what keeps the synthesis problem an LP.
class TemplatePoly {
public:
    explicit TemplatePoly(size_t nvars = 0) : nvars_(nvars) {}

    // Lifts a concrete polynomial (all coefficients constant forms).
    static TemplatePoly from_concrete(const Polynomial& p);

    // Dense template with one fresh unknown per monomial of total degree <= d,
    // named prefix_k where k is the monomial's graded-lex position.
    static TemplatePoly fresh(TemplateSpace& space, const std::string& prefix, size_t nvars,
                              unsigned degree);

    size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    unsigned total_degree() const;

    const std::map<Monomial, AffineForm, MonomialLess>& terms() const { return terms_; }
    void add_term(const Monomial& m, const AffineForm& a);

    TemplatePoly operator+(const TemplatePoly& o) const;
    TemplatePoly operator-(const TemplatePoly& o) const;
    TemplatePoly operator-() const;
    TemplatePoly scaled(const Rational& c) const;
    TemplatePoly& operator+=(const TemplatePoly& o);

    // Replaces variable `index` by a concrete polynomial over the same
    // universe. Coefficients stay affine because the replacement is concrete.
    TemplatePoly substitute(size_t index, const Polynomial& replacement) const;

    // Eliminates variable `index` by taking expectations over dist, using
    // exact raw moments.
    TemplatePoly expectation_substitute(size_t index, const DistributionSpec& dist) const;

    // Maps this polynomial into a larger universe: old variable i becomes
    // new variable var_map[i].
    TemplatePoly embed(size_t new_nvars, const std::vector<size_t>& var_map) const;

    // Fixes all template variables, yielding a concrete polynomial.
    Polynomial instantiate(const std::vector<Rational>& assignment) const;

    // Evaluates the program variables at a rational point; the result is
    // affine in the template variables.
    AffineForm evaluate_at(const std::vector<Rational>& point) const;

    std::string to_string(const std::vector<std::string>& var_names,
                          const TemplateSpace& space) const;

private:
    size_t nvars_;
    std::map<Monomial, AffineForm, MonomialLess> terms_;
};

// Premise => conclusion >= 0, where the premise is a conjunction of non-strict
// affine atoms over the entailment's own variable universe and the conclusion
// is affine in the template unknowns. degree_bound is the maximum total degree
// of premise-atom products admitted when certifying the entailment.
struct Entailment {
    std::string key;
    size_t nvars = 0;
    std::vector<std::string> var_names;
    Conjunction premise;
    TemplatePoly conclusion;
    unsigned degree_bound = 1;
};

// Side condition on the unknowns alone: expr >= 0, or expr > 0 when strict.
struct Relational {
    std::string key;
    AffineForm expr;
    bool strict = false;
};

struct ConstraintSet {
    TemplateSpace space;
    std::vector<Entailment> entailments;
    std::vector<Relational> relationals;
    // Template variable to maximize; feasibility problem when absent.
    std::optional<int> objective;

    const Entailment* find(const std::string& key) const {
        for (const auto& e : entailments)
            if (e.key == key) return &e;
        return nullptr;
    }
};

}  // namespace eqrefute
