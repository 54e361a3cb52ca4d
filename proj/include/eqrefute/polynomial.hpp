// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "eqrefute/rational.hpp"

namespace eqrefute {

// Monomial over a fixed variable universe, stored as a dense exponent vector.
// Every polynomial carries the universe size; mixing arities is a logic error.
struct Monomial {
    std::vector<unsigned> exps;

    explicit Monomial(size_t nvars = 0) : exps(nvars, 0) {}

    unsigned total_degree() const {
        unsigned d = 0;
        for (unsigned e : exps) d += e;
        return d;
    }
    bool is_constant() const { return total_degree() == 0; }
    bool operator==(const Monomial& o) const { return exps == o.exps; }
};

// Graded lexicographic order: lower total degree first; within a degree the
// exponent vectors descend lexicographically, so for two variables x, y the
// enumeration order is 1, x, y, x^2, xy, y^2.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return a.exps > b.exps;
    }
};

// All monomials over nvars variables with total degree <= d, in MonomialLess
// order. Size is binomial(nvars + d, d).
std::vector<Monomial> monomials_up_to(size_t nvars, unsigned d);

class Polynomial {
public:
    explicit Polynomial(size_t nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(size_t nvars, const Rational& c);
    static Polynomial variable(size_t nvars, size_t index);

    size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    unsigned total_degree() const;

    const std::map<Monomial, Rational, MonomialLess>& terms() const { return terms_; }
    Rational coefficient(const Monomial& m) const;
    void set_coefficient(const Monomial& m, const Rational& c);
    void add_term(const Monomial& m, const Rational& c);

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    bool operator==(const Polynomial& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    Polynomial scaled(const Rational& c) const;
    Polynomial pow(unsigned e) const;

    // Replaces variable `index` by `replacement` (same universe).
    Polynomial substitute(size_t index, const Polynomial& replacement) const;

    Rational evaluate(const std::vector<Rational>& point) const;
    double evaluate_double(const std::vector<double>& point) const;

    // Degree in a single variable.
    unsigned degree_in(size_t index) const;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    size_t nvars_;
    std::map<Monomial, Rational, MonomialLess> terms_;
};

}  // namespace eqrefute
