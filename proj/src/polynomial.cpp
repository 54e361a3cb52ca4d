// SPDX-License-Identifier: Apache-2.0
#include "eqrefute/polynomial.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

namespace eqrefute {

namespace {

void enumerate(size_t nvars, unsigned budget, size_t pos, Monomial& cur,
               std::vector<Monomial>& out) {
    if (pos == nvars) {
        out.push_back(cur);
        return;
    }
    for (unsigned e = 0; e <= budget; ++e) {
        cur.exps[pos] = e;
        enumerate(nvars, budget - e, pos + 1, cur, out);
    }
    cur.exps[pos] = 0;
}

}  // namespace

std::vector<Monomial> monomials_up_to(size_t nvars, unsigned d) {
    std::vector<Monomial> out;
    Monomial cur(nvars);
    enumerate(nvars, d, 0, cur, out);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        return MonomialLess{}(a, b);
    });
    return out;
}

Polynomial Polynomial::constant(size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    if (c != 0) p.terms_[Monomial(nvars)] = c;
    return p;
}

Polynomial Polynomial::variable(size_t nvars, size_t index) {
    assert(index < nvars);
    Polynomial p(nvars);
    Monomial m(nvars);
    m.exps[index] = 1;
    p.terms_[m] = 1;
    return p;
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::set_coefficient(const Monomial& m, const Rational& c) {
    if (c == 0)
        terms_.erase(m);
    else
        terms_[m] = c;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (c != 0) terms_[m] = c;
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Polynomial Polynomial::operator-() const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    r -= o;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    assert(nvars_ == o.nvars_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    assert(nvars_ == o.nvars_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    assert(nvars_ == o.nvars_);
    Polynomial r(nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m(nvars_);
            for (size_t i = 0; i < nvars_; ++i) m.exps[i] = ma.exps[i] + mb.exps[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result = Polynomial::constant(nvars_, 1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        base = base * base;
        e >>= 1u;
    }
    return result;
}

Polynomial Polynomial::substitute(size_t index, const Polynomial& replacement) const {
    assert(replacement.nvars_ == nvars_);
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
        unsigned e = m.exps[index];
        Monomial rest = m;
        rest.exps[index] = 0;
        Polynomial part(nvars_);
        part.terms_[rest] = c;
        if (e > 0) part = part * replacement.pow(e);
        r += part;
    }
    return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
    assert(point.size() == nvars_);
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (size_t i = 0; i < nvars_; ++i)
            if (m.exps[i] > 0) t *= rational_pow(point[i], m.exps[i]);
        acc += t;
    }
    return acc;
}

double Polynomial::evaluate_double(const std::vector<double>& point) const {
    assert(point.size() == nvars_);
    double acc = 0;
    for (const auto& [m, c] : terms_) {
        double t = to_double(c);
        for (size_t i = 0; i < nvars_; ++i)
            for (unsigned e = 0; e < m.exps[i]; ++e) t *= point[i];
        acc += t;
    }
    return acc;
}

unsigned Polynomial::degree_in(size_t index) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exps[index]);
    return d;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational coeff = c;
        if (first) {
            if (coeff < 0) {
                os << "-";
                coeff = -coeff;
            }
        } else {
            os << (coeff < 0 ? " - " : " + ");
            if (coeff < 0) coeff = -coeff;
        }
        first = false;
        bool printed = false;
        if (coeff != 1 || m.is_constant()) {
            os << rational_to_string(coeff);
            printed = true;
        }
        for (size_t i = 0; i < nvars_; ++i) {
            if (m.exps[i] == 0) continue;
            if (printed) os << "*";
            os << names[i];
            if (m.exps[i] > 1) os << "^" << m.exps[i];
            printed = true;
        }
    }
    return os.str();
}

}  // namespace eqrefute
