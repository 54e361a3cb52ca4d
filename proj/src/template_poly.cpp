// SPDX-License-Identifier: Apache-2.0
#include "eqrefute/template_poly.hpp"

#include <sstream>
#include <stdexcept>

namespace eqrefute {

void AffineForm::add(int id, const Rational& c) {
    if (c == 0) return;
    auto it = terms.find(id);
    if (it == terms.end()) {
        terms.emplace(id, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms.erase(it);
}

AffineForm AffineForm::operator+(const AffineForm& o) const {
    AffineForm r = *this;
    r += o;
    return r;
}

AffineForm& AffineForm::operator+=(const AffineForm& o) {
    constant += o.constant;
    for (const auto& [id, c] : o.terms) add(id, c);
    return *this;
}

AffineForm AffineForm::operator-(const AffineForm& o) const { return *this + (-o); }

AffineForm AffineForm::operator-() const { return scaled(Rational(-1)); }

AffineForm AffineForm::scaled(const Rational& c) const {
    AffineForm r;
    if (c == 0) return r;
    r.constant = constant * c;
    for (const auto& [id, k] : terms) r.terms.emplace(id, k * c);
    return r;
}

Rational AffineForm::evaluate(const std::vector<Rational>& assignment) const {
    Rational v = constant;
    for (const auto& [id, c] : terms) v += c * assignment.at(static_cast<size_t>(id));
    return v;
}

std::string AffineForm::to_string(const TemplateSpace& space) const {
    std::ostringstream os;
    bool first = true;
    if (constant != 0 || terms.empty()) {
        os << constant.get_str();
        first = false;
    }
    for (const auto& [id, c] : terms) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        Rational a = abs(c);
        if (a != 1) os << a.get_str() << "*";
        os << space.name(id);
    }
    return os.str();
}

TemplatePoly TemplatePoly::from_concrete(const Polynomial& p) {
    TemplatePoly r(p.nvars());
    for (const auto& [m, c] : p.terms()) r.terms_.emplace(m, AffineForm(c));
    return r;
}

TemplatePoly TemplatePoly::fresh(TemplateSpace& space, const std::string& prefix, size_t nvars,
                                 unsigned degree) {
    TemplatePoly r(nvars);
    auto monos = monomials_up_to(nvars, degree);
    for (size_t k = 0; k < monos.size(); ++k) {
        int id = space.fresh(prefix + "_" + std::to_string(k));
        r.terms_.emplace(monos[k], AffineForm::var(id));
    }
    return r;
}

unsigned TemplatePoly::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, a] : terms_)
        if (!a.is_zero()) d = std::max(d, m.total_degree());
    return d;
}

void TemplatePoly::add_term(const Monomial& m, const AffineForm& a) {
    if (a.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, a);
        return;
    }
    it->second += a;
    if (it->second.is_zero()) terms_.erase(it);
}

TemplatePoly TemplatePoly::operator+(const TemplatePoly& o) const {
    TemplatePoly r = *this;
    r += o;
    return r;
}

TemplatePoly& TemplatePoly::operator+=(const TemplatePoly& o) {
    if (nvars_ != o.nvars_) throw std::logic_error("TemplatePoly universe mismatch");
    for (const auto& [m, a] : o.terms_) add_term(m, a);
    return *this;
}

TemplatePoly TemplatePoly::operator-(const TemplatePoly& o) const { return *this + (-o); }

TemplatePoly TemplatePoly::operator-() const { return scaled(Rational(-1)); }

TemplatePoly TemplatePoly::scaled(const Rational& c) const {
    TemplatePoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, a] : terms_) r.terms_.emplace(m, a.scaled(c));
    return r;
}

TemplatePoly TemplatePoly::substitute(size_t index, const Polynomial& replacement) const {
    if (replacement.nvars() != nvars_) throw std::logic_error("substitute universe mismatch");
    TemplatePoly r(nvars_);
    for (const auto& [m, a] : terms_) {
        unsigned e = m.exps[index];
        if (e == 0) {
            r.add_term(m, a);
            continue;
        }
        Monomial rest = m;
        rest.exps[index] = 0;
        Polynomial factor = replacement.pow(e);
        Polynomial restp(nvars_);
        restp.add_term(rest, Rational(1));
        Polynomial prod = factor * restp;
        for (const auto& [pm, pc] : prod.terms()) r.add_term(pm, a.scaled(pc));
    }
    return r;
}

TemplatePoly TemplatePoly::expectation_substitute(size_t index,
                                                  const DistributionSpec& dist) const {
    TemplatePoly r(nvars_);
    for (const auto& [m, a] : terms_) {
        unsigned e = m.exps[index];
        if (e == 0) {
            r.add_term(m, a);
            continue;
        }
        Monomial rest = m;
        rest.exps[index] = 0;
        r.add_term(rest, a.scaled(raw_moment(dist, e)));
    }
    return r;
}

TemplatePoly TemplatePoly::embed(size_t new_nvars, const std::vector<size_t>& var_map) const {
    if (var_map.size() != nvars_) throw std::logic_error("embed map arity mismatch");
    TemplatePoly r(new_nvars);
    for (const auto& [m, a] : terms_) {
        Monomial nm(new_nvars);
        for (size_t i = 0; i < nvars_; ++i) {
            if (m.exps[i] == 0) continue;
            if (var_map[i] >= new_nvars) throw std::logic_error("embed target out of range");
            nm.exps[var_map[i]] += m.exps[i];
        }
        r.add_term(nm, a);
    }
    return r;
}

Polynomial TemplatePoly::instantiate(const std::vector<Rational>& assignment) const {
    Polynomial p(nvars_);
    for (const auto& [m, a] : terms_) {
        Rational c = a.evaluate(assignment);
        if (c != 0) p.add_term(m, c);
    }
    return p;
}

AffineForm TemplatePoly::evaluate_at(const std::vector<Rational>& point) const {
    if (point.size() != nvars_) throw std::logic_error("evaluate_at arity mismatch");
    AffineForm out;
    for (const auto& [m, a] : terms_) {
        Rational w = 1;
        for (size_t i = 0; i < nvars_; ++i)
            for (unsigned e = 0; e < m.exps[i]; ++e) w *= point[i];
        out += a.scaled(w);
    }
    return out;
}

std::string TemplatePoly::to_string(const std::vector<std::string>& var_names,
                                    const TemplateSpace& space) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, a] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << a.to_string(space) << ")";
        for (size_t i = 0; i < nvars_; ++i) {
            if (m.exps[i] == 0) continue;
            os << "*" << var_names[i];
            if (m.exps[i] > 1) os << "^" << m.exps[i];
        }
    }
    return os.str();
}

}  // namespace eqrefute
