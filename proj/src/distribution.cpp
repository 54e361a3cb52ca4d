// SPDX-License-Identifier: Apache-2.0
#include "eqrefute/distribution.hpp"

#include <algorithm>
#include <sstream>

namespace eqrefute {

namespace {

constexpr long kUniformIntRangeCap = 4096;

Rational sum_of_powers(const Integer& lo, const Integer& hi, unsigned p) {
    Rational acc = 0;
    for (Integer k = lo; k <= hi; ++k) {
        Integer kp;
        mpz_pow_ui(kp.get_mpz_t(), k.get_mpz_t(), p);
        acc += Rational(kp);
    }
    return acc;
}

}  // namespace

void DistributionSpec::validate() const {
    switch (kind) {
        case DistKind::Bernoulli:
            if (a < 0 || a > 1)
                throw ParseError("bernoulli parameter must lie in [0, 1], got " +
                                 rational_to_string(a));
            break;
        case DistKind::Uniform:
            if (!(a < b))
                throw ParseError("uniform(a, b) requires a < b");
            break;
        case DistKind::UniformInt:
            if (!is_integer(a) || !is_integer(b))
                throw ParseError("uniformint bounds must be integers");
            if (a > b) throw ParseError("uniformint(a, b) requires a <= b");
            if (b - a > kUniformIntRangeCap)
                throw ParseError("uniformint range too wide");
            break;
        case DistKind::Normal:
            if (b <= 0) throw ParseError("normal variance must be positive");
            break;
        case DistKind::Discrete: {
            if (entries.empty()) throw ParseError("discrete distribution needs entries");
            Rational total = 0;
            for (const auto& [v, p] : entries) {
                if (p < 0) throw ParseError("discrete probability must be nonnegative");
                total += p;
            }
            if (total != 1) throw ParseError("probabilities must sum to 1");
            for (size_t i = 0; i < entries.size(); ++i)
                for (size_t j = i + 1; j < entries.size(); ++j)
                    if (entries[i].first == entries[j].first)
                        throw ParseError("discrete values must be distinct");
            break;
        }
    }
}

std::string DistributionSpec::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case DistKind::Bernoulli:
            os << "bernoulli(" << rational_to_string(a) << ")";
            break;
        case DistKind::Uniform:
            os << "uniform(" << rational_to_string(a) << ", " << rational_to_string(b) << ")";
            break;
        case DistKind::UniformInt:
            os << "uniformint(" << rational_to_string(a) << ", " << rational_to_string(b)
               << ")";
            break;
        case DistKind::Normal:
            os << "normal(" << rational_to_string(a) << ", " << rational_to_string(b) << ")";
            break;
        case DistKind::Discrete: {
            os << "discrete(";
            bool first = true;
            for (const auto& [v, p] : entries) {
                if (!first) os << ", ";
                first = false;
                os << rational_to_string(v) << ": " << rational_to_string(p);
            }
            os << ")";
            break;
        }
    }
    return os.str();
}

Rational raw_moment(const DistributionSpec& dist, unsigned p) {
    if (p == 0) return 1;
    switch (dist.kind) {
        case DistKind::Bernoulli:
            // X^p = X for 0/1 valued X.
            return dist.a;
        case DistKind::Uniform: {
            Rational num = rational_pow(dist.b, p + 1) - rational_pow(dist.a, p + 1);
            Rational den = Rational(p + 1) * (dist.b - dist.a);
            Rational r = num / den;
            r.canonicalize();
            return r;
        }
        case DistKind::UniformInt: {
            Integer lo = dist.a.get_num();
            Integer hi = dist.b.get_num();
            Rational count(hi - lo + 1);
            Rational r = sum_of_powers(lo, hi, p) / count;
            r.canonicalize();
            return r;
        }
        case DistKind::Normal: {
            // M_0 = 1, M_1 = mean, M_p = mean*M_{p-1} + (p-1)*var*M_{p-2}.
            Rational m_prev2 = 1;
            Rational m_prev1 = dist.a;
            if (p == 1) return m_prev1;
            Rational m = 0;
            for (unsigned k = 2; k <= p; ++k) {
                m = dist.a * m_prev1 + Rational(k - 1) * dist.b * m_prev2;
                m_prev2 = m_prev1;
                m_prev1 = m;
            }
            return m;
        }
        case DistKind::Discrete: {
            Rational acc = 0;
            for (const auto& [v, prob] : dist.entries) acc += rational_pow(v, p) * prob;
            return acc;
        }
    }
    throw std::logic_error("unreachable distribution kind");
}

std::optional<std::pair<Rational, Rational>> support_bounds(const DistributionSpec& dist) {
    switch (dist.kind) {
        case DistKind::Bernoulli:
            return std::make_pair(Rational(0), Rational(1));
        case DistKind::Uniform:
        case DistKind::UniformInt:
            return std::make_pair(dist.a, dist.b);
        case DistKind::Normal:
            return std::nullopt;
        case DistKind::Discrete: {
            Rational lo = dist.entries.front().first, hi = lo;
            for (const auto& [v, p] : dist.entries) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            return std::make_pair(lo, hi);
        }
    }
    return std::nullopt;
}

std::optional<std::vector<Rational>> support_points(const DistributionSpec& dist) {
    switch (dist.kind) {
        case DistKind::Bernoulli:
            return std::vector<Rational>{Rational(0), Rational(1)};
        case DistKind::UniformInt: {
            if (dist.b - dist.a + 1 > 4096) return std::nullopt;
            std::vector<Rational> out;
            for (Integer k = dist.a.get_num(); k <= dist.b.get_num(); ++k)
                out.emplace_back(k);
            return out;
        }
        case DistKind::Discrete: {
            std::vector<Rational> out;
            for (const auto& [v, p] : dist.entries)
                if (p > 0) out.push_back(v);
            return out;
        }
        case DistKind::Uniform:
        case DistKind::Normal:
            return std::nullopt;
    }
    return std::nullopt;
}

bool is_integer_valued(const DistributionSpec& dist) {
    switch (dist.kind) {
        case DistKind::Bernoulli:
        case DistKind::UniformInt:
            return true;
        case DistKind::Discrete:
            return std::all_of(dist.entries.begin(), dist.entries.end(),
                               [](const auto& e) { return is_integer(e.first); });
        case DistKind::Uniform:
        case DistKind::Normal:
            return false;
    }
    return false;
}

Polynomial expectation_substitute(const Polynomial& q, size_t index,
                                  const DistributionSpec& dist) {
    Polynomial r(q.nvars());
    for (const auto& [m, c] : q.terms()) {
        Monomial rest = m;
        rest.exps[index] = 0;
        r.add_term(rest, c * raw_moment(dist, m.exps[index]));
    }
    return r;
}

}  // namespace eqrefute
