// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqrefute/polynomial.hpp"
#include "eqrefute/rational.hpp"

namespace eqrefute {

enum class DistKind { Bernoulli, Uniform, UniformInt, Normal, Discrete };

// Sampling distribution with exact rational parameters.
//   bernoulli(p)        a = p
//   uniform(a, b)       a < b, continuous on [a, b]
//   uniformint(a, b)    a <= b, integers
//   normal(mean, var)   a = mean, b = variance > 0
//   discrete(v:p, ...)  entries, probabilities sum to 1
struct DistributionSpec {
    DistKind kind = DistKind::Bernoulli;
    Rational a = 0;
    Rational b = 0;
    std::vector<std::pair<Rational, Rational>> entries;

    // Throws ParseError on malformed parameters.
    void validate() const;

    std::string to_string() const;
    bool operator==(const DistributionSpec& o) const = default;
};

// Raw moment E[X^p], exact. All five kinds have finite raw moments of every
// order. normal uses the recurrence M_p = mean*M_{p-1} + (p-1)*var*M_{p-2}.
Rational raw_moment(const DistributionSpec& dist, unsigned p);

inline Rational dist_mean(const DistributionSpec& dist) { return raw_moment(dist, 1); }

// Smallest closed interval containing the support; nullopt when unbounded.
std::optional<std::pair<Rational, Rational>> support_bounds(const DistributionSpec& dist);

// Exact support enumeration for finitely supported kinds; nullopt otherwise.
// uniformint ranges wider than 4096 values are refused (nullopt) to keep
// downstream case splits tractable.
std::optional<std::vector<Rational>> support_points(const DistributionSpec& dist);

// True when every sampled value is an integer.
bool is_integer_valued(const DistributionSpec& dist);

// Eliminates variable `index` from q by taking expectations over dist:
// rewrite q as sum_k q_k * x^k and return sum_k q_k * raw_moment(dist, k).
// Linear in q and independent of the remaining variables.
Polynomial expectation_substitute(const Polynomial& q, size_t index,
                                  const DistributionSpec& dist);

}  // namespace eqrefute
