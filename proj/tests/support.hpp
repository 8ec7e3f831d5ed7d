#pragma once

// Hand-rolled generators for property tests.  Fixed seeds keep every run
// reproducible.

#include <random>

#include "sigmatrop/ring.hpp"

namespace sigmatrop::testing {

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline Monomial random_monomial(std::mt19937_64& rng, std::size_t rank, std::int64_t degree) {
  Monomial g = Monomial::zero(rank);
  for (auto& e : g.exps) e = uniform(rng, -degree, degree);
  return g;
}

inline LaurentPoly random_poly(std::mt19937_64& rng, std::size_t rank, std::int64_t degree, std::size_t max_terms,
                               CoefficientDomain domain = CoefficientDomain::rationals(), std::int64_t coeff = 9) {
  LaurentPoly f(rank, domain);
  const auto terms = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_terms)));
  for (std::size_t i = 0; i < terms; ++i) {
    std::int64_t c = 0;
    while (c == 0) c = uniform(rng, -coeff, coeff);
    f.add_term(random_monomial(rng, rank, degree), Rational(static_cast<long>(c)));
  }
  return f;
}

inline Character random_character(std::mt19937_64& rng, std::size_t rank, std::int64_t height = 5) {
  for (;;) {
    RVector v;
    for (std::size_t i = 0; i < rank; ++i)
      v.emplace_back(static_cast<long>(uniform(rng, -height, height)), static_cast<unsigned long>(uniform(rng, 1, height)));
    for (auto& q : v) q.canonicalize();
    if (!is_zero(v)) return Character(v);
  }
}

inline RVector rv(std::initializer_list<long> xs) {
  RVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace sigmatrop::testing
