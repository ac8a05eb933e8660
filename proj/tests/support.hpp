#pragma once

#include <random>
#include <vector>

#include "horlab/hormander_sos.hpp"
#include "horlab/polynomial.hpp"
#include "horlab/weighted_symbol.hpp"

namespace horlab::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int span = 5) {
  std::uniform_int_distribution<int> num(-span, span), den(1, 3);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Rational random_nonzero(Rng& rng, int span = 5) {
  Rational q;
  do q = random_rational(rng, span);
  while (q == 0);
  return q;
}

/// Sparse polynomial with up to `terms` monomials of total degree ≤ degree.
inline Polynomial random_polynomial(Rng& rng, std::size_t nvars, unsigned degree, int terms) {
  std::uniform_int_distribution<unsigned> exp(0, degree);
  std::vector<Polynomial::Term> out;
  std::uniform_int_distribution<int> count(0, terms);
  for (int t = count(rng); t > 0; --t) {
    MultiIndex m(nvars);
    unsigned budget = degree;
    for (std::size_t i = 0; i < nvars; ++i) {
      unsigned e = std::min(budget, exp(rng));
      m[i] = e;
      budget -= e;
    }
    auto c = random_rational(rng);
    out.push_back({m, c});
  }
  return Polynomial::from_terms(nvars, std::move(out));
}

/// λ^{-e}(A + Bλ) with random phase-space polynomials.
inline WeightedSymbol random_symbol(Rng& rng, std::size_t dim, bool with_lambda = true) {
  auto even = random_polynomial(rng, 2 * dim, 3, 3);
  if (!with_lambda) return WeightedSymbol(even);
  auto odd = random_polynomial(rng, 2 * dim, 2, 2);
  std::uniform_int_distribution<unsigned> e(0, 2);
  return WeightedSymbol(even, odd, e(rng));
}

/// Nonzero polynomial symbol homogeneous of the given ξ-degree.
inline WeightedSymbol random_homogeneous(Rng& rng, std::size_t dim, int degree) {
  // λ-free: λ² = 1+|ξ|² is not homogeneous, so ξ-derivatives of λ terms mix degrees
  Polynomial p(2 * dim);
  std::uniform_int_distribution<int> terms(1, 3);
  std::uniform_int_distribution<unsigned> xdeg(0, 2);
  std::uniform_int_distribution<std::size_t> axis(0, dim - 1);
  for (int t = terms(rng); t > 0 || p.is_zero(); --t) {
    MultiIndex m(2 * dim);
    for (std::size_t i = 0; i < dim; ++i) m[i] = xdeg(rng);
    for (int k = 0; k < degree; ++k) m[dim + axis(rng)] += 1;
    p += Polynomial::monomial(m, random_nonzero(rng));
  }
  return WeightedSymbol(std::move(p));
}

/// Dim-2 system of 2–3 fields with monomial coefficients x^a y^b, a+b ≤ 3,
/// each coefficient present with probability 1/2.
inline VectorFieldSystem random_system(Rng& rng) {
  std::uniform_int_distribution<int> fields(2, 3), coin(0, 1), deg(0, 3);
  std::vector<VectorField> out;
  for (int f = fields(rng); f > 0; --f) {
    VectorField v{{Polynomial(2), Polynomial(2)}};
    for (auto& c : v.coefficients) {
      if (!coin(rng)) continue;
      unsigned a = deg(rng);
      std::uniform_int_distribution<unsigned> bdist(0, 3 - a);
      c = Polynomial::monomial(MultiIndex{a, bdist(rng)}, 1);
    }
    out.push_back(std::move(v));
  }
  return VectorFieldSystem(2, std::move(out));
}

inline Polynomial monomial(std::initializer_list<MultiIndex::value_type> e, const Rational& c = 1) {
  return Polynomial::monomial(MultiIndex(e), c);
}

/// The sums-of-squares system {D_x, x^{2n+1} D_y, x^n y^m D_y}.
inline VectorFieldSystem degenerate_system(unsigned n, unsigned m) {
  std::vector<VectorField> f{{{monomial({0, 0}), Polynomial(2)}},
                             {{Polynomial(2), monomial({2 * n + 1, 0})}},
                             {{Polynomial(2), monomial({n, m})}}};
  return VectorFieldSystem(2, std::move(f));
}

inline VectorFieldSystem grushin() {
  std::vector<VectorField> f{{{monomial({0, 0}), Polynomial(2)}}, {{Polynomial(2), monomial({1, 0})}}};
  return VectorFieldSystem(2, std::move(f));
}

inline SecondOrderOperator laplacian(std::size_t dim) {
  std::vector<Polynomial> a(dim * dim, Polynomial(dim));
  for (std::size_t i = 0; i < dim; ++i) a[i * dim + i] = Polynomial::constant(dim, 1);
  return SecondOrderOperator::principal(dim, std::move(a));
}

inline CotangentPoint rho() { return {{0, 0}, {0, 1}}; }

}  // namespace horlab::testing
